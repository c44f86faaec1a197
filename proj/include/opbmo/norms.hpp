// Every BMO-type norm of an operator-valued symbol, each computed by all of
// its equivalent formulas with cross-checks.
//
// All suprema over intervals run over levels 0..K-1; deeper intervals
// contribute zero (P_I B = 0 there), which the tests pin down.

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include "opbmo/operators.hpp"
#include "opbmo/symbol.hpp"

namespace opbmo {

struct SupNormDetail {
    double value = 0.0;
    DyadicIndex argmax;
};

/// sup_I (1/|I| int_I ||B(t) - m_I B||^2 dt)^{1/2} with the operator norm.
double bmo_norm(const MatrixSymbol& b);
SupNormDetail bmo_norm_detail(const MatrixSymbol& b);

/// The five equivalent strong-BMO expressions, each by an independent route:
///   [0] sup_{I,e} of the defining cell integral, evaluated at the optimizer
///   [1] sup_I lambda_max((1/|I|) sum_{J<=I} B_J^* B_J)^{1/2}  (coefficients)
///   [2] sup_I || (1/|I|) int_I (B-m_I B)^*(B-m_I B) ||^{1/2}  (cell Gram)
///   [3] sup_I || m_I(B^*B) - m_I(B^*) m_I(B) ||^{1/2}          (cell products)
///   [4] sup_{I,e} || Lambda_B (h_I e) ||                       (operator path)
struct SbmoDetail {
    std::array<double, 5> routes{};
    double disagreement = 0.0;  // max pairwise relative difference
    DyadicIndex argmax;
    Vec attaining_e;
};

SbmoDetail sbmo_detail(const MatrixSymbol& b);

/// Route [1] value after asserting five-way agreement <= 1e-8 (throws otherwise).
double sbmo(const MatrixSymbol& b);

/// Route [1] alone, for inner loops (search, operator_norms).
double sbmo_value(const MatrixSymbol& b);

struct WbmoResult {
    double value = 0.0;  // certified lower bound (the objective at e*, f*)
    DyadicIndex interval;
    Vec attaining_e, attaining_f;
    double dispersion = 0.0;  // spread of restart values at the winning interval
    int restarts = 0;
};

/// Weak BMO by alternating eigen-iteration over (e, f) with seeded restarts.
WbmoResult wbmo_detail(const MatrixSymbol& b, int restarts = 32,
                       std::uint64_t seed = 0);
double wbmo(const MatrixSymbol& b);

/// sup_I (1/|I| sum_{J<=I} ||B_J||^2)^{1/2} with operator norms.
double bmo_carl(const MatrixSymbol& b);
SupNormDetail bmo_carl_detail(const MatrixSymbol& b);

/// Scalar symbol sum h_I ||B_I|| used in the Carleson-paraproduct bound.
MatrixSymbol coefficient_norm_symbol(const MatrixSymbol& b);

struct OperatorNorms {
    double para = 0.0;       // ||pi_B|| on the full space
    double para_zero = 0.0;  // ||pi_B|| restricted to zero-mean inputs
    double spara = 0.0;      // ||pi_B|| + ||pi_{B*}||
    double so = 0.0;         // sbmo(B) + sbmo(B*)
    double mult = 0.0;       // ||Lambda_B|| (zero-mean domain, full codomain)
    double mult_quotient = 0.0;  // ||Q Lambda_B Q||, adjoint-symmetric exactly
};

OperatorNorms operator_norms(const MatrixSymbol& b);

/// sup_I (1/|I| int_I |phi - m_I phi|^p)^{1/p}; scalar symbols, p > 0.
double scalar_bmo_p(const MatrixSymbol& phi, double p);

struct VecNorms {
    double bmo = 0.0;
    double wbmo = 0.0;
};

/// BMO and weak BMO of an H-valued function (exact per-interval eigenvalues).
VecNorms vec_norms(const VectorField& b);

/// Column action B_e as a vector field.
VectorField column_field(const MatrixSymbol& b, const Vec& e);

struct NormDiagnostics {
    std::optional<DyadicIndex> interval;
    Vec attaining_e, attaining_f;
    double residual = 0.0;
    double dispersion = 0.0;
};

struct NormReport {
    std::map<std::string, double> values;
    std::map<std::string, NormDiagnostics> diagnostics;
};

NormReport all_norms(const MatrixSymbol& b);

/// Evaluate a norm by identifier (bmo_norm|sbmo|wbmo|carl|para|spara|so|mult);
/// chooses the dense or matrix-free path by problem size.
double eval_norm(const std::string& id, const MatrixSymbol& b);

bool valid_norm_id(const std::string& id);

/// Search/growth objectives extend the plain ids with composites for the
/// sweep growth studies: "sweep_<id>" evaluates <id> on S_B and "<id>_sq"
/// squares <id>(B), so e.g. sweep_sbmo / sbmo_sq is the ratio
/// sbmo(S_B) / sbmo(B)^2.
double eval_objective(const std::string& id, const MatrixSymbol& b);
bool valid_objective_id(const std::string& id);

}  // namespace opbmo
