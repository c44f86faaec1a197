// Trace-class-valued products and the maximal/square functions.
//
// Tensor convention: x (x) y is the rank-one matrix x y^*. The duality
// pairing <B, F> = integral of trace(B(t) F(t)) dt is bilinear and satisfies
// <B, f (*) g> = <Lambda_B f, g>_{L^2} exactly at finite depth.

#pragma once

#include <utility>
#include <vector>

#include "opbmo/symbol.hpp"

namespace opbmo {

/// Cellwise n x n matrices playing the trace-class (S_1) role in pairings.
struct TraceField {
    int dim = 0;
    int depth = 0;
    std::vector<Mat> cells;

    TraceField() = default;
    TraceField(int n, int k);
    std::int64_t cell_count() const { return std::int64_t{1} << depth; }
};

/// f (*) g = sum_I h_I (f_I (x) m_I g + m_I f (x) g_I).
/// Computed from the definition and from the product expansion
/// f (x) g - m f (x) m g - sum_I chi_I/|I| f_I (x) g_I; throws if the two
/// routes disagree beyond 1e-11.
TraceField circledast(const VectorField& f, const VectorField& g);

/// Same, reporting the worst relative disagreement of the two routes
/// instead of throwing.
TraceField circledast_checked(const VectorField& f, const VectorField& g,
                              double* worst_diff);

/// integral of trace(B(t) F(t)) dt as an exact cell sum.
Complex pairing(const MatrixSymbol& b, const TraceField& f);

/// Dyadic maximal function of a per-cell profile: per depth-K cell, the max
/// over its K+1 dyadic ancestors of the ancestor-average of the profile.
std::vector<double> maximal_profile(const std::vector<double>& cell_profile);

/// Maximal function of the cellwise trace norm / vector norm.
std::vector<double> maximal(const TraceField& f);
std::vector<double> maximal(const VectorField& f);

/// max over k of || E_k F (t) ||_S1 per cell (norms of conditional averages,
/// as opposed to maximal(), which averages the norms).
std::vector<double> martingale_maximal(const TraceField& f);

/// integral of ||F(t)||_S1 dt.
double trace_norm_l1(const TraceField& f);

struct SquareFunctionResult {
    std::vector<double> cells;  // (sum_I |phi_I|^2 chi_I/|I|)^{1/2} per cell
    double l1 = 0.0;
};

/// Scalar square function; requires dim == 1.
SquareFunctionResult square_function(const MatrixSymbol& phi);

}  // namespace opbmo
