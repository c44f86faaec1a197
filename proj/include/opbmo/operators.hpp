// Finite operators on the truncated function space.
//
// Basis convention: the full space has the orthonormal basis
//   { chi_T (x) e_j } u { h_I (x) e_j : level(I) < K },
// intervals ordered by linear index (level-major). The zero-mean subspace
// drops the constant block. pi_B and Delta_B act on the full space; the Haar
// multiplier Lambda_B and the block-diagonal D read only Haar coefficients of
// the input (zero-mean domain); Lambda_B's output has a constant component,
// so its matrix is rectangular (full codomain).
//
// Dense assembly goes column by column through the literal formulas (the
// serial reference kernels); matrix-free application uses the O(n^2 2^K K)
// tree kernels, parallelized with OpenMP. The two paths are independent and
// cross-checked in the tests.

#pragma once

#include <cstdint>
#include <string>

#include "opbmo/symbol.hpp"

namespace opbmo {

enum class Subspace { full, zero_mean };

enum class OperatorKind { para, delta, mult, diag };

std::int64_t basis_dim(int dim, int depth, Subspace s);

/// Coefficient vector of a field in the given basis (zero_mean drops the mean).
Vec to_basis(const VectorField& f, Subspace s);
VectorField from_basis(const Vec& v, int dim, int depth, Subspace s);

struct AssembledOperator {
    int dim = 0;
    int depth = 0;
    Subspace domain = Subspace::full;
    Subspace codomain = Subspace::full;
    std::string provenance;
    Mat matrix;  // rows: codomain basis, cols: domain basis

    VectorField apply(const VectorField& f) const;
    double norm() const;
};

// Largest dimension n * 2^K for which dense assembly is offered.
inline constexpr std::int64_t kDenseAssemblyLimit = 4096;

/// pi_B f = sum_I B_I (m_I f) h_I on the full space.
AssembledOperator assemble_para(const MatrixSymbol& b);

/// Delta_B f = sum_I B_I (f_I) chi_I / |I| on the full space.
AssembledOperator assemble_delta(const MatrixSymbol& b);

/// Lambda_B f = sum_I (P_I B)(f_I) h_I, zero-mean domain, full codomain.
/// Built from the multiplier definition and cross-checked against
/// pi_B + Delta_B restricted to zero-mean inputs (throws if they disagree).
AssembledOperator assemble_mult(const MatrixSymbol& b);

/// D_{U*,V} h_I e = h_I (1/|I|) sum_{J strictly inside I} U_J^* V_J e,
/// block diagonal on the zero-mean subspace.
AssembledOperator assemble_diag(const MatrixSymbol& u, const MatrixSymbol& v);

/// O(n^2 2^K K) application without assembling the matrix (OpenMP kernels).
VectorField apply_matrix_free(OperatorKind kind, const MatrixSymbol& b,
                              const VectorField& f);
VectorField apply_matrix_free_diag(const MatrixSymbol& u, const MatrixSymbol& v,
                                   const VectorField& f);

/// Operator norm via power iteration on matrix-free apply/adjoint-apply;
/// used above the dense assembly limit.
PowerIterationResult operator_norm_matrix_free(OperatorKind kind, const MatrixSymbol& b,
                                               int max_iterations = 5000,
                                               double tol = 1e-13);

}  // namespace opbmo
