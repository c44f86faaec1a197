// Dense spectral primitives backing the norm computations.

#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>

#include "opbmo/rng.hpp"

namespace opbmo {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct PowerIterationResult {
    double value = 0.0;      // estimated largest singular value
    double residual = 0.0;   // ||M*M v - lambda v|| / max(lambda, eps)
    int iterations = 0;
    bool converged = false;
};

/// Largest singular value via full decomposition. Throws on non-finite entries.
double op_norm_svd(const Mat& m);

/// Largest singular value via power iteration on M*M with a fixed budget.
/// Deterministic: the start vector depends only on the matrix dimensions.
PowerIterationResult op_norm_power(const Mat& m, int max_iterations = 5000,
                                   double tol = 1e-13);

/// Largest singular value; full decomposition below the size threshold,
/// power iteration above it.
double op_norm(const Mat& m);

/// Sum of singular values.
double trace_norm(const Mat& m);

/// Hermitian PSD square root. Eigenvalues in [-1e-10, 0) are clamped to zero;
/// anything below that, or a non-Hermitian input, throws.
Mat psd_sqrt(const Mat& m);

bool is_hermitian(const Mat& m, double tol = 1e-10);

Mat random_gaussian_matrix(int rows, int cols, Rng& rng);
Vec random_gaussian_vector(int dim, Rng& rng);
Mat random_unitary(int dim, Rng& rng);

/// ||a - b||_F / max(1, ||a||_F, ||b||_F).
double rel_diff(const Mat& a, const Mat& b);
double rel_diff(const Vec& a, const Vec& b);

}  // namespace opbmo
