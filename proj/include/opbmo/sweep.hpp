// The operator sweep S_B, its bilinear extension, factorization of
// nonnegative level-k symbols as sweeps, and the martingale-average
// representation of S_B.

#pragma once

#include <cstdint>

#include "opbmo/symbol.hpp"

namespace opbmo {

/// S_B = sum_I chi_I/|I| B_I^* B_I (dc terms never enter).
MatrixSymbol sweep(const MatrixSymbol& b);

/// Delta[U^*, V] = sum_I chi_I/|I| U_I^* V_I; Delta[B^*, B] = S_B.
MatrixSymbol bilinear_sweep(const MatrixSymbol& u, const MatrixSymbol& v);

/// max over cells of the operator norm, i.e. ||S||_infinity for sweeps.
double sup_op_norm(const MatrixSymbol& s);

/// Right inverse of the sweep for level-k-measurable PSD symbols F:
/// B has coefficients B_I = |I|^{1/2} (F^I)^{1/2} at level k only, and
/// sweep(B) = F. Throws if F is not level-k measurable or a cell is not PSD.
MatrixSymbol factor_sweep(const MatrixSymbol& f, int level);

struct MartingaleAverage {
    MatrixSymbol average;
    double std_error = 0.0;  // aggregate standard error (Monte Carlo only)
};

/// Exact average of (T_sigma B)^*(T_sigma B) over all sign patterns; equals
/// sweep(B). Requires 2^K - 1 <= 20 sign slots.
MartingaleAverage martingale_average_sweep_exact(const MatrixSymbol& b);

/// Seeded Monte Carlo estimate with aggregate standard error for the
/// L^2-Frobenius error metric.
MartingaleAverage martingale_average_sweep_mc(const MatrixSymbol& b, int samples,
                                              std::uint64_t seed);

/// Exact enumeration within the 20-slot budget, seeded Monte Carlo above it.
MartingaleAverage martingale_average_sweep(const MatrixSymbol& b, int samples,
                                           std::uint64_t seed);

}  // namespace opbmo
