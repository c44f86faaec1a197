// Serial reference implementations of the operator kernels and the sweep.
//
// These follow the defining formulas literally, one interval at a time, with
// no tree reuse and no threading. They are slower than the kernels in
// operators.cpp / sweep.cpp and exist as the independent oracle the tests and
// the benchmark compare against. Dense assembly also builds its columns here.

#pragma once

#include "opbmo/symbol.hpp"

namespace opbmo::reference {

VectorField apply_para(const MatrixSymbol& b, const VectorField& f);
VectorField apply_delta(const MatrixSymbol& b, const VectorField& f);
VectorField apply_mult(const MatrixSymbol& b, const VectorField& f);
VectorField apply_diag(const MatrixSymbol& u, const MatrixSymbol& v,
                       const VectorField& f);

/// S_B = sum_I chi_I/|I| B_I^* B_I, accumulated cell by cell.
MatrixSymbol sweep(const MatrixSymbol& b);

/// Average of (T_sigma B)^*(T_sigma B) over every global sign pattern
/// (2^(2^K - 1) of them); requires 2^K - 1 <= 20 sign slots.
MatrixSymbol martingale_average_exact(const MatrixSymbol& b);

}  // namespace opbmo::reference
