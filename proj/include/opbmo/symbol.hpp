// Matrix- and vector-valued functions on the dyadic circle with finite Haar
// expansions.
//
// A MatrixSymbol of dimension n and depth K is determined equivalently by its
// values on the 2^K depth-K cells or by (dc, {B_I : level(I) < K}); the two
// representations are exchanged by exact finite-sum Haar analysis/synthesis.
// Coefficients are stored level by level in complete-binary-tree layout.

#pragma once

#include <vector>

#include "opbmo/dyadic.hpp"
#include "opbmo/linalg.hpp"
#include "opbmo/rng.hpp"

namespace opbmo {

class MatrixSymbol {
public:
    MatrixSymbol(int dim, int depth);

    static MatrixSymbol from_cells(const std::vector<Mat>& cells);

    int dim() const { return dim_; }
    int depth() const { return depth_; }
    std::int64_t cell_count() const { return std::int64_t{1} << depth_; }

    const Mat& dc() const { return dc_; }
    void set_dc(const Mat& m);

    const Mat& coeff(int level, std::int64_t pos) const;
    const Mat& coeff(const DyadicIndex& idx) const { return coeff(idx.level, idx.pos); }
    void set_coeff(int level, std::int64_t pos, const Mat& m);
    void set_coeff(const DyadicIndex& idx, const Mat& m) { set_coeff(idx.level, idx.pos, m); }

    /// Cell values dc + sum_I h_I(t) B_I (exact synthesis).
    std::vector<Mat> cells() const;

    MatrixSymbol adjoint() const;

    MatrixSymbol& operator+=(const MatrixSymbol& other);
    MatrixSymbol& operator-=(const MatrixSymbol& other);
    MatrixSymbol& operator*=(Complex scale);
    friend MatrixSymbol operator+(MatrixSymbol a, const MatrixSymbol& b) { return a += b; }
    friend MatrixSymbol operator-(MatrixSymbol a, const MatrixSymbol& b) { return a -= b; }
    friend MatrixSymbol operator*(Complex s, MatrixSymbol a) { return a *= s; }

    /// sqrt(sum ||B_I||_F^2 + ||dc||_F^2), the L^2 Frobenius norm by Parseval.
    double frobenius_l2() const;

private:
    int dim_;
    int depth_;
    Mat dc_;
    std::vector<std::vector<Mat>> coeffs_;  // coeffs_[level][pos]
};

class VectorField {
public:
    VectorField(int dim, int depth);
    static VectorField from_cells(const std::vector<Vec>& cells);

    int dim() const { return dim_; }
    int depth() const { return depth_; }
    std::int64_t cell_count() const { return std::int64_t{1} << depth_; }

    const Vec& value(std::int64_t cell) const { return values_[static_cast<std::size_t>(cell)]; }
    Vec& value(std::int64_t cell) { return values_[static_cast<std::size_t>(cell)]; }
    const std::vector<Vec>& values() const { return values_; }

    double l2_norm() const;

private:
    int dim_;
    int depth_;
    std::vector<Vec> values_;
};

/// Haar data of a vector field: mean plus per-interval coefficients f_I.
struct FieldCoeffs {
    int dim = 0;
    int depth = 0;
    Vec mean;
    std::vector<std::vector<Vec>> coeffs;  // coeffs[level][pos]

    const Vec& at(int level, std::int64_t pos) const {
        return coeffs[static_cast<std::size_t>(level)][static_cast<std::size_t>(pos)];
    }
};

FieldCoeffs analyze_field(const VectorField& f);
VectorField synthesize_field(const FieldCoeffs& coeffs);

/// Averages m_I f for every interval with level <= depth; averages[level][pos].
std::vector<std::vector<Vec>> field_averages(const VectorField& f);
std::vector<std::vector<Mat>> symbol_averages(const MatrixSymbol& b);

/// <f,g>_{L^2} = integral of <f(t), g(t)> (conjugate-linear in g).
Complex l2_inner(const VectorField& f, const VectorField& g);

VectorField zero_mean_part(const VectorField& f);

/// Per-interval signs sigma_I in {-1,+1} for every level < depth.
class SignPattern {
public:
    explicit SignPattern(int depth, int fill = 1);
    static SignPattern random(int depth, Rng& rng);

    int depth() const { return depth_; }
    int sign(int level, std::int64_t pos) const {
        return signs_[static_cast<std::size_t>(interval_linear_index({level, pos}))];
    }
    void set_sign(int level, std::int64_t pos, int s);
    std::int64_t size() const { return static_cast<std::int64_t>(signs_.size()); }

private:
    int depth_;
    std::vector<std::int8_t> signs_;
};

// ---- operations ----

struct Moments {
    Mat mean;               // m_I B
    Mat coeff;              // B_I (zero matrix when level(I) == depth)
    MatrixSymbol projection;  // P_I B = sum_{J subset I} h_J B_J
};

Moments moments(const MatrixSymbol& b, const DyadicIndex& idx);

/// E_k: keep dc and all coefficients with level < k (conditional averaging
/// onto level-k cells).
MatrixSymbol expectation(const MatrixSymbol& b, int k);

MatrixSymbol martingale_transform(const MatrixSymbol& b, const SignPattern& sigma);

/// Cellwise matrix-vector product t -> B(t) f(t).
VectorField pointwise_apply(const MatrixSymbol& b, const VectorField& f);

/// sum_k blocks[k-1] * r_k for k = 1..N: coefficient |I|^{1/2} blocks[k-1] at
/// every level-k interval. Requires N < depth.
MatrixSymbol build_rademacher(const std::vector<Mat>& blocks, int depth);

MatrixSymbol random_symbol(int dim, int depth, Rng& rng);
MatrixSymbol random_real_symbol(int dim, int depth, Rng& rng);
VectorField random_field(int dim, int depth, Rng& rng);

}  // namespace opbmo
