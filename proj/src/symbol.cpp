#include "opbmo/symbol.hpp"

#include <cmath>
#include <stdexcept>

namespace opbmo {

namespace {

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(std::size_t n) {
    int k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    return k;
}

// Bottom-up tree of averages; averages[level][pos] = m_I of the cell data.
template <typename Value>
std::vector<std::vector<Value>> average_tree(const std::vector<Value>& cells, int depth) {
    std::vector<std::vector<Value>> avg(static_cast<std::size_t>(depth) + 1);
    avg[static_cast<std::size_t>(depth)] = cells;
    for (int level = depth - 1; level >= 0; --level) {
        const auto& fine = avg[static_cast<std::size_t>(level + 1)];
        auto& coarse = avg[static_cast<std::size_t>(level)];
        coarse.resize(std::size_t{1} << level);
        for (std::size_t p = 0; p < coarse.size(); ++p)
            coarse[p] = 0.5 * (fine[2 * p] + fine[2 * p + 1]);
    }
    return avg;
}

}  // namespace

// ---- MatrixSymbol ----

MatrixSymbol::MatrixSymbol(int dim, int depth) : dim_(dim), depth_(depth) {
    if (dim < 1) throw std::invalid_argument("symbol dimension must be >= 1");
    if (depth < 1 || depth > 30) throw std::invalid_argument("symbol depth must be in [1,30]");
    dc_ = Mat::Zero(dim, dim);
    coeffs_.resize(static_cast<std::size_t>(depth));
    for (int level = 0; level < depth; ++level)
        coeffs_[static_cast<std::size_t>(level)].assign(std::size_t{1} << level,
                                                        Mat::Zero(dim, dim));
}

MatrixSymbol MatrixSymbol::from_cells(const std::vector<Mat>& cells) {
    if (!is_power_of_two(cells.size()))
        throw std::invalid_argument("cell count must be a power of two");
    const int depth = log2_exact(cells.size());
    if (depth < 1) throw std::invalid_argument("need at least two cells");
    const int dim = static_cast<int>(cells[0].rows());
    for (const Mat& c : cells)
        if (c.rows() != dim || c.cols() != dim)
            throw std::invalid_argument("inconsistent cell dimensions");

    MatrixSymbol sym(dim, depth);
    auto avg = average_tree(cells, depth);
    sym.dc_ = avg[0][0];
    // B_I = (|I|^{1/2}/2) (m_{I.left} - m_{I.right})
    for (int level = 0; level < depth; ++level) {
        const double factor = 0.5 * std::sqrt(std::ldexp(1.0, -level));
        const auto& fine = avg[static_cast<std::size_t>(level + 1)];
        for (std::size_t p = 0; p < (std::size_t{1} << level); ++p)
            sym.coeffs_[static_cast<std::size_t>(level)][p] =
                factor * (fine[2 * p] - fine[2 * p + 1]);
    }
    return sym;
}

void MatrixSymbol::set_dc(const Mat& m) {
    if (m.rows() != dim_ || m.cols() != dim_)
        throw std::invalid_argument("dc dimension mismatch");
    dc_ = m;
}

const Mat& MatrixSymbol::coeff(int level, std::int64_t pos) const {
    if (level < 0 || level >= depth_)
        throw std::invalid_argument("coefficient level out of range");
    return coeffs_[static_cast<std::size_t>(level)][static_cast<std::size_t>(pos)];
}

void MatrixSymbol::set_coeff(int level, std::int64_t pos, const Mat& m) {
    if (level < 0 || level >= depth_)
        throw std::invalid_argument("coefficient level out of range");
    if (m.rows() != dim_ || m.cols() != dim_)
        throw std::invalid_argument("coefficient dimension mismatch");
    coeffs_[static_cast<std::size_t>(level)][static_cast<std::size_t>(pos)] = m;
}

std::vector<Mat> MatrixSymbol::cells() const {
    // Top-down: m_{I.left} = m_I + |I|^{-1/2} B_I, m_{I.right} = m_I - |I|^{-1/2} B_I.
    std::vector<Mat> cur{dc_};
    for (int level = 0; level < depth_; ++level) {
        const double amp = haar_amplitude(level);
        std::vector<Mat> next(std::size_t{1} << (level + 1));
        for (std::size_t p = 0; p < cur.size(); ++p) {
            const Mat& b = coeffs_[static_cast<std::size_t>(level)][p];
            next[2 * p] = cur[p] + amp * b;
            next[2 * p + 1] = cur[p] - amp * b;
        }
        cur.swap(next);
    }
    return cur;
}

MatrixSymbol MatrixSymbol::adjoint() const {
    MatrixSymbol out(dim_, depth_);
    out.dc_ = dc_.adjoint();
    for (int level = 0; level < depth_; ++level)
        for (std::size_t p = 0; p < (std::size_t{1} << level); ++p)
            out.coeffs_[static_cast<std::size_t>(level)][p] =
                coeffs_[static_cast<std::size_t>(level)][p].adjoint();
    return out;
}

MatrixSymbol& MatrixSymbol::operator+=(const MatrixSymbol& other) {
    if (other.dim_ != dim_ || other.depth_ != depth_)
        throw std::invalid_argument("symbol shape mismatch");
    dc_ += other.dc_;
    for (int level = 0; level < depth_; ++level)
        for (std::size_t p = 0; p < (std::size_t{1} << level); ++p)
            coeffs_[static_cast<std::size_t>(level)][p] +=
                other.coeffs_[static_cast<std::size_t>(level)][p];
    return *this;
}

MatrixSymbol& MatrixSymbol::operator-=(const MatrixSymbol& other) {
    if (other.dim_ != dim_ || other.depth_ != depth_)
        throw std::invalid_argument("symbol shape mismatch");
    dc_ -= other.dc_;
    for (int level = 0; level < depth_; ++level)
        for (std::size_t p = 0; p < (std::size_t{1} << level); ++p)
            coeffs_[static_cast<std::size_t>(level)][p] -=
                other.coeffs_[static_cast<std::size_t>(level)][p];
    return *this;
}

MatrixSymbol& MatrixSymbol::operator*=(Complex scale) {
    dc_ *= scale;
    for (auto& level : coeffs_)
        for (auto& m : level) m *= scale;
    return *this;
}

double MatrixSymbol::frobenius_l2() const {
    double sum = dc_.squaredNorm();
    for (const auto& level : coeffs_)
        for (const auto& m : level) sum += m.squaredNorm();
    return std::sqrt(sum);
}

// ---- VectorField ----

VectorField::VectorField(int dim, int depth) : dim_(dim), depth_(depth) {
    if (dim < 1) throw std::invalid_argument("field dimension must be >= 1");
    if (depth < 1 || depth > 30) throw std::invalid_argument("field depth must be in [1,30]");
    values_.assign(std::size_t{1} << depth, Vec::Zero(dim));
}

VectorField VectorField::from_cells(const std::vector<Vec>& cells) {
    if (!is_power_of_two(cells.size()))
        throw std::invalid_argument("cell count must be a power of two");
    const int depth = log2_exact(cells.size());
    if (depth < 1) throw std::invalid_argument("need at least two cells");
    VectorField f(static_cast<int>(cells[0].size()), depth);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c].size() != f.dim_) throw std::invalid_argument("inconsistent cell dimensions");
        f.values_[c] = cells[c];
    }
    return f;
}

double VectorField::l2_norm() const {
    double sum = 0.0;
    for (const Vec& v : values_) sum += v.squaredNorm();
    return std::sqrt(sum * std::ldexp(1.0, -depth_));
}

FieldCoeffs analyze_field(const VectorField& f) {
    FieldCoeffs out;
    out.dim = f.dim();
    out.depth = f.depth();
    auto avg = average_tree(f.values(), f.depth());
    out.mean = avg[0][0];
    out.coeffs.resize(static_cast<std::size_t>(f.depth()));
    for (int level = 0; level < f.depth(); ++level) {
        const double factor = 0.5 * std::sqrt(std::ldexp(1.0, -level));
        const auto& fine = avg[static_cast<std::size_t>(level + 1)];
        auto& row = out.coeffs[static_cast<std::size_t>(level)];
        row.resize(std::size_t{1} << level);
        for (std::size_t p = 0; p < row.size(); ++p)
            row[p] = factor * (fine[2 * p] - fine[2 * p + 1]);
    }
    return out;
}

VectorField synthesize_field(const FieldCoeffs& coeffs) {
    VectorField f(coeffs.dim, coeffs.depth);
    std::vector<Vec> cur{coeffs.mean};
    for (int level = 0; level < coeffs.depth; ++level) {
        const double amp = haar_amplitude(level);
        std::vector<Vec> next(std::size_t{1} << (level + 1));
        for (std::size_t p = 0; p < cur.size(); ++p) {
            const Vec& b = coeffs.coeffs[static_cast<std::size_t>(level)][p];
            next[2 * p] = cur[p] + amp * b;
            next[2 * p + 1] = cur[p] - amp * b;
        }
        cur.swap(next);
    }
    for (std::int64_t c = 0; c < f.cell_count(); ++c)
        f.value(c) = cur[static_cast<std::size_t>(c)];
    return f;
}

std::vector<std::vector<Vec>> field_averages(const VectorField& f) {
    return average_tree(f.values(), f.depth());
}

std::vector<std::vector<Mat>> symbol_averages(const MatrixSymbol& b) {
    return average_tree(b.cells(), b.depth());
}

Complex l2_inner(const VectorField& f, const VectorField& g) {
    if (f.dim() != g.dim() || f.depth() != g.depth())
        throw std::invalid_argument("field shape mismatch");
    Complex sum = 0.0;
    for (std::int64_t c = 0; c < f.cell_count(); ++c)
        sum += g.value(c).dot(f.value(c));  // Eigen dot conjugates the left arg
    return sum * std::ldexp(1.0, -f.depth());
}

VectorField zero_mean_part(const VectorField& f) {
    Vec mean = Vec::Zero(f.dim());
    for (std::int64_t c = 0; c < f.cell_count(); ++c) mean += f.value(c);
    mean *= std::ldexp(1.0, -f.depth());
    VectorField out = f;
    for (std::int64_t c = 0; c < f.cell_count(); ++c) out.value(c) -= mean;
    return out;
}

// ---- SignPattern ----

SignPattern::SignPattern(int depth, int fill) : depth_(depth) {
    if (depth < 1) throw std::invalid_argument("sign pattern depth must be >= 1");
    if (fill != 1 && fill != -1) throw std::invalid_argument("fill sign must be +-1");
    signs_.assign(static_cast<std::size_t>(interval_count(depth)),
                  static_cast<std::int8_t>(fill));
}

SignPattern SignPattern::random(int depth, Rng& rng) {
    SignPattern s(depth);
    for (auto& v : s.signs_) v = static_cast<std::int8_t>(rng.next_sign());
    return s;
}

void SignPattern::set_sign(int level, std::int64_t pos, int s) {
    if (s != 1 && s != -1) throw std::invalid_argument("sign must be +-1");
    if (level < 0 || level >= depth_) throw std::invalid_argument("sign level out of range");
    signs_[static_cast<std::size_t>(interval_linear_index({level, pos}))] =
        static_cast<std::int8_t>(s);
}

// ---- operations ----

Moments moments(const MatrixSymbol& b, const DyadicIndex& idx) {
    if (idx.level > b.depth())
        throw std::invalid_argument("moments: interval deeper than symbol depth");
    Moments out{Mat::Zero(b.dim(), b.dim()), Mat::Zero(b.dim(), b.dim()),
                MatrixSymbol(b.dim(), b.depth())};

    auto cells = b.cells();
    auto [first, last] = cell_range(idx, b.depth());
    Mat mean = Mat::Zero(b.dim(), b.dim());
    for (std::int64_t c = first; c < last; ++c) mean += cells[static_cast<std::size_t>(c)];
    out.mean = mean / static_cast<double>(last - first);

    if (idx.level < b.depth()) {
        out.coeff = b.coeff(idx);
        for (int level = idx.level; level < b.depth(); ++level) {
            const std::int64_t lo = idx.pos << (level - idx.level);
            const std::int64_t hi = (idx.pos + 1) << (level - idx.level);
            for (std::int64_t p = lo; p < hi; ++p)
                out.projection.set_coeff(level, p, b.coeff(level, p));
        }
    }
    return out;
}

MatrixSymbol expectation(const MatrixSymbol& b, int k) {
    if (k < 0 || k > b.depth())
        throw std::invalid_argument("expectation level out of range");
    MatrixSymbol out(b.dim(), b.depth());
    out.set_dc(b.dc());
    for (int level = 0; level < k; ++level)
        for (std::int64_t p = 0; p < (std::int64_t{1} << level); ++p)
            out.set_coeff(level, p, b.coeff(level, p));
    return out;
}

MatrixSymbol martingale_transform(const MatrixSymbol& b, const SignPattern& sigma) {
    if (sigma.depth() != b.depth())
        throw std::invalid_argument("sign pattern depth mismatch");
    MatrixSymbol out = b;
    for (int level = 0; level < b.depth(); ++level)
        for (std::int64_t p = 0; p < (std::int64_t{1} << level); ++p)
            if (sigma.sign(level, p) < 0)
                out.set_coeff(level, p, -b.coeff(level, p));
    return out;
}

VectorField pointwise_apply(const MatrixSymbol& b, const VectorField& f) {
    if (b.dim() != f.dim() || b.depth() != f.depth())
        throw std::invalid_argument("pointwise_apply: shape mismatch");
    auto cells = b.cells();
    VectorField out(f.dim(), f.depth());
    for (std::int64_t c = 0; c < f.cell_count(); ++c)
        out.value(c) = cells[static_cast<std::size_t>(c)] * f.value(c);
    return out;
}

MatrixSymbol build_rademacher(const std::vector<Mat>& blocks, int depth) {
    const int n_blocks = static_cast<int>(blocks.size());
    if (n_blocks >= depth)
        throw std::invalid_argument("build_rademacher: need block count < depth");
    if (blocks.empty()) throw std::invalid_argument("build_rademacher: no blocks");
    const int dim = static_cast<int>(blocks[0].rows());
    MatrixSymbol out(dim, depth);
    for (int k = 1; k <= n_blocks; ++k) {
        const double w = std::sqrt(std::ldexp(1.0, -k));  // |I|^{1/2} at level k
        for (std::int64_t p = 0; p < (std::int64_t{1} << k); ++p)
            out.set_coeff(k, p, w * blocks[static_cast<std::size_t>(k - 1)]);
    }
    return out;
}

MatrixSymbol random_symbol(int dim, int depth, Rng& rng) {
    MatrixSymbol b(dim, depth);
    b.set_dc(random_gaussian_matrix(dim, dim, rng));
    for (int level = 0; level < depth; ++level)
        for (std::int64_t p = 0; p < (std::int64_t{1} << level); ++p)
            b.set_coeff(level, p, random_gaussian_matrix(dim, dim, rng));
    return b;
}

MatrixSymbol random_real_symbol(int dim, int depth, Rng& rng) {
    MatrixSymbol b = random_symbol(dim, depth, rng);
    MatrixSymbol out(dim, depth);
    out.set_dc(b.dc().real().cast<Complex>());
    for (int level = 0; level < depth; ++level)
        for (std::int64_t p = 0; p < (std::int64_t{1} << level); ++p)
            out.set_coeff(level, p, b.coeff(level, p).real().cast<Complex>());
    return out;
}

VectorField random_field(int dim, int depth, Rng& rng) {
    VectorField f(dim, depth);
    for (std::int64_t c = 0; c < f.cell_count(); ++c)
        f.value(c) = random_gaussian_vector(dim, rng);
    return f;
}

}  // namespace opbmo
