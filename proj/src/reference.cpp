#include "opbmo/reference.hpp"

#include <cmath>
#include <stdexcept>

namespace opbmo::reference {

namespace {

// m_I f by direct summation over the cells under I.
Vec interval_mean(const VectorField& f, const DyadicIndex& idx) {
    auto [first, last] = cell_range(idx, f.depth());
    Vec sum = Vec::Zero(f.dim());
    for (std::int64_t c = first; c < last; ++c) sum += f.value(c);
    return sum / static_cast<double>(last - first);
}

// f_I = integral of f h_I over I as a cell sum.
Vec interval_coeff(const VectorField& f, const DyadicIndex& idx) {
    auto [first, last] = cell_range(idx, f.depth());
    const double cell_measure = std::ldexp(1.0, -f.depth());
    Vec sum = Vec::Zero(f.dim());
    for (std::int64_t c = first; c < last; ++c)
        sum += haar_value(idx, c, f.depth()) * f.value(c);
    return sum * cell_measure;
}

void check_shapes(const MatrixSymbol& b, const VectorField& f) {
    if (b.dim() != f.dim() || b.depth() != f.depth())
        throw std::invalid_argument("operator apply: shape mismatch");
}

}  // namespace

VectorField apply_para(const MatrixSymbol& b, const VectorField& f) {
    check_shapes(b, f);
    const int depth = f.depth();
    VectorField out(f.dim(), depth);
    for (int level = 0; level < depth; ++level) {
        for (std::int64_t p = 0; p < (std::int64_t{1} << level); ++p) {
            const DyadicIndex idx{level, p};
            const Vec term = b.coeff(idx) * interval_mean(f, idx);
            auto [first, last] = cell_range(idx, depth);
            for (std::int64_t c = first; c < last; ++c)
                out.value(c) += haar_value(idx, c, depth) * term;
        }
    }
    return out;
}

VectorField apply_delta(const MatrixSymbol& b, const VectorField& f) {
    check_shapes(b, f);
    const int depth = f.depth();
    VectorField out(f.dim(), depth);
    for (int level = 0; level < depth; ++level) {
        const double inv_measure = std::ldexp(1.0, level);
        for (std::int64_t p = 0; p < (std::int64_t{1} << level); ++p) {
            const DyadicIndex idx{level, p};
            const Vec term = inv_measure * (b.coeff(idx) * interval_coeff(f, idx));
            auto [first, last] = cell_range(idx, depth);
            for (std::int64_t c = first; c < last; ++c) out.value(c) += term;
        }
    }
    return out;
}

VectorField apply_mult(const MatrixSymbol& b, const VectorField& f) {
    check_shapes(b, f);
    const int depth = f.depth();
    VectorField out(f.dim(), depth);
    for (int level = 0; level < depth; ++level) {
        for (std::int64_t p = 0; p < (std::int64_t{1} << level); ++p) {
            const DyadicIndex idx{level, p};
            const Vec fi = interval_coeff(f, idx);
            const auto pib_cells = moments(b, idx).projection.cells();
            auto [first, last] = cell_range(idx, depth);
            for (std::int64_t c = first; c < last; ++c)
                out.value(c) += haar_value(idx, c, depth) *
                                (pib_cells[static_cast<std::size_t>(c)] * fi);
        }
    }
    return out;
}

VectorField apply_diag(const MatrixSymbol& u, const MatrixSymbol& v,
                       const VectorField& f) {
    if (u.dim() != v.dim() || u.depth() != v.depth())
        throw std::invalid_argument("apply_diag: symbol shape mismatch");
    check_shapes(u, f);
    const int depth = f.depth();
    VectorField out(f.dim(), depth);
    for (int level = 0; level < depth; ++level) {
        const double inv_measure = std::ldexp(1.0, level);
        for (std::int64_t p = 0; p < (std::int64_t{1} << level); ++p) {
            const DyadicIndex idx{level, p};
            Mat block = Mat::Zero(f.dim(), f.dim());
            for (int jl = level + 1; jl < depth; ++jl) {
                const std::int64_t lo = p << (jl - level), hi = (p + 1) << (jl - level);
                for (std::int64_t jp = lo; jp < hi; ++jp)
                    block += u.coeff(jl, jp).adjoint() * v.coeff(jl, jp);
            }
            const Vec term = inv_measure * (block * interval_coeff(f, idx));
            auto [first, last] = cell_range(idx, depth);
            for (std::int64_t c = first; c < last; ++c)
                out.value(c) += haar_value(idx, c, depth) * term;
        }
    }
    return out;
}

MatrixSymbol sweep(const MatrixSymbol& b) {
    const int depth = b.depth();
    std::vector<Mat> cells(static_cast<std::size_t>(b.cell_count()),
                           Mat::Zero(b.dim(), b.dim()));
    for (std::int64_t c = 0; c < b.cell_count(); ++c) {
        for (int level = 0; level < depth; ++level) {
            const DyadicIndex idx{level, ancestor_pos(c, depth, level)};
            const Mat& bi = b.coeff(idx);
            cells[static_cast<std::size_t>(c)] +=
                std::ldexp(1.0, level) * (bi.adjoint() * bi);
        }
    }
    return MatrixSymbol::from_cells(cells);
}

MatrixSymbol martingale_average_exact(const MatrixSymbol& b) {
    const int depth = b.depth();
    const std::int64_t slots = interval_count(depth);
    if (slots > 20)
        throw std::invalid_argument("exact martingale average: more than 20 sign slots");

    const std::int64_t patterns = std::int64_t{1} << slots;
    const double weight = 1.0 / static_cast<double>(patterns);
    std::vector<Mat> acc(static_cast<std::size_t>(b.cell_count()),
                         Mat::Zero(b.dim(), b.dim()));

    for (std::int64_t pat = 0; pat < patterns; ++pat) {
        SignPattern sigma(depth);
        for (std::int64_t s = 0; s < slots; ++s) {
            const DyadicIndex idx = interval_from_linear_index(s);
            sigma.set_sign(idx.level, idx.pos, ((pat >> s) & 1) ? -1 : 1);
        }
        MatrixSymbol t = martingale_transform(b, sigma);
        t.set_dc(Mat::Zero(b.dim(), b.dim()));  // the sweep carries no dc term
        const auto cells = t.cells();
        for (std::int64_t c = 0; c < b.cell_count(); ++c) {
            const Mat& m = cells[static_cast<std::size_t>(c)];
            acc[static_cast<std::size_t>(c)] += weight * (m.adjoint() * m);
        }
    }
    return MatrixSymbol::from_cells(acc);
}

}  // namespace opbmo::reference
