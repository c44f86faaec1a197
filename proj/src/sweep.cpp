#include "opbmo/sweep.hpp"

#include <omp.h>

#include <cmath>
#include <stdexcept>

#include "opbmo/linalg.hpp"

namespace opbmo {

namespace {

// Top-down prefix accumulation of per-interval terms onto cells.
MatrixSymbol accumulate_prefix(const MatrixSymbol& u, const MatrixSymbol& v) {
    const int depth = u.depth();
    const int dim = u.dim();
    std::vector<Mat> cur{Mat::Zero(dim, dim)};
    for (int level = 0; level < depth; ++level) {
        const double inv_measure = std::ldexp(1.0, level);
        const std::int64_t count = std::int64_t{1} << level;
        std::vector<Mat> next(static_cast<std::size_t>(2 * count));
#pragma omp parallel for schedule(static) if (count >= 256)
        for (std::int64_t p = 0; p < count; ++p) {
            const Mat term = cur[static_cast<std::size_t>(p)] +
                             inv_measure * (u.coeff(level, p).adjoint() * v.coeff(level, p));
            next[static_cast<std::size_t>(2 * p)] = term;
            next[static_cast<std::size_t>(2 * p + 1)] = term;
        }
        cur.swap(next);
    }
    return MatrixSymbol::from_cells(cur);
}

}  // namespace

MatrixSymbol sweep(const MatrixSymbol& b) { return accumulate_prefix(b, b); }

MatrixSymbol bilinear_sweep(const MatrixSymbol& u, const MatrixSymbol& v) {
    if (u.dim() != v.dim() || u.depth() != v.depth())
        throw std::invalid_argument("bilinear_sweep: symbol shape mismatch");
    return accumulate_prefix(u, v);
}

double sup_op_norm(const MatrixSymbol& s) {
    const auto cells = s.cells();
    double best = 0.0;
    for (const Mat& c : cells) best = std::max(best, op_norm_svd(c));
    return best;
}

MatrixSymbol factor_sweep(const MatrixSymbol& f, int level) {
    if (level < 0 || level >= f.depth())
        throw std::invalid_argument("factor_sweep: level out of range");
    const auto cells = f.cells();
    const int depth = f.depth();
    MatrixSymbol b(f.dim(), depth);
    for (std::int64_t p = 0; p < (std::int64_t{1} << level); ++p) {
        const DyadicIndex idx{level, p};
        auto [first, last] = cell_range(idx, depth);
        const Mat& block = cells[static_cast<std::size_t>(first)];
        for (std::int64_t c = first + 1; c < last; ++c) {
            if (rel_diff(cells[static_cast<std::size_t>(c)], block) > 1e-12)
                throw std::invalid_argument("factor_sweep: symbol not level-k measurable");
        }
        // B_I = |I|^{1/2} (F^I)^{1/2}; psd_sqrt rejects non-PSD blocks.
        b.set_coeff(idx, std::sqrt(std::ldexp(1.0, -level)) * psd_sqrt(block));
    }
    return b;
}

MartingaleAverage martingale_average_sweep_exact(const MatrixSymbol& b) {
    const int depth = b.depth();
    if (interval_count(depth) > 20)
        throw std::invalid_argument("exact martingale average: more than 20 sign slots");
    const int dim = b.dim();

    // (T_sigma B)^*(T_sigma B)(t) depends only on the K signs along the
    // ancestor path of t, so the global average reduces per cell to the
    // average over {-1,+1}^K. This matches the full enumeration exactly
    // (reference::martingale_average_exact) at a fraction of the cost.
    const std::int64_t cells = b.cell_count();
    std::vector<Mat> acc(static_cast<std::size_t>(cells), Mat::Zero(dim, dim));
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < cells; ++c) {
        std::vector<Mat> path(static_cast<std::size_t>(depth));
        for (int level = 0; level < depth; ++level)
            path[static_cast<std::size_t>(level)] =
                haar_value({level, ancestor_pos(c, depth, level)}, c, depth) *
                b.coeff(level, ancestor_pos(c, depth, level));
        const std::int64_t combos = std::int64_t{1} << depth;
        Mat sum = Mat::Zero(dim, dim);
        Mat value(dim, dim);
        for (std::int64_t s = 0; s < combos; ++s) {
            value.setZero();
            for (int level = 0; level < depth; ++level)
                value += ((s >> level) & 1) ? -path[static_cast<std::size_t>(level)]
                                            : path[static_cast<std::size_t>(level)];
            sum += value.adjoint() * value;
        }
        acc[static_cast<std::size_t>(c)] = sum / static_cast<double>(combos);
    }
    return {MatrixSymbol::from_cells(acc), 0.0};
}

MartingaleAverage martingale_average_sweep_mc(const MatrixSymbol& b, int samples,
                                              std::uint64_t seed) {
    if (samples < 2) throw std::invalid_argument("monte carlo needs at least 2 samples");
    const int depth = b.depth();
    const int dim = b.dim();
    const std::int64_t cells = b.cell_count();

    std::vector<Mat> mean(static_cast<std::size_t>(cells), Mat::Zero(dim, dim));
    std::vector<Eigen::MatrixXd> var(static_cast<std::size_t>(cells),
                                     Eigen::MatrixXd::Zero(dim, dim));

    // Signs are a pure function of (seed, sample, interval), so the
    // cell-parallel loop is deterministic for any thread count.
    auto sign_of = [seed](int sample, int level, std::int64_t pos) {
        return (mix64(mix64(mix64(seed ^ 0x5bd1e995u) ^
                            static_cast<std::uint64_t>(sample)) ^
                      static_cast<std::uint64_t>(interval_linear_index({level, pos}))) &
                1)
                   ? -1.0
                   : 1.0;
    };

#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < cells; ++c) {
        Mat sum = Mat::Zero(dim, dim);
        Eigen::MatrixXd sumsq = Eigen::MatrixXd::Zero(dim, dim);
        Mat value(dim, dim);
        for (int s = 0; s < samples; ++s) {
            value.setZero();
            for (int level = 0; level < depth; ++level) {
                const std::int64_t pos = ancestor_pos(c, depth, level);
                value += sign_of(s, level, pos) * haar_value({level, pos}, c, depth) *
                         b.coeff(level, pos);
            }
            const Mat sq = value.adjoint() * value;
            sum += sq;
            sumsq += sq.cwiseAbs2();
        }
        const double inv_n = 1.0 / static_cast<double>(samples);
        mean[static_cast<std::size_t>(c)] = sum * inv_n;
        // Per-entry variance of the sample mean.
        var[static_cast<std::size_t>(c)] =
            (sumsq * inv_n - mean[static_cast<std::size_t>(c)].cwiseAbs2()).cwiseMax(0.0) /
            static_cast<double>(samples - 1);
    }

    double se_sq = 0.0;
    const double cell_measure = std::ldexp(1.0, -depth);
    for (const auto& v : var) se_sq += cell_measure * v.sum();
    return {MatrixSymbol::from_cells(mean), std::sqrt(se_sq)};
}

MartingaleAverage martingale_average_sweep(const MatrixSymbol& b, int samples,
                                           std::uint64_t seed) {
    if (interval_count(b.depth()) <= 20) return martingale_average_sweep_exact(b);
    return martingale_average_sweep_mc(b, samples, seed);
}

}  // namespace opbmo
