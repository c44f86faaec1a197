#include "opbmo/witness.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "opbmo/norms.hpp"

namespace opbmo {

FamilyKind family_kind_from_string(const std::string& name) {
    if (name == "rank_one_rademacher") return FamilyKind::rank_one_rademacher;
    if (name == "carleson_diagonal") return FamilyKind::carleson_diagonal;
    if (name == "diagonal_scalar") return FamilyKind::diagonal_scalar;
    throw std::invalid_argument("unknown family kind: " + name);
}

std::string to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::rank_one_rademacher: return "rank_one_rademacher";
        case FamilyKind::carleson_diagonal: return "carleson_diagonal";
        case FamilyKind::diagonal_scalar: return "diagonal_scalar";
    }
    return "?";
}

namespace {

FamilyResult rank_one_rademacher(const FamilySpec& spec) {
    const int N = spec.N;
    if (N < 1) throw std::invalid_argument("rank_one_rademacher: N >= 1 required");
    if (spec.depth <= N)
        throw std::invalid_argument("rank_one_rademacher: depth must exceed N");
    const int dim = spec.dim > 0 ? spec.dim : N + 1;
    if (dim < N + 1)
        throw std::invalid_argument("rank_one_rademacher: dim must be >= N+1");

    // Blocks h (x) e_k with h = e_{N+1}: matrix h e_k^*.
    std::vector<Mat> blocks;
    blocks.reserve(static_cast<std::size_t>(N));
    for (int k = 0; k < N; ++k) {
        Mat m = Mat::Zero(dim, dim);
        m(N, k) = 1.0;
        blocks.push_back(m);
    }
    FamilyResult out{build_rademacher(blocks, spec.depth), {}};
    out.expected["sbmo"] = 1.0;
    out.expected["sbmo_adj"] = std::sqrt(static_cast<double>(N));
    out.expected["wbmo"] = 1.0;
    out.expected["wbmo_adj"] = 1.0;
    return out;
}

FamilyResult carleson_diagonal(const FamilySpec& spec) {
    const int depth = spec.depth;
    if (depth < 1) throw std::invalid_argument("carleson_diagonal: depth >= 1 required");
    const std::int64_t dim = interval_count(depth);
    if (spec.dim != 0 && spec.dim != dim)
        throw std::invalid_argument("carleson_diagonal: dim must be 2^depth - 1");
    if (dim > 4096) throw std::invalid_argument("carleson_diagonal: depth too large");

    MatrixSymbol b(static_cast<int>(dim), depth);
    for (int level = 0; level < depth; ++level) {
        const double weight = std::sqrt(std::ldexp(1.0, -level));  // |I|^{1/2}
        for (std::int64_t p = 0; p < (std::int64_t{1} << level); ++p) {
            Mat m = Mat::Zero(dim, dim);
            const std::int64_t slot = interval_linear_index({level, p});
            m(slot, slot) = weight;
            b.set_coeff(level, p, m);
        }
    }
    FamilyResult out{b, {}};
    out.expected["carl"] = std::sqrt(static_cast<double>(depth));
    out.expected["cell_op_norm"] = 1.0;
    return out;
}

FamilyResult diagonal_scalar(const FamilySpec& spec) {
    if (spec.scalars.empty())
        throw std::invalid_argument("diagonal_scalar: need at least one scalar symbol");
    const int depth = spec.scalars[0].depth();
    const int dim = static_cast<int>(spec.scalars.size());
    for (const auto& s : spec.scalars) {
        if (s.dim() != 1) throw std::invalid_argument("diagonal_scalar: entries must be scalar");
        if (s.depth() != depth)
            throw std::invalid_argument("diagonal_scalar: entries must share one depth");
    }
    MatrixSymbol b(dim, depth);
    Mat dc = Mat::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) dc(k, k) = spec.scalars[static_cast<std::size_t>(k)].dc()(0, 0);
    b.set_dc(dc);
    for (int level = 0; level < depth; ++level)
        for (std::int64_t p = 0; p < (std::int64_t{1} << level); ++p) {
            Mat m = Mat::Zero(dim, dim);
            for (int k = 0; k < dim; ++k)
                m(k, k) = spec.scalars[static_cast<std::size_t>(k)].coeff(level, p)(0, 0);
            b.set_coeff(level, p, m);
        }
    return {b, {}};
}

}  // namespace

FamilyResult family(const FamilySpec& spec) {
    switch (spec.kind) {
        case FamilyKind::rank_one_rademacher: return rank_one_rademacher(spec);
        case FamilyKind::carleson_diagonal: return carleson_diagonal(spec);
        case FamilyKind::diagonal_scalar: return diagonal_scalar(spec);
    }
    throw std::invalid_argument("unknown family kind");
}

namespace {

double safe_ratio(const std::string& num, const std::string& den, const MatrixSymbol& b) {
    const double d = eval_objective(den, b);
    if (d <= 1e-12) return -1.0;  // degenerate denominator
    return eval_objective(num, b) / d;
}

}  // namespace

SearchResult ratio_search(const SearchConfig& cfg) {
    if (!valid_objective_id(cfg.numerator) || !valid_objective_id(cfg.denominator))
        throw std::invalid_argument("ratio_search: invalid norm id");
    if (cfg.restarts < 1 || cfg.steps < 0)
        throw std::invalid_argument("ratio_search: invalid budget");
    if (cfg.seed_symbol &&
        (cfg.seed_symbol->dim() != cfg.dim || cfg.seed_symbol->depth() != cfg.depth))
        throw std::invalid_argument("ratio_search: seed symbol shape mismatch");

    struct RestartOutcome {
        MatrixSymbol best;
        double ratio = -1.0;
        std::vector<double> trace;
    };
    std::vector<RestartOutcome> outcomes(
        static_cast<std::size_t>(cfg.restarts),
        RestartOutcome{MatrixSymbol(cfg.dim, cfg.depth), -1.0, {}});

#pragma omp parallel for schedule(dynamic) if (cfg.restarts >= 2)
    for (int r = 0; r < cfg.restarts; ++r) {
        Rng rng = Rng::stream(cfg.seed, 0x5eaULL, static_cast<std::uint64_t>(r));
        MatrixSymbol current =
            cfg.seed_symbol ? *cfg.seed_symbol : random_symbol(cfg.dim, cfg.depth, rng);
        double current_ratio = safe_ratio(cfg.numerator, cfg.denominator, current);
        RestartOutcome& out = outcomes[static_cast<std::size_t>(r)];
        out.best = current;
        out.ratio = current_ratio;
        out.trace.reserve(static_cast<std::size_t>(cfg.steps));

        double step = cfg.step_size;
        for (int s = 0; s < cfg.steps; ++s) {
            // Bump one Haar coefficient with a Gaussian matrix.
            const std::int64_t slot = rng.next_below(interval_count(cfg.depth));
            const DyadicIndex idx = interval_from_linear_index(slot);
            MatrixSymbol candidate = current;
            candidate.set_coeff(idx, candidate.coeff(idx) +
                                         step * random_gaussian_matrix(cfg.dim, cfg.dim, rng));
            const double ratio = safe_ratio(cfg.numerator, cfg.denominator, candidate);
            if (ratio > current_ratio) {
                current = candidate;
                current_ratio = ratio;
            }
            if (current_ratio > out.ratio) {
                out.ratio = current_ratio;
                out.best = current;
            }
            out.trace.push_back(out.ratio);
            step *= cfg.step_decay;
        }
    }

    // Deterministic reduction: max by (ratio, restart index).
    std::size_t winner = 0;
    for (std::size_t r = 1; r < outcomes.size(); ++r)
        if (outcomes[r].ratio > outcomes[winner].ratio) winner = r;
    if (outcomes[winner].ratio < 0.0)
        throw std::runtime_error("ratio_search: all restarts degenerate (denominator 0)");

    SearchResult result{outcomes[winner].best, outcomes[winner].ratio, {}};
    result.trace.resize(static_cast<std::size_t>(cfg.steps), result.ratio);
    for (int s = 0; s < cfg.steps; ++s) {
        double best_at_step = -1.0;
        for (const auto& o : outcomes)
            if (!o.trace.empty())
                best_at_step = std::max(best_at_step, o.trace[static_cast<std::size_t>(s)]);
        result.trace[static_cast<std::size_t>(s)] = best_at_step;
    }
    return result;
}

GrowthResult growth_curve(const GrowthConfig& cfg) {
    if (cfg.dims.empty()) throw std::invalid_argument("growth_curve: empty dimension list");
    GrowthResult out;
    out.rows.reserve(cfg.dims.size());

    for (int dim : cfg.dims) {
        GrowthRow row;
        row.dim = dim;
        row.depth = cfg.depth;
        row.seed = cfg.seed;
        if (cfg.family_kind) {
            FamilySpec spec;
            spec.kind = *cfg.family_kind;
            if (*cfg.family_kind == FamilyKind::rank_one_rademacher) {
                spec.N = dim - 1;  // largest block count the dimension allows
                spec.depth = std::max(cfg.depth, dim);
                spec.dim = dim;
            } else {
                spec.depth = cfg.depth;
            }
            const FamilyResult fam = family(spec);
            // A family's gap may live on the symbol or on its adjoint
            // (rank-one: sbmo/wbmo of the adjoint is sqrt(N)); report the
            // larger of the two ratios.
            double best = -1.0;
            for (const MatrixSymbol& sym : {fam.symbol, fam.symbol.adjoint()}) {
                const double den = eval_objective(cfg.denominator, sym);
                if (den <= 1e-12) continue;
                best = std::max(best, eval_objective(cfg.numerator, sym) / den);
            }
            if (best < 0.0) throw std::runtime_error("growth_curve: degenerate family");
            row.ratio = best;
        } else {
            SearchConfig sc;
            sc.numerator = cfg.numerator;
            sc.denominator = cfg.denominator;
            sc.dim = dim;
            sc.depth = cfg.depth;
            sc.restarts = cfg.restarts;
            sc.steps = cfg.steps;
            sc.seed = mix64(cfg.seed ^ static_cast<std::uint64_t>(dim));
            row.ratio = ratio_search(sc).ratio;
        }
        out.rows.push_back(row);
    }

    // One-parameter least squares against log(n+1) and log^2(n+1).
    double num_log = 0.0, den_log = 0.0, num_log2 = 0.0, den_log2 = 0.0;
    for (const auto& row : out.rows) {
        const double x = std::log(static_cast<double>(row.dim) + 1.0);
        num_log += row.ratio * x;
        den_log += x * x;
        num_log2 += row.ratio * x * x;
        den_log2 += x * x * x * x;
    }
    out.coef_log = den_log > 0.0 ? num_log / den_log : 0.0;
    out.coef_log2 = den_log2 > 0.0 ? num_log2 / den_log2 : 0.0;
    for (auto& row : out.rows) {
        const double x = std::log(static_cast<double>(row.dim) + 1.0);
        row.fit_log = out.coef_log * x;
        row.fit_log2 = out.coef_log2 * x * x;
        row.residual = row.ratio - row.fit_log;
    }
    return out;
}

}  // namespace opbmo
