#include "opbmo/hardy.hpp"

#include <cmath>
#include <stdexcept>

#include "opbmo/linalg.hpp"
#include "opbmo/sweep.hpp"

namespace opbmo {

TraceField::TraceField(int n, int k) : dim(n), depth(k) {
    if (n < 1 || k < 1) throw std::invalid_argument("trace field shape invalid");
    cells.assign(std::size_t{1} << k, Mat::Zero(n, n));
}

TraceField circledast(const VectorField& f, const VectorField& g) {
    double worst = 0.0;
    TraceField out = circledast_checked(f, g, &worst);
    if (worst > 1e-11)
        throw std::runtime_error("circledast: expansion routes disagree");
    return out;
}

TraceField circledast_checked(const VectorField& f, const VectorField& g,
                              double* worst_diff) {
    if (f.dim() != g.dim() || f.depth() != g.depth())
        throw std::invalid_argument("circledast: field shape mismatch");
    const int dim = f.dim();
    const int depth = f.depth();
    const auto fc = analyze_field(f);
    const auto gc = analyze_field(g);
    const auto favg = field_averages(f);
    const auto gavg = field_averages(g);

    // Route 1: the defining Haar sum, synthesized from its coefficients.
    MatrixSymbol haar_route(dim, depth);
    for (int level = 0; level < depth; ++level)
        for (std::int64_t p = 0; p < (std::int64_t{1} << level); ++p) {
            const Mat coeff =
                fc.at(level, p) * gavg[static_cast<std::size_t>(level)]
                                      [static_cast<std::size_t>(p)].adjoint() +
                favg[static_cast<std::size_t>(level)][static_cast<std::size_t>(p)] *
                    gc.at(level, p).adjoint();
            haar_route.set_coeff(level, p, coeff);
        }
    const auto route1 = haar_route.cells();

    // Route 2: f (x) g minus the mean term minus the diagonal prefix sum.
    std::vector<Mat> route2(static_cast<std::size_t>(f.cell_count()));
    {
        std::vector<Mat> prefix{Mat::Zero(dim, dim)};
        for (int level = 0; level < depth; ++level) {
            const double inv_measure = std::ldexp(1.0, level);
            std::vector<Mat> next(prefix.size() * 2);
            for (std::size_t p = 0; p < prefix.size(); ++p) {
                const Mat term =
                    prefix[p] + inv_measure * (fc.at(level, static_cast<std::int64_t>(p)) *
                                               gc.at(level, static_cast<std::int64_t>(p)).adjoint());
                next[2 * p] = term;
                next[2 * p + 1] = term;
            }
            prefix.swap(next);
        }
        const Mat mean_term = fc.mean * gc.mean.adjoint();
        for (std::int64_t c = 0; c < f.cell_count(); ++c)
            route2[static_cast<std::size_t>(c)] =
                f.value(c) * g.value(c).adjoint() - mean_term -
                prefix[static_cast<std::size_t>(c)];
    }

    double worst = 0.0;
    for (std::size_t c = 0; c < route1.size(); ++c)
        worst = std::max(worst, rel_diff(route1[c], route2[c]));
    if (worst_diff) *worst_diff = worst;

    TraceField out(dim, depth);
    out.cells = route1;
    return out;
}

Complex pairing(const MatrixSymbol& b, const TraceField& f) {
    if (b.dim() != f.dim || b.depth() != f.depth)
        throw std::invalid_argument("pairing: shape mismatch");
    const auto cells = b.cells();
    Complex sum = 0.0;
    for (std::size_t c = 0; c < cells.size(); ++c)
        sum += (cells[c] * f.cells[c]).trace();
    return sum * std::ldexp(1.0, -b.depth());
}

std::vector<double> maximal_profile(const std::vector<double>& cell_profile) {
    const std::size_t cells = cell_profile.size();
    if (cells == 0 || (cells & (cells - 1)) != 0)
        throw std::invalid_argument("maximal: cell count must be a power of two");
    int depth = 0;
    while ((std::size_t{1} << depth) < cells) ++depth;

    // averages[level][pos] of the profile, then per-cell max along ancestors.
    std::vector<std::vector<double>> avg(static_cast<std::size_t>(depth) + 1);
    avg[static_cast<std::size_t>(depth)] = cell_profile;
    for (int level = depth - 1; level >= 0; --level) {
        auto& row = avg[static_cast<std::size_t>(level)];
        const auto& fine = avg[static_cast<std::size_t>(level + 1)];
        row.resize(std::size_t{1} << level);
        for (std::size_t p = 0; p < row.size(); ++p)
            row[p] = 0.5 * (fine[2 * p] + fine[2 * p + 1]);
    }
    std::vector<double> out(cells, 0.0);
    for (std::size_t c = 0; c < cells; ++c) {
        double best = 0.0;
        for (int level = 0; level <= depth; ++level)
            best = std::max(best, avg[static_cast<std::size_t>(level)]
                                     [static_cast<std::size_t>(
                                         ancestor_pos(static_cast<std::int64_t>(c), depth, level))]);
        out[c] = best;
    }
    return out;
}

std::vector<double> maximal(const TraceField& f) {
    std::vector<double> profile(f.cells.size());
    for (std::size_t c = 0; c < f.cells.size(); ++c) profile[c] = trace_norm(f.cells[c]);
    return maximal_profile(profile);
}

std::vector<double> maximal(const VectorField& f) {
    std::vector<double> profile(static_cast<std::size_t>(f.cell_count()));
    for (std::int64_t c = 0; c < f.cell_count(); ++c)
        profile[static_cast<std::size_t>(c)] = f.value(c).norm();
    return maximal_profile(profile);
}

std::vector<double> martingale_maximal(const TraceField& f) {
    const int depth = f.depth;
    std::vector<std::vector<Mat>> avg(static_cast<std::size_t>(depth) + 1);
    avg[static_cast<std::size_t>(depth)] = f.cells;
    for (int level = depth - 1; level >= 0; --level) {
        auto& row = avg[static_cast<std::size_t>(level)];
        const auto& fine = avg[static_cast<std::size_t>(level + 1)];
        row.resize(std::size_t{1} << level);
        for (std::size_t p = 0; p < row.size(); ++p)
            row[p] = 0.5 * (fine[2 * p] + fine[2 * p + 1]);
    }
    std::vector<double> out(f.cells.size(), 0.0);
    for (std::int64_t c = 0; c < f.cell_count(); ++c) {
        double best = 0.0;
        for (int level = 0; level <= depth; ++level)
            best = std::max(best, trace_norm(avg[static_cast<std::size_t>(level)]
                                                [static_cast<std::size_t>(
                                                    ancestor_pos(c, depth, level))]));
        out[static_cast<std::size_t>(c)] = best;
    }
    return out;
}

double trace_norm_l1(const TraceField& f) {
    double sum = 0.0;
    for (const Mat& c : f.cells) sum += trace_norm(c);
    return sum * std::ldexp(1.0, -f.depth);
}

SquareFunctionResult square_function(const MatrixSymbol& phi) {
    if (phi.dim() != 1)
        throw std::invalid_argument("square_function: scalar symbols only");
    const MatrixSymbol s = sweep(phi);
    const auto cells = s.cells();
    SquareFunctionResult out;
    out.cells.resize(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c)
        out.cells[c] = std::sqrt(std::max(0.0, std::real(cells[c](0, 0))));
    double sum = 0.0;
    for (double v : out.cells) sum += v;
    out.l1 = sum * std::ldexp(1.0, -phi.depth());
    return out;
}

}  // namespace opbmo
