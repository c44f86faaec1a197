#include "opbmo/verify.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "opbmo/hardy.hpp"
#include "opbmo/linalg.hpp"
#include "opbmo/norms.hpp"
#include "opbmo/operators.hpp"
#include "opbmo/reference.hpp"
#include "opbmo/sweep.hpp"

namespace opbmo {

namespace {

enum TolClass { kIdentity, kFiveWay, kInequality };

struct CheckSpec {
    const char* name;
    TolClass tol_class;
};

// Order is fixed; reports list checks in this order.
constexpr CheckSpec kChecks[] = {
    {"haar_roundtrip", kIdentity},
    {"parseval", kIdentity},
    {"moments_projection", kIdentity},
    {"expectation_averaging", kIdentity},
    {"expectation_composition", kIdentity},
    {"adjoint_transform_commute", kIdentity},
    {"para_adjoint_is_delta", kIdentity},
    {"mult_two_builds", kIdentity},
    {"mult_form_identity", kIdentity},
    {"bisweep_identity", kIdentity},
    {"sbmo_five_way", kFiveWay},
    {"circledast_two_expansions", kIdentity},
    {"circledast_pairing_duality", kIdentity},
    {"circledast_ek_multiplicative", kIdentity},
    {"martingale_average_exact", kIdentity},
    {"factor_sweep_roundtrip", kIdentity},
    {"sweep_polarization", kIdentity},
    {"sweep_sign_invariance", kIdentity},
    {"matrix_free_vs_dense", kIdentity},
    {"power_norm_vs_svd", kInequality},
    {"op_norm_unitary_invariance", kInequality},
    {"norm_homogeneity", kIdentity},
    {"norm_mod_constants", kIdentity},
    {"norm_sign_invariance", kIdentity},
    {"scalar_bmo_p2_matches_bmo", kIdentity},
    {"vec_bmo_matches_sbmo", kFiveWay},
    {"wbmo_le_sbmo", kInequality},
    {"sbmo_le_bmo_norm", kInequality},
    {"sbmo_le_mult", kInequality},
    {"mult_le_spara", kInequality},
    {"sbmo_le_carl", kInequality},
    {"para_le_scalar_para", kInequality},
    {"diag_le_para_product", kInequality},
    {"para_product_le_mult_plus_diag", kInequality},
    {"sbmo_sq_le_sweep_sup", kInequality},
    {"bilinear_sweep_pointwise", kInequality},
    {"maximal_dual_pointwise", kInequality},
    {"maximal_dual_l1", kInequality},
    {"scalar_bmo_p_monotone", kInequality},
};

constexpr int kCheckCount = static_cast<int>(sizeof(kChecks) / sizeof(kChecks[0]));

int check_index(const char* name) {
    for (int i = 0; i < kCheckCount; ++i)
        if (std::string_view(kChecks[i].name) == name) return i;
    return -1;
}

double rel_field_diff(const VectorField& a, const VectorField& b) {
    double diff = 0.0, na = 0.0, nb = 0.0;
    for (std::int64_t c = 0; c < a.cell_count(); ++c) {
        diff += (a.value(c) - b.value(c)).squaredNorm();
        na += a.value(c).squaredNorm();
        nb += b.value(c).squaredNorm();
    }
    return std::sqrt(diff) / std::max({1.0, std::sqrt(na), std::sqrt(nb)});
}

double rel_symbol_diff(const MatrixSymbol& a, const MatrixSymbol& b) {
    return (a - b).frobenius_l2() / std::max({1.0, a.frobenius_l2(), b.frobenius_l2()});
}

// Slack violation: positive when lhs exceeds rhs, relative to scale.
double slack(double lhs, double rhs) {
    return (lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

// All per-sample violations, in kChecks order.
void run_sample(const VerifyOptions& opt, int sample, std::array<double, kCheckCount>& v) {
    v.fill(0.0);
    auto set = [&](const char* name, double value) {
        v[static_cast<std::size_t>(check_index(name))] =
            std::max(v[static_cast<std::size_t>(check_index(name))], value);
    };

    Rng shape = Rng::stream(opt.seed, 1, sample);
    const int dim = 1 + static_cast<int>(shape.next_below(opt.max_dim));
    const int depth = 1 + static_cast<int>(shape.next_below(opt.max_depth));

    Rng rb = Rng::stream(opt.seed, 2, sample);
    Rng ru = Rng::stream(opt.seed, 3, sample);
    Rng rv = Rng::stream(opt.seed, 4, sample);
    Rng rf = Rng::stream(opt.seed, 5, sample);
    Rng rg = Rng::stream(opt.seed, 6, sample);
    Rng rmisc = Rng::stream(opt.seed, 7, sample);

    const MatrixSymbol b = random_symbol(dim, depth, rb);
    const MatrixSymbol u = random_symbol(dim, depth, ru);
    const MatrixSymbol w = random_symbol(dim, depth, rv);
    const VectorField f = random_field(dim, depth, rf);
    const VectorField g = random_field(dim, depth, rg);
    const VectorField f0 = zero_mean_part(f);
    const VectorField g0 = zero_mean_part(g);
    const MatrixSymbol badj = b.adjoint();

    // --- core identities ---
    {
        const auto cells = b.cells();
        const MatrixSymbol round = MatrixSymbol::from_cells(cells);
        set("haar_roundtrip", rel_symbol_diff(b, round));

        double cell_sq = 0.0;
        for (const Mat& c : cells) cell_sq += c.squaredNorm();
        cell_sq *= std::ldexp(1.0, -depth);
        const double coeff_sq = b.frobenius_l2() * b.frobenius_l2();
        set("parseval", std::abs(cell_sq - coeff_sq) / std::max(1.0, cell_sq));

        double worst = 0.0;
        for (int level = 0; level <= depth; ++level)
            for (std::int64_t p = 0; p < (std::int64_t{1} << level); ++p) {
                const DyadicIndex idx{level, p};
                const Moments m = moments(b, idx);
                const auto proj_cells = m.projection.cells();
                auto [first, last] = cell_range(idx, depth);
                double diff = 0.0;
                for (std::int64_t c = 0; c < b.cell_count(); ++c) {
                    const Mat expected =
                        (c >= first && c < last)
                            ? Mat((cells[static_cast<std::size_t>(c)] - m.mean))
                            : Mat(Mat::Zero(dim, dim));
                    diff = std::max(
                        diff, (proj_cells[static_cast<std::size_t>(c)] - expected).norm());
                }
                worst = std::max(worst, diff / std::max(1.0, b.frobenius_l2()));
            }
        set("moments_projection", worst);
    }
    {
        const int k = static_cast<int>(rmisc.next_below(depth + 1));
        const MatrixSymbol ek = expectation(b, k);
        const auto ek_cells = ek.cells();
        const auto cells = b.cells();
        // Block averages over level-k cells.
        double worst = 0.0;
        const std::int64_t block = std::int64_t{1} << (depth - k);
        for (std::int64_t p = 0; p < (std::int64_t{1} << k); ++p) {
            Mat mean = Mat::Zero(dim, dim);
            for (std::int64_t c = p * block; c < (p + 1) * block; ++c)
                mean += cells[static_cast<std::size_t>(c)];
            mean /= static_cast<double>(block);
            for (std::int64_t c = p * block; c < (p + 1) * block; ++c)
                worst = std::max(worst, (ek_cells[static_cast<std::size_t>(c)] - mean).norm());
        }
        set("expectation_averaging", worst / std::max(1.0, b.frobenius_l2()));

        const int j = static_cast<int>(rmisc.next_below(depth + 1));
        set("expectation_composition",
            rel_symbol_diff(expectation(expectation(b, j), k), expectation(b, std::min(j, k))));
    }
    {
        Rng rs = Rng::stream(opt.seed, 8, sample);
        const SignPattern sigma = SignPattern::random(depth, rs);
        set("adjoint_transform_commute",
            rel_symbol_diff(martingale_transform(b, sigma).adjoint(),
                            martingale_transform(badj, sigma)));
        set("sweep_sign_invariance",
            rel_symbol_diff(sweep(martingale_transform(b, sigma)), sweep(b)));
    }

    // --- operator identities (dense assembly) ---
    const AssembledOperator para_b = assemble_para(b);
    const AssembledOperator delta_b = assemble_delta(b);
    const AssembledOperator para_badj = assemble_para(badj);
    const AssembledOperator delta_badj = assemble_delta(badj);
    const AssembledOperator mult_b = assemble_mult(b);
    const AssembledOperator para_u = assemble_para(u);
    const AssembledOperator para_w = assemble_para(w);
    const AssembledOperator diag_uw = assemble_diag(u, w);
    const std::int64_t dzm = basis_dim(dim, depth, Subspace::zero_mean);

    set("para_adjoint_is_delta", rel_diff(para_b.matrix.adjoint(), delta_badj.matrix));
    set("mult_two_builds",
        rel_diff(mult_b.matrix, (para_b.matrix + delta_b.matrix).rightCols(dzm)));

    {
        // Lambda_B f = B f - sum_I (m_I B)(f_I) h_I on zero-mean f.
        const VectorField lhs = apply_matrix_free(OperatorKind::mult, b, f0);
        const auto avg = symbol_averages(b);
        const FieldCoeffs fc = analyze_field(f0);
        VectorField rhs = pointwise_apply(b, f0);
        for (int level = 0; level < depth; ++level)
            for (std::int64_t p = 0; p < (std::int64_t{1} << level); ++p) {
                const DyadicIndex idx{level, p};
                const Vec term =
                    avg[static_cast<std::size_t>(level)][static_cast<std::size_t>(p)] *
                    fc.at(level, p);
                auto [first, last] = cell_range(idx, depth);
                for (std::int64_t c = first; c < last; ++c)
                    rhs.value(c) -= haar_value(idx, c, depth) * term;
            }
        set("mult_form_identity", rel_field_diff(lhs, rhs));
    }
    {
        // pi_U^* pi_W = Lambda_{Delta[U*,W]} + D_{U*,W} on zero-mean inputs.
        const MatrixSymbol bil = bilinear_sweep(u, w);
        const AssembledOperator mult_bil = assemble_mult(bil);
        Mat rhs = mult_bil.matrix;
        rhs.bottomRows(dzm) += diag_uw.matrix;
        const Mat lhs = (para_u.matrix.adjoint() * para_w.matrix).rightCols(dzm);
        set("bisweep_identity", rel_diff(lhs, rhs));
    }

    // --- norms ---
    const SbmoDetail sd = sbmo_detail(b);
    set("sbmo_five_way", sd.disagreement);
    const double sbmo_b = sd.routes[1];
    const double bmo = bmo_norm(b);
    const double carl = bmo_carl(b);
    const WbmoResult wb = wbmo_detail(b, 8, opt.seed);
    const double mult_norm = mult_b.norm();
    const double para_norm = para_b.norm();
    const double spara = para_norm + para_badj.norm();

    set("wbmo_le_sbmo", slack(wb.value, sbmo_b));
    set("sbmo_le_bmo_norm", slack(sbmo_b, bmo));
    set("sbmo_le_mult", slack(sbmo_b, mult_norm));
    set("mult_le_spara", slack(mult_norm, spara));
    set("sbmo_le_carl", slack(sbmo_b, carl));
    set("para_le_scalar_para",
        slack(para_norm, assemble_para(coefficient_norm_symbol(b)).norm()));

    {
        const Mat prod = para_u.matrix.adjoint() * para_w.matrix;
        const double prod_norm = op_norm(Mat(prod.rightCols(dzm)));
        const double diag_norm = diag_uw.norm();
        const double mult_bil_norm = assemble_mult(bilinear_sweep(u, w)).norm();
        set("diag_le_para_product", slack(diag_norm, prod_norm));
        set("para_product_le_mult_plus_diag", slack(prod_norm, mult_bil_norm + diag_norm));
    }

    set("sbmo_sq_le_sweep_sup", slack(sbmo_b * sbmo_b, sup_op_norm(sweep(b))));

    {
        const MatrixSymbol bil = bilinear_sweep(u, w);
        const auto bc = bil.cells();
        const auto su = sweep(u).cells();
        const auto sw = sweep(w).cells();
        double worst = 0.0;
        for (std::size_t c = 0; c < bc.size(); ++c)
            worst = std::max(worst, slack(op_norm_svd(bc[c]),
                                          std::sqrt(op_norm_svd(su[c]) * op_norm_svd(sw[c]))));
        set("bilinear_sweep_pointwise", worst);
    }

    // --- norm invariances ---
    {
        const Complex scale(1.7, -0.6);
        const MatrixSymbol scaled = scale * b;
        double worst = std::abs(sbmo_value(scaled) - std::abs(scale) * sbmo_b) /
                       std::max(1.0, sbmo_b);
        worst = std::max(worst, std::abs(bmo_carl(scaled) - std::abs(scale) * carl) /
                                    std::max(1.0, carl));
        set("norm_homogeneity", worst);

        MatrixSymbol shifted = b;
        shifted.set_dc(b.dc() + random_gaussian_matrix(dim, dim, rmisc));
        double worst2 = std::abs(sbmo_value(shifted) - sbmo_b) / std::max(1.0, sbmo_b);
        worst2 = std::max(worst2, std::abs(bmo_norm(shifted) - bmo) / std::max(1.0, bmo));
        worst2 = std::max(worst2, std::abs(bmo_carl(shifted) - carl) / std::max(1.0, carl));
        set("norm_mod_constants", worst2);

        Rng rs2 = Rng::stream(opt.seed, 9, sample);
        const SignPattern sigma = SignPattern::random(depth, rs2);
        const MatrixSymbol flipped = martingale_transform(b, sigma);
        double worst3 = std::abs(sbmo_value(flipped) - sbmo_b) / std::max(1.0, sbmo_b);
        worst3 = std::max(worst3, std::abs(bmo_carl(flipped) - carl) / std::max(1.0, carl));
        worst3 = std::max(worst3, std::abs(wbmo_detail(flipped, 8, opt.seed).value - wb.value) /
                                      std::max(1.0, wb.value));
        set("norm_sign_invariance", worst3);
    }
    {
        // sup_e vec_bmo(B_e) attained at the sbmo eigenvector.
        const VecNorms vn = vec_norms(column_field(b, sd.attaining_e));
        set("vec_bmo_matches_sbmo", std::abs(vn.bmo - sbmo_b) / std::max(1.0, sbmo_b));
    }

    // --- hardy ---
    {
        double worst = 0.0;
        const TraceField prod = circledast_checked(f, g, &worst);
        set("circledast_two_expansions", worst);

        const TraceField prod0 = circledast_checked(f0, g, nullptr);
        const Complex lhs = pairing(b, prod0);
        const Complex rhs = l2_inner(apply_matrix_free(OperatorKind::mult, b, f0), g);
        set("circledast_pairing_duality",
            std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));

        const int k = static_cast<int>(rmisc.next_below(depth + 1));
        // E_k of the product vs product of the E_k's, on cells.
        const MatrixSymbol prod_sym = MatrixSymbol::from_cells(prod.cells);
        const auto lhs_cells = expectation(prod_sym, k).cells();
        FieldCoeffs fk = analyze_field(f);
        FieldCoeffs gk = analyze_field(g);
        for (int level = k; level < depth; ++level)
            for (auto& c : fk.coeffs[static_cast<std::size_t>(level)]) c.setZero();
        for (int level = k; level < depth; ++level)
            for (auto& c : gk.coeffs[static_cast<std::size_t>(level)]) c.setZero();
        const TraceField rhs_field =
            circledast_checked(synthesize_field(fk), synthesize_field(gk), nullptr);
        double worst_ek = 0.0;
        for (std::size_t c = 0; c < rhs_field.cells.size(); ++c)
            worst_ek = std::max(worst_ek, rel_diff(lhs_cells[c], rhs_field.cells[c]));
        set("circledast_ek_multiplicative", worst_ek);
    }
    {
        // Pointwise and L1 bounds from the maximal-function estimate
        // (zero-mean fields; the mean term vanishes).
        const TraceField prod = circledast_checked(f0, g0, nullptr);
        const auto lhs = martingale_maximal(prod);
        const auto fstar = maximal(f0);
        const auto gstar = maximal(g0);
        const FieldCoeffs fc = analyze_field(f0);
        const FieldCoeffs gc = analyze_field(g0);
        std::vector<double> prefix(static_cast<std::size_t>(f0.cell_count()), 0.0);
        for (std::int64_t c = 0; c < f0.cell_count(); ++c)
            for (int level = 0; level < depth; ++level) {
                const std::int64_t p = ancestor_pos(c, depth, level);
                prefix[static_cast<std::size_t>(c)] +=
                    std::ldexp(1.0, level) * fc.at(level, p).norm() * gc.at(level, p).norm();
            }
        double worst = 0.0;
        double l1 = 0.0;
        for (std::size_t c = 0; c < lhs.size(); ++c) {
            worst = std::max(worst, slack(lhs[c], fstar[c] * gstar[c] + prefix[c]));
            l1 += lhs[c];
        }
        set("maximal_dual_pointwise", worst);
        l1 *= std::ldexp(1.0, -depth);

        double fstar2 = 0.0, gstar2 = 0.0;
        for (std::size_t c = 0; c < fstar.size(); ++c) {
            fstar2 += fstar[c] * fstar[c];
            gstar2 += gstar[c] * gstar[c];
        }
        fstar2 = std::sqrt(fstar2 * std::ldexp(1.0, -depth));
        gstar2 = std::sqrt(gstar2 * std::ldexp(1.0, -depth));
        set("maximal_dual_l1", slack(l1, fstar2 * gstar2 + f0.l2_norm() * g0.l2_norm()));
    }

    // --- sweep representations ---
    {
        const MartingaleAverage exact = martingale_average_sweep_exact(b);
        set("martingale_average_exact", rel_symbol_diff(exact.average, sweep(b)));

        const int k = static_cast<int>(rmisc.next_below(depth));
        std::vector<Mat> fcells(static_cast<std::size_t>(b.cell_count()));
        for (std::int64_t p = 0; p < (std::int64_t{1} << k); ++p) {
            const Mat x = random_gaussian_matrix(dim, dim, rmisc);
            const Mat block = x.adjoint() * x;
            auto [first, last] = cell_range({k, p}, depth);
            for (std::int64_t c = first; c < last; ++c)
                fcells[static_cast<std::size_t>(c)] = block;
        }
        const MatrixSymbol fsym = MatrixSymbol::from_cells(fcells);
        set("factor_sweep_roundtrip", rel_symbol_diff(sweep(factor_sweep(fsym, k)), fsym));

        // Sesquilinear polarization from four unary sweeps.
        const Complex im(0.0, 1.0);
        const MatrixSymbol pol =
            0.25 * (sweep(u + w) - sweep(u - w)) -
            (0.25 * im) * (sweep(u + im * w) - sweep(u - im * w));
        set("sweep_polarization", rel_symbol_diff(pol, bilinear_sweep(u, w)));
    }

    // --- oracle equivalences ---
    {
        const VectorField dense_out = para_b.apply(f);
        const VectorField fast_out = apply_matrix_free(OperatorKind::para, b, f);
        double worst = rel_field_diff(dense_out, fast_out);
        worst = std::max(worst, rel_field_diff(delta_b.apply(g),
                                               apply_matrix_free(OperatorKind::delta, b, g)));
        worst = std::max(worst, rel_field_diff(mult_b.apply(f0),
                                               apply_matrix_free(OperatorKind::mult, b, f0)));
        worst = std::max(worst,
                         rel_field_diff(diag_uw.apply(g0), apply_matrix_free_diag(u, w, g0)));
        set("matrix_free_vs_dense", worst);

        Rng rm = Rng::stream(opt.seed, 10, sample);
        const Mat m = random_gaussian_matrix(16, 16, rm);
        const double svd = op_norm_svd(m);
        const double power = op_norm_power(m).value;
        set("power_norm_vs_svd", std::abs(power - svd) / std::max(svd, 1e-300));

        const Mat uu = random_unitary(16, rm);
        const Mat vv = random_unitary(16, rm);
        set("op_norm_unitary_invariance",
            std::abs(op_norm_svd(uu * m * vv) - svd) / std::max(svd, 1e-300));
    }

    // --- scalar norms ---
    {
        Rng rs3 = Rng::stream(opt.seed, 11, sample);
        const MatrixSymbol phi = random_symbol(1, depth, rs3);
        const double p1 = scalar_bmo_p(phi, 1.0);
        const double p2 = scalar_bmo_p(phi, 2.0);
        const double p4 = scalar_bmo_p(phi, 4.0);
        set("scalar_bmo_p_monotone", std::max(slack(p1, p2), slack(p2, p4)));
        set("scalar_bmo_p2_matches_bmo", std::abs(p2 - bmo_norm(phi)) / std::max(1.0, p2));
    }
}

}  // namespace

VerifySuiteResult verify_suite(const VerifyOptions& options) {
    if (options.samples < 1) throw std::invalid_argument("verify: samples >= 1 required");
    if (options.max_dim < 1 || options.max_depth < 1)
        throw std::invalid_argument("verify: dimension and depth bounds must be >= 1");

    std::vector<std::array<double, kCheckCount>> per_sample(
        static_cast<std::size_t>(options.samples));

#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < options.samples; ++s)
        run_sample(options, s, per_sample[static_cast<std::size_t>(s)]);

    VerifySuiteResult result;
    result.options = options;
    for (int i = 0; i < kCheckCount; ++i) {
        CheckResult check;
        check.name = kChecks[i].name;
        check.samples = options.samples;
        switch (kChecks[i].tol_class) {
            case kIdentity: check.tolerance = options.tol_identity(); break;
            case kFiveWay: check.tolerance = options.tol_five_way(); break;
            case kInequality: check.tolerance = options.tol_inequality(); break;
        }
        double worst = 0.0;
        for (const auto& row : per_sample)
            worst = std::max(worst, row[static_cast<std::size_t>(i)]);
        check.max_violation = worst;
        check.pass = worst <= check.tolerance;
        result.checks.push_back(check);
    }
    return result;
}

std::string verify_report_json(const VerifySuiteResult& result) {
    nlohmann::json j;
    j["format"] = "opbmo/1";
    j["seed"] = result.options.seed;
    j["samples"] = result.options.samples;
    j["max_dim"] = result.options.max_dim;
    j["max_depth"] = result.options.max_depth;
    j["tol"] = result.options.tol;
    j["all_pass"] = result.all_pass();
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : result.checks) {
        checks.push_back({{"name", c.name},
                          {"status", c.pass ? "pass" : "fail"},
                          {"max_violation", c.max_violation},
                          {"samples", c.samples},
                          {"tolerance", c.tolerance}});
    }
    j["checks"] = checks;
    return j.dump(2);
}

std::string verify_report_text(const VerifySuiteResult& result) {
    std::string out;
    char line[160];
    for (const auto& c : result.checks) {
        std::snprintf(line, sizeof line, "%-32s %s  max_violation=%.3e  tol=%.1e\n",
                      c.name.c_str(), c.pass ? "pass" : "FAIL", c.max_violation,
                      c.tolerance);
        out += line;
    }
    std::snprintf(line, sizeof line, "%d/%zu checks passed\n",
                  static_cast<int>(std::count_if(result.checks.begin(), result.checks.end(),
                                                 [](const CheckResult& c) { return c.pass; })),
                  result.checks.size());
    out += line;
    return out;
}

}  // namespace opbmo
