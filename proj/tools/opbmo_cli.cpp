// Command-line surface: verification suite, norm computation, witness
// families, ratio search, and growth tables.
//
// Exit codes: 0 success (verify: all checks passed), 1 computation failure
// or failed verification, 2 usage errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "opbmo/json_io.hpp"
#include "opbmo/norms.hpp"
#include "opbmo/verify.hpp"
#include "opbmo/witness.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << text;
}

bool wants_csv(const std::string& out_path) {
    return out_path.size() >= 4 && out_path.substr(out_path.size() - 4) == ".csv";
}

opbmo::NormReport selected_norms(const opbmo::MatrixSymbol& b, const std::string& which) {
    if (which == "all") return opbmo::all_norms(b);
    opbmo::NormReport report;
    report.values[which] = opbmo::eval_norm(which, b);
    return report;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dyadic operator-valued BMO toolkit"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run the identity and inequality suite");
    opbmo::VerifyOptions vopt;
    std::string verify_out;
    verify->add_option("--seed", vopt.seed, "ensemble seed");
    verify->add_option("--samples", vopt.samples, "ensemble size");
    verify->add_option("--dim", vopt.max_dim, "largest matrix dimension");
    verify->add_option("--depth", vopt.max_depth, "largest Haar depth");
    verify->add_option("--tol", vopt.tol, "identity tolerance (default 1e-10)");
    verify->add_option("--out", verify_out, "write the JSON report here");

    // norms
    auto* norms = app.add_subcommand("norms", "compute BMO-type norms of a symbol");
    std::string norms_in, norms_out, norm_id = "all";
    double norms_tol = 1e-8;
    norms->add_option("--in", norms_in, "symbol JSON file")->required();
    norms->add_option("--norm", norm_id,
                      "all|bmo_norm|sbmo|wbmo|carl|para|spara|so|mult");
    norms->add_option("--tol", norms_tol,
                      "fail (exit 1) if a cross-check residual exceeds this");
    norms->add_option("--out", norms_out, "output file (.csv selects CSV)");

    // family
    auto* fam = app.add_subcommand("family", "emit a witness family symbol");
    std::string fam_kind = "rank_one_rademacher", fam_in, fam_out;
    int fam_N = 0, fam_depth = 0, fam_dim = 0;
    fam->add_option("--kind", fam_kind, "rank_one_rademacher|carleson_diagonal|diagonal_scalar");
    fam->add_option("--N", fam_N, "rank_one_rademacher block count");
    fam->add_option("--depth", fam_depth, "Haar depth");
    fam->add_option("--dim", fam_dim, "ambient dimension (optional)");
    fam->add_option("--in", fam_in, "JSON array of scalar symbols (diagonal_scalar)");
    fam->add_option("--out", fam_out, "output file");

    // search
    auto* search = app.add_subcommand("search", "maximize a norm ratio over symbols");
    opbmo::SearchConfig scfg;
    std::string search_in, search_out;
    search->add_option("--numerator", scfg.numerator,
                       "norm id; sweep_<id> and <id>_sq compose")->required();
    search->add_option("--denominator", scfg.denominator,
                       "norm id; sweep_<id> and <id>_sq compose")->required();
    search->add_option("--dim", scfg.dim, "matrix dimension");
    search->add_option("--depth", scfg.depth, "Haar depth");
    search->add_option("--seed", scfg.seed, "search seed");
    search->add_option("--restarts", scfg.restarts, "restart count");
    search->add_option("--steps", scfg.steps, "steps per restart");
    search->add_option("--in", search_in, "start symbol JSON (optional)");
    search->add_option("--out", search_out, "output file (.csv selects CSV)");

    // growth
    auto* growth = app.add_subcommand("growth", "ratio-versus-dimension table");
    opbmo::GrowthConfig gcfg;
    std::string growth_kind, growth_out;
    growth->add_option("--numerator", gcfg.numerator,
                       "norm id; sweep_<id> and <id>_sq compose")->required();
    growth->add_option("--denominator", gcfg.denominator,
                       "norm id; sweep_<id> and <id>_sq compose")->required();
    growth->add_option("--dim", gcfg.dims, "dimension list (repeatable)")->required();
    growth->add_option("--depth", gcfg.depth, "Haar depth");
    growth->add_option("--seed", gcfg.seed, "search seed");
    growth->add_option("--restarts", gcfg.restarts, "restart count");
    growth->add_option("--steps", gcfg.steps, "steps per restart");
    growth->add_option("--kind", growth_kind, "evaluate this family instead of searching");
    growth->add_option("--out", growth_out, "output CSV file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*verify) {
            const opbmo::VerifySuiteResult result = opbmo::verify_suite(vopt);
            write_output(verify_out, opbmo::verify_report_json(result));
            std::cerr << opbmo::verify_report_text(result);
            return result.all_pass() ? 0 : 1;
        }
        if (*norms) {
            if (norm_id != "all" && !opbmo::valid_norm_id(norm_id))
                throw CLI::ValidationError("--norm", "unknown norm id: " + norm_id);
            const opbmo::MatrixSymbol b = opbmo::symbol_from_json(read_file(norms_in));
            const opbmo::NormReport report = selected_norms(b, norm_id);
            write_output(norms_out, wants_csv(norms_out)
                                        ? opbmo::norm_report_to_csv(report)
                                        : opbmo::norm_report_to_json(report));
            for (const auto& [name, diag] : report.diagnostics)
                if (diag.residual > norms_tol) {
                    std::cerr << "cross-check residual for " << name
                              << " exceeds tolerance\n";
                    return 1;
                }
            return 0;
        }
        if (*fam) {
            opbmo::FamilySpec spec;
            spec.kind = opbmo::family_kind_from_string(fam_kind);
            spec.N = fam_N;
            spec.depth = fam_depth;
            spec.dim = fam_dim;
            if (!fam_in.empty())
                spec.scalars = opbmo::symbol_list_from_json(read_file(fam_in));
            const opbmo::FamilyResult result = opbmo::family(spec);
            write_output(fam_out, opbmo::symbol_to_json(result.symbol));
            for (const auto& [name, value] : result.expected)
                std::cerr << "expected " << name << " = " << value << "\n";
            return 0;
        }
        if (*search) {
            if (!search_in.empty())
                scfg.seed_symbol = opbmo::symbol_from_json(read_file(search_in));
            const opbmo::SearchResult result = opbmo::ratio_search(scfg);
            write_output(search_out, wants_csv(search_out)
                                         ? opbmo::search_result_to_csv(scfg, result)
                                         : opbmo::search_result_to_json(scfg, result));
            return 0;
        }
        if (*growth) {
            if (!growth_kind.empty())
                gcfg.family_kind = opbmo::family_kind_from_string(growth_kind);
            const opbmo::GrowthResult result = opbmo::growth_curve(gcfg);
            write_output(growth_out, opbmo::growth_result_to_csv(gcfg, result));
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
