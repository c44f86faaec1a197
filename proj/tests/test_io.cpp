#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "opbmo/json_io.hpp"
#include "opbmo/operators.hpp"
#include "opbmo/verify.hpp"

using namespace opbmo;

TEST_CASE("symbol json round trip") {
    Rng rng(1);
    const MatrixSymbol b = random_symbol(2, 3, rng);
    const std::string text = symbol_to_json(b);
    const MatrixSymbol back = symbol_from_json(text);
    CHECK((b - back).frobenius_l2() <= 1e-14 * b.frobenius_l2());
    CHECK(back.dim() == 2);
    CHECK(back.depth() == 3);
}

TEST_CASE("symbol json: omitted coefficients are zero") {
    const std::string text = R"({"n":2,"depth":2,
        "dc":{"re":[[1,0],[0,1]],"im":[[0,0],[0,0]]},
        "coeffs":[{"level":1,"pos":0,"re":[[2,0],[0,1]],"im":[[0,0],[0,0]]}]})";
    const MatrixSymbol b = symbol_from_json(text);
    CHECK(b.coeff(0, 0).norm() == doctest::Approx(0.0));
    CHECK(b.coeff(1, 1).norm() == doctest::Approx(0.0));
    CHECK(b.coeff(1, 0)(0, 0).real() == doctest::Approx(2.0));
    CHECK(b.dc()(1, 1).real() == doctest::Approx(1.0));
}

TEST_CASE("symbol json: invalid inputs are rejected") {
    // Coefficient level at or beyond the depth.
    const std::string bad_level = R"({"n":1,"depth":2,
        "coeffs":[{"level":2,"pos":0,"re":[[1]],"im":[[0]]}]})";
    CHECK_THROWS_AS(symbol_from_json(bad_level), std::invalid_argument);

    const std::string bad_pos = R"({"n":1,"depth":2,
        "coeffs":[{"level":1,"pos":2,"re":[[1]],"im":[[0]]}]})";
    CHECK_THROWS_AS(symbol_from_json(bad_pos), std::invalid_argument);

    const std::string bad_format = R"({"format":"other/9","n":1,"depth":1})";
    CHECK_THROWS_AS(symbol_from_json(bad_format), std::invalid_argument);

    CHECK_THROWS(symbol_from_json("not json"));
}

TEST_CASE("symbol list parsing") {
    Rng rng(2);
    const MatrixSymbol a = random_symbol(1, 2, rng);
    const MatrixSymbol b = random_symbol(1, 2, rng);
    const std::string text = "[" + symbol_to_json(a) + "," + symbol_to_json(b) + "]";
    const auto list = symbol_list_from_json(text);
    REQUIRE(list.size() == 2);
    CHECK((list[0] - a).frobenius_l2() <= 1e-14);
    CHECK((list[1] - b).frobenius_l2() <= 1e-14);
    CHECK_THROWS_AS(symbol_list_from_json("{}"), std::invalid_argument);
}

TEST_CASE("norm report serialization") {
    NormReport report;
    report.values["sbmo"] = 1.25;
    report.values["carl"] = 2.5;
    NormDiagnostics d;
    d.interval = DyadicIndex{1, 0};
    d.residual = 1e-12;
    report.diagnostics["sbmo"] = d;

    const std::string json_text = norm_report_to_json(report);
    CHECK(json_text.find("\"sbmo\": 1.25") != std::string::npos);
    CHECK(json_text.find("opbmo/1") != std::string::npos);

    const std::string csv = norm_report_to_csv(report);
    CHECK(csv == "carl,sbmo\n2.5,1.25\n");
}

TEST_CASE("assembled operators export as json matrices") {
    Rng rng(5);
    const MatrixSymbol b = random_symbol(2, 2, rng);
    const std::string text = matrix_to_json(assemble_para(b).matrix);
    CHECK(text.find("\"re\"") != std::string::npos);
    CHECK(text.find("\"im\"") != std::string::npos);
    CHECK(text.find("\"rows\": 8") != std::string::npos);  // n * 2^K
    CHECK(text.find("opbmo/1") != std::string::npos);
}

TEST_CASE("verify report json is deterministic") {
    VerifyOptions opt;
    opt.samples = 2;
    opt.max_dim = 2;
    opt.max_depth = 2;
    const VerifySuiteResult a = verify_suite(opt);
    const VerifySuiteResult b = verify_suite(opt);
    CHECK(verify_report_json(a) == verify_report_json(b));
    CHECK(a.all_pass());
}

TEST_CASE("verify negative control: zero tolerance fails on roundoff") {
    VerifyOptions opt;
    opt.samples = 2;
    opt.max_dim = 2;
    opt.max_depth = 2;
    opt.tol = 0.0;
    const VerifySuiteResult res = verify_suite(opt);
    CHECK_FALSE(res.all_pass());
}

TEST_CASE("verify scalar-only baseline passes") {
    VerifyOptions opt;
    opt.samples = 1;
    opt.max_dim = 1;
    opt.max_depth = 2;
    const VerifySuiteResult res = verify_suite(opt);
    CHECK(res.all_pass());
}

TEST_CASE("search and growth csv schemas") {
    SearchConfig cfg;
    cfg.numerator = "carl";
    cfg.denominator = "sbmo";
    cfg.dim = 2;
    cfg.depth = 2;
    cfg.restarts = 1;
    cfg.steps = 3;
    const SearchResult res = ratio_search(cfg);
    const std::string csv = search_result_to_csv(cfg, res);
    CHECK(csv.find("n,depth,seed,numerator,denominator,ratio,fit_log,fit_log2,residual") == 0);

    GrowthConfig gcfg;
    gcfg.numerator = "carl";
    gcfg.denominator = "sbmo";
    gcfg.dims = {1, 2};
    gcfg.depth = 2;
    gcfg.restarts = 1;
    gcfg.steps = 2;
    const GrowthResult gres = growth_curve(gcfg);
    const std::string gcsv = growth_result_to_csv(gcfg, gres);
    CHECK(gcsv.find("n,depth,seed,") == 0);
    // Header plus one row per dimension.
    CHECK(std::count(gcsv.begin(), gcsv.end(), '\n') == 3);

    const std::string sjson = search_result_to_json(cfg, res);
    CHECK(sjson.find("\"best_symbol\"") != std::string::npos);
}
