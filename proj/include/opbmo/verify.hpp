// The machine-verification suite: every exact identity and constant-1
// inequality in the library, checked over a seeded random ensemble.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace opbmo {

struct VerifyOptions {
    std::uint64_t seed = 0;
    int samples = 200;
    int max_dim = 4;
    int max_depth = 4;
    // Identity tolerance; the five-way and inequality tolerances scale with
    // it (x100 and x10), so defaults are 1e-10 / 1e-8 / 1e-9 and --tol 0 is
    // a negative control that fails on roundoff.
    double tol = 1e-10;

    double tol_identity() const { return tol; }
    double tol_five_way() const { return tol * 100.0; }
    double tol_inequality() const { return tol * 10.0; }
};

struct CheckResult {
    std::string name;
    bool pass = false;
    double max_violation = 0.0;
    int samples = 0;
    double tolerance = 0.0;
};

struct VerifySuiteResult {
    VerifyOptions options;
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

VerifySuiteResult verify_suite(const VerifyOptions& options);

/// Deterministic JSON report (byte-identical for equal inputs and results).
std::string verify_report_json(const VerifySuiteResult& result);

/// One "name: pass/fail (max violation ...)" line per check.
std::string verify_report_text(const VerifySuiteResult& result);

}  // namespace opbmo
