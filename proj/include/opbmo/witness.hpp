// Counterexample families with closed-form norm values, a seeded random
// ratio-maximization search, and dimensional growth tables.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opbmo/symbol.hpp"

namespace opbmo {

enum class FamilyKind { rank_one_rademacher, carleson_diagonal, diagonal_scalar };

FamilyKind family_kind_from_string(const std::string& name);
std::string to_string(FamilyKind kind);

struct FamilySpec {
    FamilyKind kind = FamilyKind::rank_one_rademacher;
    int N = 0;      // rank_one_rademacher block count
    int depth = 0;  // Haar depth
    int dim = 0;    // ambient dimension (rank_one: >= N+1; 0 picks N+1)
    std::vector<MatrixSymbol> scalars;  // diagonal_scalar entries (dim 1 each)
};

struct FamilyResult {
    MatrixSymbol symbol;
    std::map<std::string, double> expected;  // closed-form norm values
};

/// rank_one_rademacher: B = sum_{k=1..N} (h x e_k) r_k with h = e_{N+1};
///   sbmo(B) = 1, sbmo(B*) = sqrt(N), wbmo(B*) = 1.
/// carleson_diagonal: B = sum_I h_I |I|^{1/2} e_I (x) e_I with n = 2^K - 1;
///   carl = sqrt(K), every cell has operator norm 1.
/// diagonal_scalar: B(t) = sum_k b_k(t) e_k (x) e_k from user scalars.
FamilyResult family(const FamilySpec& spec);

struct SearchConfig {
    std::string numerator;
    std::string denominator;
    int dim = 2;
    int depth = 3;
    int restarts = 8;
    int steps = 100;
    double step_size = 0.5;
    double step_decay = 0.97;
    std::uint64_t seed = 0;
    std::optional<MatrixSymbol> seed_symbol;  // all restarts start here if set
};

struct SearchResult {
    MatrixSymbol best;
    double ratio = 0.0;
    std::vector<double> trace;  // best-so-far per step (monotone)
};

/// Maximize numerator/denominator over symbols by seeded restarts plus
/// single-coefficient Gaussian bumps with multiplicative step decay.
/// Deterministic for a fixed seed; never below the seed symbol's ratio.
SearchResult ratio_search(const SearchConfig& cfg);

struct GrowthConfig {
    std::string numerator;
    std::string denominator;
    std::vector<int> dims;
    int depth = 3;
    int restarts = 4;
    int steps = 60;
    std::uint64_t seed = 0;
    std::optional<FamilyKind> family_kind;  // evaluate a family instead of searching
};

struct GrowthRow {
    int dim = 0;
    int depth = 0;
    std::uint64_t seed = 0;
    double ratio = 0.0;
    double fit_log = 0.0;   // a * log(dim+1) prediction
    double fit_log2 = 0.0;  // b * log^2(dim+1) prediction
    double residual = 0.0;  // ratio - fit_log
};

struct GrowthResult {
    std::vector<GrowthRow> rows;
    double coef_log = 0.0;
    double coef_log2 = 0.0;
};

GrowthResult growth_curve(const GrowthConfig& cfg);

}  // namespace opbmo
