// JSON and CSV serialization for symbols, norm reports, and experiment tables.
//
// Symbol schema ("format":"opbmo/1"):
//   {"n":int, "depth":int, "dc":{"re":[[..]],"im":[[..]]},
//    "coeffs":[{"level":int,"pos":int,"re":[[..]],"im":[[..]]}]}
// Omitted coefficients are zero; a coefficient with level >= depth is
// rejected. Writers always emit the format field; readers accept its absence.

#pragma once

#include <string>
#include <vector>

#include "opbmo/norms.hpp"
#include "opbmo/symbol.hpp"
#include "opbmo/witness.hpp"

namespace opbmo {

std::string symbol_to_json(const MatrixSymbol& b);
MatrixSymbol symbol_from_json(const std::string& text);

std::vector<MatrixSymbol> symbol_list_from_json(const std::string& text);

std::string norm_report_to_json(const NormReport& report);
std::string norm_report_to_csv(const NormReport& report);

std::string matrix_to_json(const Mat& m);

std::string search_result_to_json(const SearchConfig& cfg, const SearchResult& result);
std::string search_result_to_csv(const SearchConfig& cfg, const SearchResult& result);
std::string growth_result_to_csv(const GrowthConfig& cfg, const GrowthResult& result);

}  // namespace opbmo
