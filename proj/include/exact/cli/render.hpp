#pragma once

#include <cstddef>
#include <string>

#include <json.hpp>

#include "exact/cli/evaluate.hpp"

namespace exact::cli {

/// Ascending terms with an O(·) tail, e.g. "1 + z + z^2 + O(z^3)"; "0" for zero.
std::string render_text(const Value& v, std::size_t order);
std::string render_text(const SeriesU& s, std::size_t order, const std::string& var = "z");
std::string render_text(const SeriesM& s, std::size_t order);

/// Exact coefficients as {"num", "den"} decimal strings.
nlohmann::json render_json(const Value& v, std::size_t order);

} // namespace exact::cli
