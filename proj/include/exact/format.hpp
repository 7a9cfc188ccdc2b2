#pragma once

#include <string>

#include "exact/rational.hpp"

namespace exact::format {

/// "", "t", "t^2", "t^(1/2)", "t^(-1)" for exponents 0, 1, 2, 1/2, -1.
std::string power(const std::string& var, const Rational& exponent);

/// Appends c·monomial to a running sum, choosing " + " or " - " and dropping
/// a unit coefficient. An empty monomial denotes the constant term.
void append_term(std::string& out, const Rational& c, const std::string& monomial);

} // namespace exact::format
