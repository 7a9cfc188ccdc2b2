#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "exact/cli/expr.hpp"
#include "exact/errors.hpp"
#include "exact/rational.hpp"

namespace exact::cli {

class ParseError : public RejectedInput {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Precedence, tightest first: ^ (right associative), unary -, * /, + -.
/// Accepts ζ for z, · for *, − for -, and ′ for '.
Expr parse(std::string_view input);

struct Equation {
    Expr lhs;
    Expr rhs;
};

/// "lhs = rhs", e.g. "z^2*F' - F = -z".
Equation parse_equation(std::string_view input);

/// Value of a variable-free expression, nullopt otherwise.
std::optional<Rational> constant_value(const Expr& e);

} // namespace exact::cli
