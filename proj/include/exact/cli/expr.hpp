#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace exact::cli {

/// Expression tree produced by the parser. Literals are nonnegative
/// integers; fractions are division nodes, so render/parse is a fixpoint.
struct Expr {
    enum class Kind {
        integer,   // text: decimal digits
        variable,  // text: z, x, y, t
        generator, // text: geom, exp, factorial
        unknown,   // text: F or F'  (ODE sides only)
        negate,
        add,
        sub,
        mul,
        div,
        pow,
        call, // text: function name
    };

    Kind kind = Kind::integer;
    std::string text;
    std::vector<Expr> args;
    std::size_t line = 1;
    std::size_t column = 1;

    static Expr leaf(Kind k, std::string text, std::size_t line = 1, std::size_t column = 1);
    static Expr node(Kind k, std::vector<Expr> args, std::size_t line = 1, std::size_t column = 1);

    /// Structural equality; source positions are ignored.
    friend bool operator==(const Expr& a, const Expr& b);
};

/// Canonical text with the minimal parentheses the grammar needs.
std::string render(const Expr& e);

bool contains_kind(const Expr& e, Expr::Kind k);

} // namespace exact::cli
