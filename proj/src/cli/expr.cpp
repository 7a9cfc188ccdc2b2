#include "exact/cli/expr.hpp"

#include <algorithm>

namespace exact::cli {

Expr Expr::leaf(Kind k, std::string text, std::size_t line, std::size_t column)
{
    Expr e;
    e.kind = k;
    e.text = std::move(text);
    e.line = line;
    e.column = column;
    return e;
}

Expr Expr::node(Kind k, std::vector<Expr> args, std::size_t line, std::size_t column)
{
    Expr e;
    e.kind = k;
    e.args = std::move(args);
    e.line = line;
    e.column = column;
    return e;
}

bool operator==(const Expr& a, const Expr& b)
{
    return a.kind == b.kind && a.text == b.text && a.args == b.args;
}

namespace {

// Binding strengths; must agree with the parser.
constexpr int kSum = 10;
constexpr int kProduct = 20;
constexpr int kPrefix = 30;
constexpr int kPower = 40;
constexpr int kAtom = 50;

int strength(const Expr& e)
{
    switch (e.kind) {
    case Expr::Kind::add:
    case Expr::Kind::sub:
        return kSum;
    case Expr::Kind::mul:
    case Expr::Kind::div:
        return kProduct;
    case Expr::Kind::negate:
        return kPrefix;
    case Expr::Kind::pow:
        return kPower;
    default:
        return kAtom;
    }
}

std::string wrapped(const Expr& e, bool parens)
{
    std::string s = render(e);
    return parens ? "(" + s + ")" : s;
}

} // namespace

std::string render(const Expr& e)
{
    switch (e.kind) {
    case Expr::Kind::integer:
    case Expr::Kind::variable:
    case Expr::Kind::generator:
    case Expr::Kind::unknown:
        return e.text;
    case Expr::Kind::negate:
        return "-" + wrapped(e.args[0], strength(e.args[0]) < kPrefix);
    case Expr::Kind::add:
    case Expr::Kind::sub:
    case Expr::Kind::mul:
    case Expr::Kind::div: {
        int p = strength(e);
        const char* op = e.kind == Expr::Kind::add ? " + " : e.kind == Expr::Kind::sub ? " - " : e.kind == Expr::Kind::mul ? "*" : "/";
        return wrapped(e.args[0], strength(e.args[0]) < p) + op + wrapped(e.args[1], strength(e.args[1]) <= p);
    }
    case Expr::Kind::pow:
        return wrapped(e.args[0], strength(e.args[0]) <= kPower) + "^" + wrapped(e.args[1], strength(e.args[1]) < kPower);
    case Expr::Kind::call: {
        std::string s = e.text + "(";
        for (std::size_t i = 0; i < e.args.size(); ++i) {
            s += (i ? ", " : "") + render(e.args[i]);
        }
        return s + ")";
    }
    }
    return {};
}

bool contains_kind(const Expr& e, Expr::Kind k)
{
    return e.kind == k || std::any_of(e.args.begin(), e.args.end(), [k](const Expr& a) { return contains_kind(a, k); });
}

} // namespace exact::cli
