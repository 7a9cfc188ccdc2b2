#include "exact/cli/evaluate.hpp"

#include "exact/errors.hpp"

namespace exact::cli {

namespace {

[[noreturn]] void type_error(const Expr& at, const std::string& message)
{
    throw ParseError(message, at.line, at.column);
}

// Promotes a constant to whichever non-constant kind the other operand has.
template <class Op>
Value combine(const Expr& at, const Value& a, const Value& b, Op op)
{
    if (a.index() != 0 && b.index() != 0 && a.index() != b.index()) {
        type_error(at, "cannot combine a " + kind_name(a) + " with a " + kind_name(b));
    }
    std::size_t kind = a.index() != 0 ? a.index() : b.index();
    switch (kind) {
    case 0:
        return op(std::get<Rational>(a), std::get<Rational>(b));
    case 1:
        return op(as_series(a), as_series(b));
    case 2:
        return op(as_bivariate(a), as_bivariate(b));
    default:
        return op(as_puiseux(a), as_puiseux(b));
    }
}

Value reciprocal(const Expr& at, const Value& v)
{
    try {
        switch (v.index()) {
        case 0:
            return std::get<Rational>(v).inverse();
        case 1:
            return invert_unit(std::get<SeriesU>(v));
        case 2:
            return invert_unit(std::get<SeriesM>(v));
        default:
            return field_inv(std::get<Puiseux>(v));
        }
    } catch (const NonUnitError&) {
        type_error(at, "division by a series with zero constant term");
    } catch (const DivisionByZero&) {
        type_error(at, "division by zero");
    }
}

Value power(const Expr& at, const Value& base, long n)
{
    Value b = n < 0 ? reciprocal(at, base) : base;
    long e = n < 0 ? -n : n;
    Value result = Rational(1);
    while (e > 0) {
        if (e & 1) {
            result = combine(at, result, b, [](const auto& x, const auto& y) { return x * y; });
        }
        e >>= 1;
        if (e > 0) {
            b = combine(at, b, b, [](const auto& x, const auto& y) { return x * y; });
        }
    }
    return result;
}

Value derivative(const Expr& e)
{
    Value v = evaluate(e.args[0]);
    std::string var = e.args.size() > 1 ? e.args[1].text : "";
    switch (v.index()) {
    case 0:
        return Rational();
    case 1:
        if (!var.empty() && var != "z") {
            type_error(e, "derive: a series in z cannot be differentiated by " + var);
        }
        return derive(std::get<SeriesU>(v));
    case 2:
        if (var != "x" && var != "y") {
            type_error(e, "derive: name the variable, derive(e, x) or derive(e, y)");
        }
        return derive(std::get<SeriesM>(v), var == "x" ? 0 : 1);
    default:
        type_error(e, "derive: Puiseux expressions in t are not differentiated");
    }
}

} // namespace

std::string kind_name(const Value& v)
{
    switch (v.index()) {
    case 0:
        return "constant";
    case 1:
        return "series in z";
    case 2:
        return "series in x, y";
    default:
        return "Puiseux series in t";
    }
}

Puiseux as_puiseux(const Value& v)
{
    if (auto c = std::get_if<Rational>(&v)) {
        return Puiseux(*c);
    }
    if (auto p = std::get_if<Puiseux>(&v)) {
        return *p;
    }
    throw RejectedInput("expected a Puiseux expression in t, got a " + kind_name(v));
}

SeriesU as_series(const Value& v)
{
    if (auto c = std::get_if<Rational>(&v)) {
        return SeriesU::constant(*c);
    }
    if (auto s = std::get_if<SeriesU>(&v)) {
        return *s;
    }
    throw RejectedInput("expected a series in z, got a " + kind_name(v));
}

SeriesM as_bivariate(const Value& v)
{
    if (auto c = std::get_if<Rational>(&v)) {
        return SeriesM::constant(2, *c);
    }
    if (auto s = std::get_if<SeriesM>(&v)) {
        return *s;
    }
    throw RejectedInput("expected a series in x, y, got a " + kind_name(v));
}

Value evaluate(const Expr& e)
{
    switch (e.kind) {
    case Expr::Kind::integer:
        return Rational::parse(e.text);
    case Expr::Kind::variable:
        if (e.text == "z") {
            return SeriesU::monomial(Rational(1), 1);
        }
        if (e.text == "t") {
            return Puiseux::t();
        }
        return SeriesM::variable(2, e.text == "x" ? 0 : 1);
    case Expr::Kind::generator:
        if (e.text == "geom") {
            return SeriesU::geometric();
        }
        if (e.text == "exp") {
            return SeriesU::exponential();
        }
        return SeriesU::factorial();
    case Expr::Kind::unknown:
        type_error(e, "the unknown " + e.text + " may only appear in an ODE");
    case Expr::Kind::negate:
        return std::visit([](const auto& x) -> Value { return -x; }, evaluate(e.args[0]));
    case Expr::Kind::add:
        return combine(e, evaluate(e.args[0]), evaluate(e.args[1]), [](const auto& x, const auto& y) { return x + y; });
    case Expr::Kind::sub:
        return combine(e, evaluate(e.args[0]), evaluate(e.args[1]), [](const auto& x, const auto& y) { return x - y; });
    case Expr::Kind::mul:
        return combine(e, evaluate(e.args[0]), evaluate(e.args[1]), [](const auto& x, const auto& y) { return x * y; });
    case Expr::Kind::div:
        return combine(e, evaluate(e.args[0]), reciprocal(e.args[1], evaluate(e.args[1])),
                       [](const auto& x, const auto& y) { return x * y; });
    case Expr::Kind::pow: {
        Rational exponent = *constant_value(e.args[1]);
        const Expr& base = e.args[0];
        if (base.kind == Expr::Kind::variable && base.text == "t") {
            return Puiseux::monomial(Rational(1), exponent);
        }
        return power(e, evaluate(base), exponent.numerator().get_si());
    }
    case Expr::Kind::call:
        return derivative(e);
    }
    type_error(e, "unsupported expression");
}

namespace {

// Coefficients of F′, F and the F-free part of one side of an ODE.
struct LinearForm {
    SeriesU d_unknown;
    SeriesU unknown;
    SeriesU rest;
    bool has_unknown = false;
};

LinearForm scaled(const LinearForm& f, const SeriesU& k)
{
    return {f.d_unknown * k, f.unknown * k, f.rest * k, f.has_unknown};
}

LinearForm linear_form(const Expr& e)
{
    if (!contains_kind(e, Expr::Kind::unknown)) {
        try {
            return {SeriesU(), SeriesU(), as_series(evaluate(e)), false};
        } catch (const ParseError&) {
            throw;
        } catch (const RejectedInput& err) {
            type_error(e, std::string("ODE coefficients must be series in z: ") + err.what());
        }
    }
    switch (e.kind) {
    case Expr::Kind::unknown:
        if (e.text == "F'") {
            return {SeriesU::constant(Rational(1)), SeriesU(), SeriesU(), true};
        }
        return {SeriesU(), SeriesU::constant(Rational(1)), SeriesU(), true};
    case Expr::Kind::negate:
        return scaled(linear_form(e.args[0]), SeriesU::constant(Rational(-1)));
    case Expr::Kind::add:
    case Expr::Kind::sub: {
        LinearForm a = linear_form(e.args[0]);
        LinearForm b = linear_form(e.args[1]);
        if (e.kind == Expr::Kind::sub) {
            b = scaled(b, SeriesU::constant(Rational(-1)));
        }
        return {a.d_unknown + b.d_unknown, a.unknown + b.unknown, a.rest + b.rest, true};
    }
    case Expr::Kind::mul: {
        LinearForm a = linear_form(e.args[0]);
        LinearForm b = linear_form(e.args[1]);
        if (a.has_unknown && b.has_unknown) {
            type_error(e, "the ODE must be linear in F and F'");
        }
        return a.has_unknown ? scaled(a, b.rest) : scaled(b, a.rest);
    }
    case Expr::Kind::div: {
        if (contains_kind(e.args[1], Expr::Kind::unknown)) {
            type_error(e, "F may not appear in a denominator");
        }
        SeriesU inverse = as_series(reciprocal(e.args[1], as_series(evaluate(e.args[1]))));
        return scaled(linear_form(e.args[0]), inverse);
    }
    default:
        type_error(e, "only first-order linear ODEs are supported");
    }
}

} // namespace

LinearODE to_ode(const Equation& eq)
{
    LinearForm l = linear_form(eq.lhs);
    LinearForm r = linear_form(eq.rhs);
    return {l.d_unknown - r.d_unknown, l.unknown - r.unknown, r.rest - l.rest};
}

} // namespace exact::cli
