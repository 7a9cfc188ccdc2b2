#include "exact/complexified.hpp"

#include <numeric>

#include "exact/detail/truncated.hpp"
#include "exact/errors.hpp"

namespace exact {

ComplexPuiseux operator+(const ComplexPuiseux& a, const ComplexPuiseux& b)
{
    return {a.re + b.re, a.im + b.im};
}

ComplexPuiseux operator-(const ComplexPuiseux& a, const ComplexPuiseux& b)
{
    return {a.re - b.re, a.im - b.im};
}

ComplexPuiseux operator-(const ComplexPuiseux& a)
{
    return {-a.re, -a.im};
}

ComplexPuiseux operator*(const ComplexPuiseux& a, const ComplexPuiseux& b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexPuiseux conj(const ComplexPuiseux& a)
{
    return {a.re, -a.im};
}

ComplexPuiseux inverse(const ComplexPuiseux& a)
{
    if (a.is_zero_marker()) {
        throw DivisionByZero("inverse of zero in K");
    }
    Puiseux norm_inv = field_inv(a.re * a.re + a.im * a.im);
    return {a.re * norm_inv, -(a.im * norm_inv)};
}

Valuation valuation(const ComplexPuiseux& a, const Rational& bound)
{
    return min(valuation(a.re, bound), valuation(a.im, bound));
}

bool agree_below(const ComplexPuiseux& a, const ComplexPuiseux& b, const Rational& bound)
{
    return agree_below(a.re, b.re, bound) && agree_below(a.im, b.im, bound);
}

std::string to_text(const ComplexPuiseux& a, const Rational& order)
{
    std::string re = to_text(a.re, order);
    // An imaginary part with no known terms is already covered by the real tail.
    if (a.im.is_zero_marker() || (a.im.terms_below(order).empty() && re.find("O(") != std::string::npos)) {
        return re;
    }
    std::string im = "(" + to_text(a.im, order) + ")*i";
    if (a.re.is_zero_marker()) {
        return im;
    }
    return re + " + " + im;
}

Membership disc_membership(const ComplexPuiseux& z, const Rational& bound)
{
    Puiseux t = Puiseux::t();
    Puiseux excess = z.re * z.re + z.im * z.im - t * t;
    std::optional<int> s = decided_sign(excess, bound);
    if (!s) {
        return Membership::indeterminate;
    }
    return *s < 0 ? Membership::inside : *s == 0 ? Membership::boundary : Membership::outside;
}

std::pair<SeriesM, SeriesM> homog_decompose(std::size_t n)
{
    // Coefficient of x^{n−k} y^k in (x + iy)^n is C(n, k)·i^k.
    std::map<MultiIndex, Rational> re;
    std::map<MultiIndex, Rational> im;
    for (std::size_t k = 0; k <= n; ++k) {
        MultiIndex alpha{static_cast<std::uint32_t>(n - k), static_cast<std::uint32_t>(k)};
        Rational c = Rational::binomial(n, k);
        switch (k % 4) {
        case 0:
            re[alpha] = c;
            break;
        case 1:
            im[alpha] = c;
            break;
        case 2:
            re[alpha] = -c;
            break;
        case 3:
            im[alpha] = -c;
            break;
        }
    }
    return {SeriesM::from_terms(2, re), SeriesM::from_terms(2, im)};
}

CoordinateSeries coordinate_series(const ComplexSeries& p)
{
    const SeriesU& s = p.series();
    auto part = [s](bool imaginary) {
        return SeriesM::from_slices(
            2,
            [s, imaginary](std::size_t d, std::span<const Slice>) {
                Rational pd = s.coeff(d);
                if (pd.is_zero()) {
                    return Slice{};
                }
                auto [q1, q2] = homog_decompose(d);
                Slice out = (imaginary ? q2 : q1).slice(d);
                for (auto& [alpha, c] : out) {
                    c *= pd;
                }
                return out;
            },
            s.support_bound());
    };
    return {part(false), part(true)};
}

CrReport cr_check(const SeriesM& p1, const SeriesM& p2, std::size_t degree)
{
    if (p1.arity() != 2 || p2.arity() != 2) {
        throw RejectedInput("cr_check: coordinate series must have arity 2");
    }
    SeriesM u_x = derive(p1, 0);
    SeriesM u_y = derive(p1, 1);
    SeriesM v_x = derive(p2, 0);
    SeriesM v_y = derive(p2, 1);
    SeriesM first = u_x - v_y;
    SeriesM second = u_y + v_x;

    CrReport report;
    report.degree = degree;
    // Derivative slice d comes from monomials of total degree d + 1.
    for (std::size_t d = 0; d < degree; ++d) {
        for (auto [residual, name] : {std::pair{&first, "dp1/dx = dp2/dy"}, std::pair{&second, "dp1/dy = -dp2/dx"}}) {
            Slice s = residual->slice(d);
            if (!s.empty()) {
                report.pass = false;
                report.failing_degree = d + 1;
                report.offending = s.begin()->first;
                report.equation = name;
                return report;
            }
        }
    }
    return report;
}

ComplexPuiseux eval_disc(const ComplexSeries& p, const DiscPoint& z, const Rational& order)
{
    Rational bound = max(order * Rational(2), Rational(3));
    Membership m = disc_membership(z.z, bound);
    if (m == Membership::outside) {
        throw RejectedInput("eval_disc: point lies outside the disc |z| <= t");
    }
    if (m == Membership::indeterminate) {
        throw IndeterminateMembership("eval_disc: cannot decide |z| <= t below t^" + bound.to_string());
    }

    Rational precision = order;
    for (const Puiseux* c : {&z.z.re, &z.z.im}) {
        if (c->precision()) {
            precision = min(precision, *c->precision());
        }
    }
    Puiseux x = z.z.re.truncated(order).normalized();
    Puiseux y = z.z.im.truncated(order).normalized();
    long ram = std::lcm(x.ramification(), y.ramification());
    std::size_t length = detail::grid_length(precision, ram);

    detail::Truncated zx = detail::Truncated::of(x, ram, length);
    detail::Truncated zy = detail::Truncated::of(y, ram, length);
    detail::Truncated pow_re = detail::Truncated::constant(Rational(1), ram, length);
    detail::Truncated pow_im(ram, length);
    detail::Truncated acc_re(ram, length);
    detail::Truncated acc_im(ram, length);

    // |z| <= t forces valuation >= 1, so zⁿ is invisible below t^n.
    long terms = ceil_to_long(precision);
    for (long n = 0; n < terms; ++n) {
        Rational c = p.series().coeff(static_cast<std::size_t>(n));
        if (!c.is_zero()) {
            acc_re += pow_re.scaled(c);
            acc_im += pow_im.scaled(c);
        }
        detail::Truncated next_re = pow_re * zx;
        next_re -= pow_im * zy;
        detail::Truncated next_im = pow_re * zy;
        next_im += pow_im * zx;
        pow_re = std::move(next_re);
        pow_im = std::move(next_im);
    }
    return {acc_re.to_puiseux(precision), acc_im.to_puiseux(precision)};
}

DiffQuotientReport diff_quotient_check(const ComplexSeries& p, const DiscPoint& z0, const ComplexPuiseux& h,
                                       const Rational& order)
{
    Valuation vh = valuation(h, order);
    if (vh.is_infinite()) {
        throw RejectedInput("diff_quotient_check: h must be nonzero");
    }
    if (!vh.is_finite()) {
        throw Indeterminate("diff_quotient_check: no nonzero term of h below t^" + order.to_string());
    }
    Rational boosted = order + vh.value();
    ComplexPuiseux shifted = eval_disc(p, DiscPoint{z0.z + h}, boosted);
    ComplexPuiseux base = eval_disc(p, DiscPoint{z0.z}, boosted);
    ComplexPuiseux quotient = (shifted - base) * inverse(h);
    ComplexPuiseux derivative = eval_disc(ComplexSeries(derive(p.series())), z0, order);

    DiffQuotientReport report;
    report.delta = quotient - derivative;
    report.delta_valuation = valuation(report.delta, order);
    report.h_valuation = vh.value();
    report.holds = report.delta_valuation.certainly_at_least(vh.value());
    return report;
}

} // namespace exact
