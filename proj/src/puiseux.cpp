#include "exact/puiseux.hpp"

#include <algorithm>
#include <numeric>

#include "exact/detail/truncated.hpp"
#include "exact/errors.hpp"
#include "exact/format.hpp"

namespace exact {

namespace {

long to_long(const mpz_class& z)
{
    if (!z.fits_slong_p()) {
        throw RejectedInput("exponent grid index does not fit in a machine word");
    }
    return z.get_si();
}

std::optional<Rational> min_precision(const std::optional<Rational>& a, const std::optional<Rational>& b)
{
    if (a && b) {
        return min(*a, *b);
    }
    return a ? a : b;
}

// Stream index and coefficient of the first nonzero term with exponent below bound.
struct Leading {
    std::size_t index;
    Rational coeff;
};

std::size_t scan_count(const Puiseux& a, const Rational& bound)
{
    Rational eff = a.precision() ? min(bound, *a.precision()) : bound;
    long count = ceil_to_long(eff * Rational(a.ramification()) - Rational(a.start()));
    if (count <= 0) {
        return 0;
    }
    auto n = static_cast<std::size_t>(count);
    if (auto s = a.stream().support_bound()) {
        n = std::min(n, *s);
    }
    return n;
}

std::optional<Leading> leading_term(const Puiseux& a, const Rational& bound)
{
    if (a.is_zero_marker()) {
        return std::nullopt;
    }
    std::size_t n = scan_count(a, bound);
    for (std::size_t k = 0; k < n; ++k) {
        Rational c = a.stream().coeff(k);
        if (!c.is_zero()) {
            return Leading{k, std::move(c)};
        }
    }
    return std::nullopt;
}

// Leading term of a finitely supported exact element, scanning its whole support.
std::optional<Leading> exact_leading_term(const Puiseux& a)
{
    std::size_t n = *a.stream().support_bound();
    for (std::size_t k = 0; k < n; ++k) {
        Rational c = a.stream().coeff(k);
        if (!c.is_zero()) {
            return Leading{k, std::move(c)};
        }
    }
    return std::nullopt;
}

Puiseux zero_with_precision(const Rational& precision)
{
    return Puiseux::from_stream(to_long(precision.denominator()), to_long(precision.numerator()), SeriesU(), precision);
}

} // namespace

// ---------------------------------------------------------------------------

bool Valuation::certainly_at_least(const Rational& v) const
{
    switch (kind_) {
    case Kind::infinite:
        return true;
    case Kind::finite:
    case Kind::at_least:
        return value_ >= v;
    }
    return false;
}

std::string Valuation::to_string() const
{
    switch (kind_) {
    case Kind::infinite:
        return "+inf";
    case Kind::finite:
        return value_.to_string();
    case Kind::at_least:
        return ">=" + value_.to_string();
    }
    return {};
}

Valuation min(const Valuation& a, const Valuation& b)
{
    if (a.is_infinite()) {
        return b;
    }
    if (b.is_infinite()) {
        return a;
    }
    if (a.value() != b.value()) {
        return a.value() < b.value() ? a : b;
    }
    // Same number: a certain exponent beats a lower bound.
    return a.is_finite() ? a : b;
}

// ---------------------------------------------------------------------------

Puiseux::Puiseux() = default;

Puiseux::Puiseux(const Rational& c)
{
    if (!c.is_zero()) {
        zero_ = false;
        stream_ = SeriesU::constant(c);
    }
}

Puiseux Puiseux::t()
{
    return monomial(Rational(1), Rational(1));
}

Puiseux Puiseux::monomial(const Rational& c, const Rational& exponent)
{
    if (c.is_zero()) {
        return Puiseux();
    }
    return from_stream(to_long(exponent.denominator()), to_long(exponent.numerator()), SeriesU::constant(c));
}

Puiseux Puiseux::from_stream(long ramification, long start, SeriesU coeffs, std::optional<Rational> precision)
{
    if (ramification < 1) {
        throw RejectedInput("ramification must be a positive integer");
    }
    Puiseux p;
    p.zero_ = false;
    p.ramification_ = ramification;
    p.start_ = start;
    p.stream_ = std::move(coeffs);
    p.precision_ = std::move(precision);
    return p;
}

Puiseux Puiseux::from_terms(const std::map<Rational, Rational>& exponent_to_coeff, std::optional<Rational> precision)
{
    std::map<Rational, Rational> terms;
    for (const auto& [e, c] : exponent_to_coeff) {
        if (!c.is_zero() && (!precision || e < *precision)) {
            terms.emplace(e, c);
        }
    }
    if (terms.empty()) {
        return precision ? zero_with_precision(*precision) : Puiseux();
    }
    mpz_class lcm = 1;
    for (const auto& [e, c] : terms) {
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.denominator().get_mpz_t());
    }
    long ram = to_long(lcm);
    long start = to_long((terms.begin()->first * Rational(ram)).numerator());
    std::vector<Rational> coeffs;
    for (const auto& [e, c] : terms) {
        auto k = static_cast<std::size_t>(to_long((e * Rational(ram)).numerator()) - start);
        if (coeffs.size() <= k) {
            coeffs.resize(k + 1);
        }
        coeffs[k] = c;
    }
    return from_stream(ram, start, SeriesU::polynomial(std::move(coeffs)), std::move(precision)).normalized();
}

bool Puiseux::is_finite_exact() const
{
    return zero_ || (!precision_ && stream_.support_bound().has_value());
}

Rational Puiseux::exponent_of(std::size_t k) const
{
    return Rational(start_ + static_cast<long>(k), ramification_);
}

Rational Puiseux::coeff_at(const Rational& exponent) const
{
    if (precision_ && exponent >= *precision_) {
        throw Indeterminate("coefficient of t^" + exponent.to_string() + " lies beyond the precision " +
                            precision_->to_string());
    }
    if (zero_) {
        return Rational();
    }
    Rational scaled = exponent * Rational(ramification_);
    if (!scaled.is_integer()) {
        return Rational();
    }
    long k = to_long(scaled.numerator()) - start_;
    return k < 0 ? Rational() : stream_.coeff(static_cast<std::size_t>(k));
}

Rational Puiseux::valuation_lower_bound() const
{
    return Rational(start_, ramification_);
}

std::vector<std::pair<Rational, Rational>> Puiseux::terms_below(const Rational& bound) const
{
    std::vector<std::pair<Rational, Rational>> out;
    if (zero_) {
        return out;
    }
    std::size_t n = scan_count(*this, bound);
    for (std::size_t k = 0; k < n; ++k) {
        Rational c = stream_.coeff(k);
        if (!c.is_zero()) {
            out.emplace_back(exponent_of(k), std::move(c));
        }
    }
    return out;
}

Puiseux Puiseux::with_ramification(long ram) const
{
    if (zero_) {
        return *this;
    }
    if (ram < 1 || ram % ramification_ != 0) {
        throw RejectedInput("target ramification " + std::to_string(ram) + " is not a multiple of " +
                            std::to_string(ramification_));
    }
    long r = ram / ramification_;
    return from_stream(ram, start_ * r, spread(stream_, static_cast<std::size_t>(r)), precision_);
}

Puiseux Puiseux::normalized() const
{
    if (zero_ || !stream_.support_bound()) {
        return *this;
    }
    std::size_t s = *stream_.support_bound();
    std::vector<Rational> c = stream_.prefix(s);
    auto first = std::find_if(c.begin(), c.end(), [](const Rational& x) { return !x.is_zero(); });
    if (first == c.end()) {
        return precision_ ? zero_with_precision(*precision_) : Puiseux();
    }
    auto k0 = static_cast<std::size_t>(first - c.begin());
    long g = ramification_;
    for (std::size_t k = k0; k < s; ++k) {
        if (!c[k].is_zero()) {
            g = std::gcd(g, start_ + static_cast<long>(k));
        }
    }
    g = std::abs(g);
    std::vector<Rational> reduced;
    for (std::size_t k = k0; k < s; k += static_cast<std::size_t>(g)) {
        reduced.push_back(c[k]);
    }
    long new_start = (start_ + static_cast<long>(k0)) / g;
    return from_stream(ramification_ / g, new_start, SeriesU::polynomial(std::move(reduced)), precision_);
}

Puiseux Puiseux::truncated(const Rational& bound) const
{
    if (zero_) {
        return *this;
    }
    if (is_finite_exact()) {
        Puiseux n = normalized();
        if (n.is_zero_marker() || n.exponent_of(*n.stream().support_bound() - 1) < bound) {
            return n;
        }
    }
    Rational p = precision_ ? min(bound, *precision_) : bound;
    std::map<Rational, Rational> terms;
    for (auto& [e, c] : terms_below(p)) {
        terms.emplace(std::move(e), std::move(c));
    }
    return from_terms(terms, p);
}

// ---------------------------------------------------------------------------

Puiseux field_add(const Puiseux& a, const Puiseux& b)
{
    if (a.is_zero_marker()) {
        return b;
    }
    if (b.is_zero_marker()) {
        return a;
    }
    long ram = std::lcm(a.ramification(), b.ramification());
    Puiseux x = a.with_ramification(ram);
    Puiseux y = b.with_ramification(ram);
    long s = std::min(x.start(), y.start());
    SeriesU sum = add(shift_up(x.stream(), static_cast<std::size_t>(x.start() - s)),
                      shift_up(y.stream(), static_cast<std::size_t>(y.start() - s)));
    return Puiseux::from_stream(ram, s, std::move(sum), min_precision(a.precision(), b.precision())).normalized();
}

Puiseux field_neg(const Puiseux& a)
{
    if (a.is_zero_marker()) {
        return a;
    }
    return Puiseux::from_stream(a.ramification(), a.start(), neg(a.stream()), a.precision());
}

Puiseux field_sub(const Puiseux& a, const Puiseux& b)
{
    return field_add(a, field_neg(b));
}

Puiseux field_mul(const Puiseux& a, const Puiseux& b)
{
    if (a.is_zero_marker() || b.is_zero_marker()) {
        return Puiseux();
    }
    long ram = std::lcm(a.ramification(), b.ramification());
    Puiseux x = a.with_ramification(ram);
    Puiseux y = b.with_ramification(ram);
    std::optional<Rational> precision;
    if (a.precision()) {
        precision = *a.precision() + b.valuation_lower_bound();
    }
    if (b.precision()) {
        precision = min_precision(precision, *b.precision() + a.valuation_lower_bound());
    }
    return Puiseux::from_stream(ram, x.start() + y.start(), mul(x.stream(), y.stream()), precision).normalized();
}

Puiseux field_inv(const Puiseux& a, const Rational& search_bound)
{
    if (a.is_zero_marker()) {
        throw DivisionByZero("inverse of the zero Puiseux series");
    }
    std::optional<Leading> lead = a.is_finite_exact() ? exact_leading_term(a) : leading_term(a, search_bound);
    if (!lead) {
        if (a.is_finite_exact()) {
            throw DivisionByZero("inverse of the zero Puiseux series");
        }
        if (a.precision() && *a.precision() <= search_bound) {
            throw Indeterminate("no nonzero coefficient below precision " + a.precision()->to_string() +
                                "; cannot invert");
        }
        throw Indeterminate("no nonzero coefficient below t^" + search_bound.to_string() + "; cannot invert");
    }
    Rational v = a.exponent_of(lead->index);
    std::optional<Rational> precision;
    if (a.precision()) {
        precision = *a.precision() - v - v;
    }
    SeriesU unit = drop(a.stream(), lead->index);
    long start = -(a.start() + static_cast<long>(lead->index));
    return Puiseux::from_stream(a.ramification(), start, invert_unit(unit), precision).normalized();
}

Puiseux field_div(const Puiseux& a, const Puiseux& b)
{
    return field_mul(a, field_inv(b));
}

Puiseux field_pow(const Puiseux& a, long exponent)
{
    if (exponent < 0) {
        return field_pow(field_inv(a), -exponent);
    }
    Puiseux result(Rational(1));
    Puiseux base = a;
    while (exponent > 0) {
        if (exponent & 1) {
            result = field_mul(result, base);
        }
        exponent >>= 1;
        if (exponent > 0) {
            base = field_mul(base, base);
        }
    }
    return result;
}

Valuation valuation(const Puiseux& a, const Rational& bound)
{
    if (a.is_zero_marker()) {
        return Valuation::infinite();
    }
    if (a.is_finite_exact()) {
        auto lead = exact_leading_term(a);
        return lead ? Valuation::finite(a.exponent_of(lead->index)) : Valuation::infinite();
    }
    if (auto lead = leading_term(a, bound)) {
        return Valuation::finite(a.exponent_of(lead->index));
    }
    return Valuation::at_least(a.precision() ? min(bound, *a.precision()) : bound);
}

std::string Comparison::to_string() const
{
    switch (order) {
    case Order::less:
        return "less";
    case Order::greater:
        return "greater";
    case Order::equal_through:
        return "equal_through(" + through.to_string() + ")";
    }
    return {};
}

Comparison compare(const Puiseux& a, const Puiseux& b, const Rational& order_bound)
{
    Puiseux d = field_sub(a, b);
    if (d.is_zero_marker()) {
        return {Order::equal_through, order_bound, true};
    }
    if (auto lead = leading_term(d, order_bound)) {
        return {lead->coeff.sign() < 0 ? Order::less : Order::greater, order_bound, false};
    }
    return {Order::equal_through, d.precision() ? min(order_bound, *d.precision()) : order_bound, false};
}

std::optional<int> decided_sign(const Puiseux& a, const Rational& bound)
{
    if (a.is_zero_marker()) {
        return 0;
    }
    if (a.is_finite_exact()) {
        auto lead = exact_leading_term(a);
        return lead ? lead->coeff.sign() : 0;
    }
    if (auto lead = leading_term(a, bound)) {
        return lead->coeff.sign();
    }
    return std::nullopt;
}

bool agree_below(const Puiseux& a, const Puiseux& b, const Rational& bound)
{
    Puiseux d = field_sub(a, b);
    if (d.is_zero_marker()) {
        return true;
    }
    if (d.precision() && *d.precision() < bound) {
        throw Indeterminate("agreement requested below t^" + bound.to_string() + " but values are only known below t^" +
                            d.precision()->to_string());
    }
    return d.terms_below(bound).empty();
}

// ---------------------------------------------------------------------------

std::string to_string(Membership m)
{
    switch (m) {
    case Membership::inside:
        return "inside";
    case Membership::boundary:
        return "boundary";
    case Membership::outside:
        return "outside";
    case Membership::indeterminate:
        return "indeterminate";
    }
    return {};
}

Membership box_membership(const Puiseux& x, const Rational& bound)
{
    // x − t <= 0 and −x − t <= 0
    std::optional<int> upper = decided_sign(field_sub(x, Puiseux::t()), bound);
    std::optional<int> lower = decided_sign(field_sub(field_neg(x), Puiseux::t()), bound);
    if ((upper && *upper > 0) || (lower && *lower > 0)) {
        return Membership::outside;
    }
    if (upper && lower) {
        return (*upper == 0 || *lower == 0) ? Membership::boundary : Membership::inside;
    }
    return Membership::indeterminate;
}

Membership box_membership(const BoxPoint& x, const Rational& bound)
{
    Membership result = Membership::inside;
    for (const auto& coord : x.coords) {
        Membership m = box_membership(coord, bound);
        if (m == Membership::outside) {
            return m;
        }
        if (m == Membership::indeterminate) {
            result = m;
        } else if (m == Membership::boundary && result == Membership::inside) {
            result = m;
        }
    }
    return result;
}

Puiseux eval_box(const SeriesM& p, const BoxPoint& x, const Rational& order)
{
    if (x.coords.size() != p.arity()) {
        throw RejectedInput("eval_box: point has " + std::to_string(x.coords.size()) + " coordinates, series has arity " +
                            std::to_string(p.arity()));
    }
    Membership m = box_membership(x, max(order, Rational(2)));
    if (m == Membership::outside) {
        return Puiseux();
    }
    if (m == Membership::indeterminate) {
        throw IndeterminateMembership("eval_box: cannot decide |x| <= t below t^" + max(order, Rational(2)).to_string());
    }

    Rational precision = order;
    long ram = 1;
    std::vector<Puiseux> coords;
    for (const auto& c : x.coords) {
        if (c.precision()) {
            precision = min(precision, *c.precision());
        }
        coords.push_back(c.truncated(order).normalized());
        ram = std::lcm(ram, coords.back().ramification());
    }
    std::size_t length = detail::grid_length(precision, ram);

    std::vector<std::vector<detail::Truncated>> powers;
    for (const auto& c : coords) {
        powers.push_back({detail::Truncated::constant(Rational(1), ram, length), detail::Truncated::of(c, ram, length)});
    }
    auto power_of = [&](std::size_t i, std::size_t e) -> const detail::Truncated& {
        while (powers[i].size() <= e) {
            powers[i].push_back(powers[i].back() * powers[i][1]);
        }
        return powers[i][e];
    };

    // Every coordinate has valuation >= 1, so monomials of total degree
    // >= precision cannot reach below it.
    detail::Truncated acc(ram, length);
    long max_degree = ceil_to_long(precision) - 1;
    for (long d = 0; d <= max_degree; ++d) {
        for (const auto& [alpha, c] : p.slice(static_cast<std::size_t>(d))) {
            detail::Truncated term = detail::Truncated::constant(c, ram, length);
            for (std::size_t i = 0; i < alpha.size(); ++i) {
                if (alpha[i] > 0) {
                    term = term * power_of(i, alpha[i]);
                }
            }
            acc += term;
        }
    }
    return acc.to_puiseux(precision);
}

std::string to_text(const Puiseux& a, const Rational& order)
{
    if (a.is_zero_marker()) {
        return "0";
    }
    std::string out;
    for (const auto& [e, c] : a.terms_below(order)) {
        format::append_term(out, c, format::power("t", e));
    }
    bool complete = a.is_finite_exact() && a.exponent_of(*a.stream().support_bound() - 1) < order;
    if (!complete) {
        Rational tail = a.precision() ? min(order, *a.precision()) : order;
        std::string big_o = "O(" + (tail.is_zero() ? std::string("1") : format::power("t", tail)) + ")";
        out += out.empty() ? big_o : " + " + big_o;
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------

namespace detail {

std::size_t grid_length(const Rational& precision, long ram)
{
    long n = ceil_to_long(precision * Rational(ram));
    return n > 0 ? static_cast<std::size_t>(n) : 0;
}

Truncated Truncated::constant(const Rational& c, long ram, std::size_t length)
{
    Truncated out(ram, length);
    if (length > 0) {
        out.coeffs_[0] = c;
    }
    return out;
}

Truncated Truncated::of(const Puiseux& x, long ram, std::size_t length)
{
    Truncated out(ram, length);
    Rational bound(static_cast<long>(length), ram);
    for (const auto& [e, c] : x.terms_below(bound)) {
        if (e.sign() < 0) {
            throw PreconditionViolation("truncated evaluation needs nonnegative exponents, got t^" + e.to_string());
        }
        Rational k = e * Rational(ram);
        if (!k.is_integer()) {
            throw PreconditionViolation("exponent " + e.to_string() + " is off the ramification grid");
        }
        out.coeffs_[static_cast<std::size_t>(k.numerator().get_ui())] = c;
    }
    return out;
}

Truncated& Truncated::operator+=(const Truncated& o)
{
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (!o.coeffs_[k].is_zero()) {
            coeffs_[k] += o.coeffs_[k];
        }
    }
    return *this;
}

Truncated& Truncated::operator-=(const Truncated& o)
{
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (!o.coeffs_[k].is_zero()) {
            coeffs_[k] -= o.coeffs_[k];
        }
    }
    return *this;
}

Truncated Truncated::scaled(const Rational& c) const
{
    Truncated out = *this;
    for (auto& x : out.coeffs_) {
        x *= c;
    }
    return out;
}

Truncated operator*(const Truncated& a, const Truncated& b)
{
    std::size_t n = a.coeffs_.size();
    Truncated out(a.ram_, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coeffs_[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; i + j < n; ++j) {
            if (!b.coeffs_[j].is_zero()) {
                out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
    }
    return out;
}

Puiseux Truncated::to_puiseux(const Rational& precision) const
{
    std::map<Rational, Rational> terms;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (!coeffs_[k].is_zero()) {
            terms.emplace(Rational(static_cast<long>(k), ram_), coeffs_[k]);
        }
    }
    return Puiseux::from_terms(terms, precision);
}

} // namespace detail

} // namespace exact
