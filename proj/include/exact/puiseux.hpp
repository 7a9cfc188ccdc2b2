#pragma once

// The ordered field of Puiseux series in a positive infinitesimal t,
// together with the box functions f_p on the closed cube [-t, t]^n.
//
// An element is stored as t^{start/ram} · Σ_k c_k t^{k/ram} with a lazily
// computed coefficient stream. Values produced by truncated evaluation carry
// an absolute precision P: coefficients of exponents >= P are unknown and are
// never reported. The exact zero has its own marker.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exact/fps.hpp"
#include "exact/rational.hpp"

namespace exact {

class Valuation {
public:
    enum class Kind { finite, infinite, at_least };

    static Valuation finite(Rational v) { return Valuation(Kind::finite, std::move(v)); }
    static Valuation infinite() { return Valuation(Kind::infinite, Rational()); }
    /// No nonzero coefficient below `bound` (the value may still be nonzero).
    static Valuation at_least(Rational bound) { return Valuation(Kind::at_least, std::move(bound)); }

    Kind kind() const { return kind_; }
    /// Exponent for finite, scan bound for at_least.
    const Rational& value() const { return value_; }
    bool is_finite() const { return kind_ == Kind::finite; }
    bool is_infinite() const { return kind_ == Kind::infinite; }

    /// True when the valuation is certainly >= v.
    bool certainly_at_least(const Rational& v) const;

    std::string to_string() const;

    friend bool operator==(const Valuation&, const Valuation&) = default;

private:
    Valuation(Kind k, Rational v) : kind_(k), value_(std::move(v)) {}
    Kind kind_;
    Rational value_;
};

/// Lower of two valuations, as used for coordinatewise minima.
Valuation min(const Valuation& a, const Valuation& b);

class Puiseux {
public:
    /// Exact zero.
    Puiseux();
    Puiseux(const Rational& c);
    template <std::integral I>
    Puiseux(I v) : Puiseux(Rational(v))
    {
    }

    static Puiseux t();
    /// c·t^exponent
    static Puiseux monomial(const Rational& c, const Rational& exponent);
    static Puiseux from_stream(long ramification, long start, SeriesU coeffs,
                               std::optional<Rational> precision = std::nullopt);
    static Puiseux from_terms(const std::map<Rational, Rational>& exponent_to_coeff,
                              std::optional<Rational> precision = std::nullopt);

    bool is_zero_marker() const { return zero_; }
    long ramification() const { return ramification_; }
    long start() const { return start_; }
    const SeriesU& stream() const { return stream_; }
    const std::optional<Rational>& precision() const { return precision_; }
    bool is_exact() const { return !precision_.has_value(); }
    /// Exact with finitely many terms, so every comparison is decidable.
    bool is_finite_exact() const;

    /// Exponent of stream index k: (start + k)/ramification.
    Rational exponent_of(std::size_t k) const;
    Rational coeff_at(const Rational& exponent) const;
    /// Lower bound on the valuation read off the representation.
    Rational valuation_lower_bound() const;

    /// Nonzero (exponent, coefficient) pairs with exponent < bound and below the precision.
    std::vector<std::pair<Rational, Rational>> terms_below(const Rational& bound) const;

    /// Same element over ramification `ram`, which must be a multiple of the current one.
    Puiseux with_ramification(long ram) const;
    /// Strips leading zeros and reduces the ramification; no-op for infinite lazy streams.
    Puiseux normalized() const;
    /// Materialises the terms below `bound`. The result carries precision
    /// min(bound, precision) unless the element is finite and entirely below bound.
    Puiseux truncated(const Rational& bound) const;

private:
    bool zero_ = true;
    long ramification_ = 1;
    long start_ = 0;
    SeriesU stream_;
    std::optional<Rational> precision_;
};

Puiseux field_add(const Puiseux& a, const Puiseux& b);
Puiseux field_sub(const Puiseux& a, const Puiseux& b);
Puiseux field_neg(const Puiseux& a);
Puiseux field_mul(const Puiseux& a, const Puiseux& b);
/// Factors out the leading monomial and inverts the unit part. The leading
/// term is searched for below `search_bound`.
Puiseux field_inv(const Puiseux& a, const Rational& search_bound = Rational(64));
Puiseux field_div(const Puiseux& a, const Puiseux& b);
Puiseux field_pow(const Puiseux& a, long exponent);

inline Puiseux operator+(const Puiseux& a, const Puiseux& b) { return field_add(a, b); }
inline Puiseux operator-(const Puiseux& a, const Puiseux& b) { return field_sub(a, b); }
inline Puiseux operator-(const Puiseux& a) { return field_neg(a); }
inline Puiseux operator*(const Puiseux& a, const Puiseux& b) { return field_mul(a, b); }
inline Puiseux operator/(const Puiseux& a, const Puiseux& b) { return field_div(a, b); }

/// Least exponent with a nonzero coefficient, scanning exponents < bound.
Valuation valuation(const Puiseux& a, const Rational& bound = Rational(64));

enum class Order { less, greater, equal_through };

struct Comparison {
    Order order;
    /// Exponent bound actually scanned (meaningful for equal_through).
    Rational through;
    /// a − b is certified to be exactly zero.
    bool exact = false;

    std::string to_string() const;
};

/// Sign of a − b from its leading coefficient, scanning exponents < order_bound.
Comparison compare(const Puiseux& a, const Puiseux& b, const Rational& order_bound);

/// Sign of a: +1, −1, 0, or nullopt when undecided below bound.
/// Finitely supported exact elements are always decided.
std::optional<int> decided_sign(const Puiseux& a, const Rational& bound);

/// Exact coefficientwise agreement for every exponent < bound.
bool agree_below(const Puiseux& a, const Puiseux& b, const Rational& bound);

// ---------------------------------------------------------------------------

enum class Membership { inside, boundary, outside, indeterminate };

std::string to_string(Membership m);

struct BoxPoint {
    std::vector<Puiseux> coords;
};

/// |x| <= t for one coordinate; inside covers the boundary |x| = t.
Membership box_membership(const Puiseux& x, const Rational& bound);
Membership box_membership(const BoxPoint& x, const Rational& bound);

/// f_p(x) exact for every t-exponent < order: Σ p_α x^α on the closed box,
/// zero outside it. Throws IndeterminateMembership when the box test is undecided.
Puiseux eval_box(const SeriesM& p, const BoxPoint& x, const Rational& order);

/// Ascending terms "c*t^(a/b)" with an "O(t^N)" tail when the element is not
/// finite and exact below the order.
std::string to_text(const Puiseux& a, const Rational& order);

} // namespace exact
