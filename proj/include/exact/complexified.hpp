#pragma once

// K = R(√−1) as pairs over the Puiseux field, complex power series F_p on
// the disc of radius t, their real coordinate series, and the two computable
// witnesses of K-differentiability: Cauchy–Riemann identities of the
// coordinate series and valuation bounds on difference quotients.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "exact/fps.hpp"
#include "exact/puiseux.hpp"

namespace exact {

struct ComplexPuiseux {
    Puiseux re;
    Puiseux im;

    ComplexPuiseux() = default;
    ComplexPuiseux(Puiseux real, Puiseux imag = Puiseux()) : re(std::move(real)), im(std::move(imag)) {}

    static ComplexPuiseux i() { return {Puiseux(), Puiseux(1)}; }

    bool is_zero_marker() const { return re.is_zero_marker() && im.is_zero_marker(); }
};

ComplexPuiseux operator+(const ComplexPuiseux& a, const ComplexPuiseux& b);
ComplexPuiseux operator-(const ComplexPuiseux& a, const ComplexPuiseux& b);
ComplexPuiseux operator-(const ComplexPuiseux& a);
ComplexPuiseux operator*(const ComplexPuiseux& a, const ComplexPuiseux& b);
ComplexPuiseux conj(const ComplexPuiseux& a);
/// conj(a)/(re² + im²)
ComplexPuiseux inverse(const ComplexPuiseux& a);

/// Coordinatewise minimum.
Valuation valuation(const ComplexPuiseux& a, const Rational& bound = Rational(64));
bool agree_below(const ComplexPuiseux& a, const ComplexPuiseux& b, const Rational& bound);

/// "a + (b)*i" with each coordinate in the Puiseux text format.
std::string to_text(const ComplexPuiseux& a, const Rational& order);

/// p(ζ) with rational coefficients, read as the function F_p on the disc.
class ComplexSeries {
public:
    explicit ComplexSeries(SeriesU p) : p_(std::move(p)) {}
    const SeriesU& series() const { return p_; }

private:
    SeriesU p_;
};

struct DiscPoint {
    ComplexPuiseux z;
};

/// re² + im² against t²: inside is the open disc D, boundary is |z| = t.
Membership disc_membership(const ComplexPuiseux& z, const Rational& bound);

/// (x + iy)ⁿ = q1 + i·q2 with q1, q2 homogeneous of degree n in (x, y).
std::pair<SeriesM, SeriesM> homog_decompose(std::size_t n);

struct CoordinateSeries {
    SeriesM re;
    SeriesM im;
};

/// p1, p2 in ℚ[[ξ₁, ξ₂]] with F_p(x + iy) = f_{p1}(x, y) + i·f_{p2}(x, y).
CoordinateSeries coordinate_series(const ComplexSeries& p);

struct CrReport {
    bool pass = true;
    /// Total degree of p1, p2 checked through (inclusive).
    std::size_t degree = 0;
    /// Set on failure: total degree of the original monomials involved.
    std::optional<std::size_t> failing_degree;
    /// Set on failure: exponent of the first differing derivative monomial.
    std::optional<MultiIndex> offending;
    /// Set on failure: "dp1/dx = dp2/dy" or "dp1/dy = -dp2/dx".
    std::string equation;
};

/// ∂p1/∂ξ₁ = ∂p2/∂ξ₂ and ∂p1/∂ξ₂ = −∂p2/∂ξ₁ for every monomial of p1, p2 up
/// to total degree `degree`.
CrReport cr_check(const SeriesM& p1, const SeriesM& p2, std::size_t degree);

/// F_p(z) exact below t^order. z must lie in the closed disc |z| <= t.
ComplexPuiseux eval_disc(const ComplexSeries& p, const DiscPoint& z, const Rational& order);

struct DiffQuotientReport {
    /// (F_p(z0 + h) − F_p(z0))/h − F_{p′}(z0), exact below t^order.
    ComplexPuiseux delta;
    Valuation delta_valuation = Valuation::infinite();
    Rational h_valuation;
    /// delta_valuation >= h_valuation.
    bool holds = false;
};

DiffQuotientReport diff_quotient_check(const ComplexSeries& p, const DiscPoint& z0, const ComplexPuiseux& h,
                                       const Rational& order);

} // namespace exact
