#pragma once

// Lazy, memoized formal power series over the rationals.
//
// SeriesU is a univariate coefficient stream; SeriesM is a multivariate
// stream organised by total-degree slices. Both are immutable handles onto a
// shared node whose cache is extended on demand under a mutex, so handles can
// be copied freely and queried from several threads.
//
// A series may carry a support bound: coeff(n) == 0 for every n >= bound
// (for SeriesM, every monomial of total degree >= bound). Polynomials carry
// one; genuinely infinite streams do not.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "exact/rational.hpp"

namespace exact {

class SeriesU {
public:
    /// Appends coefficients to `prefix` until prefix.size() > upto.
    using Extender = std::function<void(std::size_t upto, std::vector<Rational>& prefix)>;
    /// Coefficient n, given all earlier coefficients of the same series.
    using Recurrence = std::function<Rational(std::size_t n, std::span<const Rational> earlier)>;

    /// The zero series.
    SeriesU();

    static SeriesU constant(const Rational& c);
    static SeriesU monomial(const Rational& c, std::size_t degree);
    static SeriesU polynomial(std::vector<Rational> coeffs);
    static SeriesU from_function(std::function<Rational(std::size_t)> f,
                                 std::optional<std::size_t> support = std::nullopt);
    static SeriesU from_recurrence(Recurrence r, std::optional<std::size_t> support = std::nullopt);
    static SeriesU from_extender(Extender e, std::optional<std::size_t> support = std::nullopt);

    /// Σ ζⁿ
    static SeriesU geometric();
    /// Σ ζⁿ/n!
    static SeriesU exponential();
    /// Σ_{n≥1} (n−1)! ζⁿ
    static SeriesU factorial();

    Rational coeff(std::size_t n) const;
    /// Coefficients 0..count-1.
    std::vector<Rational> prefix(std::size_t count) const;

    std::optional<std::size_t> support_bound() const;
    bool is_polynomial() const { return support_bound().has_value(); }
    /// True only when the series is certified to be identically zero.
    bool is_certified_zero() const;

private:
    struct Node;
    explicit SeriesU(std::shared_ptr<Node> node);
    std::shared_ptr<Node> node_;
};

SeriesU add(const SeriesU& a, const SeriesU& b);
SeriesU sub(const SeriesU& a, const SeriesU& b);
SeriesU neg(const SeriesU& a);
SeriesU scale(const SeriesU& a, const Rational& c);
/// Cauchy product.
SeriesU mul(const SeriesU& a, const SeriesU& b);
SeriesU derive(const SeriesU& p);
/// p∘q; requires q.coeff(0) == 0.
SeriesU compose(const SeriesU& p, const SeriesU& q);
/// p⁻¹; requires p.coeff(0) != 0.
SeriesU invert_unit(const SeriesU& p);
/// ζᵏ·a
SeriesU shift_up(const SeriesU& a, std::size_t k);
/// Coefficients of a from index k on: n ↦ a.coeff(n + k).
SeriesU drop(const SeriesU& a, std::size_t k);
/// a(ζʳ)
SeriesU spread(const SeriesU& a, std::size_t r);
/// p(ζ + c); p must be a polynomial.
SeriesU taylor_shift(const SeriesU& p, const Rational& c);
/// Overrides one coefficient; used to build perturbed inputs.
SeriesU with_coeff(const SeriesU& a, std::size_t n, const Rational& value);

inline SeriesU operator+(const SeriesU& a, const SeriesU& b) { return add(a, b); }
inline SeriesU operator-(const SeriesU& a, const SeriesU& b) { return sub(a, b); }
inline SeriesU operator-(const SeriesU& a) { return neg(a); }
inline SeriesU operator*(const SeriesU& a, const SeriesU& b) { return mul(a, b); }

/// Exact coefficientwise equality of indices [0, count).
bool equal_through(const SeriesU& a, const SeriesU& b, std::size_t count);

// ---------------------------------------------------------------------------

/// Exponent multi-index α ∈ ℕⁿ.
using MultiIndex = std::vector<std::uint32_t>;
/// Nonzero coefficients of one total-degree slice.
using Slice = std::map<MultiIndex, Rational>;

std::size_t total_degree(const MultiIndex& a);

class SeriesM {
public:
    /// Slice d, given every earlier slice of the same series.
    using SliceFn = std::function<Slice(std::size_t degree, std::span<const Slice> earlier)>;

    /// The zero series in `arity` variables.
    explicit SeriesM(std::size_t arity = 1);

    static SeriesM constant(std::size_t arity, const Rational& c);
    /// ξᵢ (0-based index).
    static SeriesM variable(std::size_t arity, std::size_t index);
    static SeriesM from_terms(std::size_t arity, const std::map<MultiIndex, Rational>& terms);
    static SeriesM from_slices(std::size_t arity, SliceFn f, std::optional<std::size_t> support = std::nullopt);
    /// p(ξ_index) viewed in `arity` variables.
    static SeriesM embed(const SeriesU& p, std::size_t arity, std::size_t index);

    std::size_t arity() const;
    Rational coeff(const MultiIndex& alpha) const;
    Slice slice(std::size_t degree) const;
    std::optional<std::size_t> support_bound() const;
    bool is_polynomial() const { return support_bound().has_value(); }

private:
    struct Node;
    explicit SeriesM(std::shared_ptr<Node> node);
    std::shared_ptr<Node> node_;
};

SeriesM add(const SeriesM& a, const SeriesM& b);
SeriesM sub(const SeriesM& a, const SeriesM& b);
SeriesM neg(const SeriesM& a);
SeriesM scale(const SeriesM& a, const Rational& c);
SeriesM mul(const SeriesM& a, const SeriesM& b);
/// ∂p/∂ξ_index (0-based index).
SeriesM derive(const SeriesM& p, std::size_t index);
SeriesM invert_unit(const SeriesM& p);
/// Divides by ξ_index as an exponent shift; every monomial must contain ξ_index.
SeriesM divide_by_variable(const SeriesM& p, std::size_t index);
/// Substitutes the constant c for ξ_index, dropping that variable. p must be a polynomial.
SeriesM substitute_constant(const SeriesM& p, std::size_t index, const Rational& c);
/// Arity-1 series as a univariate stream.
SeriesU to_univariate(const SeriesM& p);

inline SeriesM operator+(const SeriesM& a, const SeriesM& b) { return add(a, b); }
inline SeriesM operator-(const SeriesM& a, const SeriesM& b) { return sub(a, b); }
inline SeriesM operator-(const SeriesM& a) { return neg(a); }
inline SeriesM operator*(const SeriesM& a, const SeriesM& b) { return mul(a, b); }

/// Exact equality of all slices of total degree < degree_count.
bool equal_through(const SeriesM& a, const SeriesM& b, std::size_t degree_count);

/// (p(ξ+h) − p(ξ))/h as a series in (ξ, h), variables 0 and 1.
SeriesM shift_quotient(const SeriesU& p);

} // namespace exact
