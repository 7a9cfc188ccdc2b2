#pragma once

#include <cstddef>
#include <vector>

#include "exact/puiseux.hpp"
#include "exact/rational.hpp"

namespace exact::detail {

// Dense Puiseux prefix over a fixed ramification: index k holds the
// coefficient of t^{k/ram} for 0 <= k < length. Only nonnegative exponents
// are representable, which is all evaluation on the box or disc needs.
class Truncated {
public:
    Truncated(long ram, std::size_t length) : ram_(ram), coeffs_(length) {}

    static Truncated constant(const Rational& c, long ram, std::size_t length);
    /// Throws PreconditionViolation if x has a nonzero term at a negative exponent.
    static Truncated of(const Puiseux& x, long ram, std::size_t length);

    long ramification() const { return ram_; }
    std::size_t length() const { return coeffs_.size(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    Truncated& operator+=(const Truncated& o);
    Truncated& operator-=(const Truncated& o);
    Truncated scaled(const Rational& c) const;
    friend Truncated operator*(const Truncated& a, const Truncated& b);

    Puiseux to_puiseux(const Rational& precision) const;

private:
    long ram_;
    std::vector<Rational> coeffs_;
};

/// Number of grid points k with k/ram < precision.
std::size_t grid_length(const Rational& precision, long ram);

} // namespace exact::detail
