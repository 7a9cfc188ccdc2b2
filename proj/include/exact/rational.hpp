#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace exact {

/// Exact arbitrary-precision rational, always in lowest terms with a
/// positive denominator. Thin value wrapper over GMP's mpq_class.
class Rational {
public:
    Rational() = default;

    template <std::signed_integral I>
    Rational(I v) : value_(static_cast<long>(v)) {}

    template <std::unsigned_integral U>
    Rational(U v) : value_(static_cast<unsigned long>(v)) {}

    Rational(long num, long den);

    explicit Rational(mpq_class v);
    explicit Rational(const mpz_class& v) : value_(v) {}

    /// Parses "a", "-a", "a/b" (decimal integers, optional sign).
    static Rational parse(std::string_view text);

    static Rational factorial(unsigned long n);
    static Rational binomial(unsigned long n, unsigned long k);

    int sign() const { return sgn(value_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const;

    Rational abs() const;
    Rational inverse() const;
    Rational pow(long exponent) const;

    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }
    std::string numerator_string() const;
    std::string denominator_string() const;

    /// "a" for integers, "a/b" otherwise.
    std::string to_string() const;

    const mpq_class& raw() const { return value_; }

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const;

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// Smallest integer >= r.
long ceil_to_long(const Rational& r);

} // namespace exact
