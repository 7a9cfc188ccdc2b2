#include "exact/rational.hpp"

#include <cctype>

#include "exact/errors.hpp"

namespace exact {

Rational::Rational(long num, long den) : value_(num, den)
{
    if (den == 0) {
        throw DivisionByZero("rational with zero denominator");
    }
    value_.canonicalize();
}

Rational::Rational(mpq_class v) : value_(std::move(v))
{
    value_.canonicalize();
}

namespace {

bool is_decimal_integer(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        s.remove_prefix(1);
    }
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

mpz_class parse_integer(std::string_view s)
{
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    return mpz_class(std::string(s), 10);
}

} // namespace

Rational Rational::parse(std::string_view text)
{
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_decimal_integer(num) || !is_decimal_integer(den) || den.front() == '-' || den.front() == '+') {
        throw RejectedInput("malformed rational literal '" + std::string(text) + "'");
    }
    mpz_class d = parse_integer(den);
    if (d == 0) {
        throw DivisionByZero("rational literal '" + std::string(text) + "' has zero denominator");
    }
    return Rational(mpq_class(parse_integer(num), d));
}

Rational Rational::factorial(unsigned long n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

Rational Rational::binomial(unsigned long n, unsigned long k)
{
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(b);
}

bool Rational::is_integer() const
{
    return value_.get_den() == 1;
}

Rational Rational::abs() const
{
    return Rational(mpq_class(::abs(value_)));
}

Rational Rational::inverse() const
{
    if (is_zero()) {
        throw DivisionByZero("inverse of zero rational");
    }
    return Rational(mpq_class(1 / value_));
}

Rational Rational::pow(long exponent) const
{
    if (exponent < 0) {
        return inverse().pow(-exponent);
    }
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return Rational(mpq_class(num, den));
}

std::string Rational::numerator_string() const
{
    return value_.get_num().get_str(10);
}

std::string Rational::denominator_string() const
{
    return value_.get_den().get_str(10);
}

std::string Rational::to_string() const
{
    return value_.get_str(10);
}

Rational& Rational::operator+=(const Rational& o)
{
    value_ += o.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o)
{
    value_ -= o.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o)
{
    value_ *= o.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero()) {
        throw DivisionByZero("rational division by zero");
    }
    value_ /= o.value_;
    return *this;
}

Rational Rational::operator-() const
{
    return Rational(mpq_class(-value_));
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    int c = cmp(a.value_, b.value_);
    if (c < 0) {
        return std::strong_ordering::less;
    }
    if (c > 0) {
        return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r)
{
    return os << r.to_string();
}

Rational min(const Rational& a, const Rational& b)
{
    return b < a ? b : a;
}

Rational max(const Rational& a, const Rational& b)
{
    return a < b ? b : a;
}

long ceil_to_long(const Rational& r)
{
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), r.raw().get_num_mpz_t(), r.raw().get_den_mpz_t());
    return c.get_si();
}

} // namespace exact
