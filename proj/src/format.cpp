#include "exact/format.hpp"

namespace exact::format {

std::string power(const std::string& var, const Rational& exponent)
{
    if (exponent.is_zero()) {
        return {};
    }
    if (exponent == Rational(1)) {
        return var;
    }
    if (exponent.is_integer() && exponent.sign() > 0) {
        return var + "^" + exponent.to_string();
    }
    return var + "^(" + exponent.to_string() + ")";
}

void append_term(std::string& out, const Rational& c, const std::string& monomial)
{
    if (c.is_zero()) {
        return;
    }
    if (out.empty()) {
        if (c.sign() < 0) {
            out += "-";
        }
    } else {
        out += c.sign() < 0 ? " - " : " + ";
    }
    Rational magnitude = c.abs();
    if (monomial.empty()) {
        out += magnitude.to_string();
    } else if (magnitude == Rational(1)) {
        out += monomial;
    } else {
        out += magnitude.to_string() + "*" + monomial;
    }
}

} // namespace exact::format
