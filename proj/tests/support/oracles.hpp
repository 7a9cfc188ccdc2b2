#pragma once

// Independent reference computations and random generators for the tests.
// Nothing here calls into the library's arithmetic: dense vectors and sparse
// exponent maps over mpq_class stand in for series and Puiseux elements.

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "exact/complexified.hpp"
#include "exact/fps.hpp"
#include "exact/puiseux.hpp"
#include "exact/rational.hpp"

namespace oracle {

using exact::Rational;

using Dense = std::vector<mpq_class>;
/// exponent -> coefficient, zero coefficients absent
using Terms = std::map<mpq_class, mpq_class>;

inline mpz_class factorial(unsigned long n)
{
    mpz_class f = 1;
    for (unsigned long k = 2; k <= n; ++k) {
        f *= k;
    }
    return f;
}

/// Pascal's triangle row by row.
inline mpz_class binomial(unsigned long n, unsigned long k)
{
    if (k > n) {
        return 0;
    }
    std::vector<mpz_class> row{1};
    for (unsigned long i = 1; i <= n; ++i) {
        std::vector<mpz_class> next(i + 1, 1);
        for (unsigned long j = 1; j < i; ++j) {
            next[j] = row[j - 1] + row[j];
        }
        row = std::move(next);
    }
    return row[k];
}

inline mpq_class q(const Rational& r) { return r.raw(); }
inline Rational r(const mpq_class& v) { return Rational(v); }

inline Dense dense(const exact::SeriesU& s, std::size_t n)
{
    Dense out;
    for (std::size_t k = 0; k < n; ++k) {
        out.push_back(q(s.coeff(k)));
    }
    return out;
}

inline Dense dense_add(const Dense& a, const Dense& b)
{
    Dense out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
    }
    return out;
}

inline Dense dense_mul(const Dense& a, const Dense& b, std::size_t n)
{
    Dense out(n);
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

/// p(ζ + c) by repeated multiplication with (c + ζ).
inline Dense dense_taylor_shift(const Dense& p, const mpq_class& c)
{
    Dense out(p.size());
    Dense power{1};
    for (std::size_t d = 0; d < p.size(); ++d) {
        for (std::size_t k = 0; k < power.size(); ++k) {
            out[k] += p[d] * power[k];
        }
        power = dense_mul(power, Dense{c, 1}, power.size() + 1);
    }
    return out;
}

inline Terms terms_of(const exact::Puiseux& a, const Rational& below)
{
    Terms out;
    for (const auto& [e, c] : a.terms_below(below)) {
        out[q(e)] = q(c);
    }
    return out;
}

inline Terms terms_add(Terms a, const Terms& b)
{
    for (const auto& [e, c] : b) {
        a[e] += c;
        if (a[e] == 0) {
            a.erase(e);
        }
    }
    return a;
}

inline Terms terms_scale(Terms a, const mpq_class& c)
{
    if (c == 0) {
        return {};
    }
    for (auto& [e, v] : a) {
        v *= c;
    }
    return a;
}

inline Terms terms_mul(const Terms& a, const Terms& b, const mpq_class& below)
{
    Terms out;
    for (const auto& [ea, ca] : a) {
        for (const auto& [eb, cb] : b) {
            mpq_class e = ea + eb;
            if (e < below) {
                out[e] += ca * cb;
            }
        }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

/// Σ p_α x^α below t^order, monomial by monomial, for p of total degree <= max_degree.
inline Terms box_eval(const exact::SeriesM& p, const std::vector<exact::Puiseux>& x, const Rational& order,
                      std::size_t max_degree)
{
    mpq_class below = q(order);
    Terms acc;
    std::vector<Terms> coords;
    for (const auto& c : x) {
        coords.push_back(terms_of(c, order));
    }
    for (std::size_t d = 0; d <= max_degree; ++d) {
        for (const auto& [alpha, c] : p.slice(d)) {
            Terms mono{{0, 1}};
            for (std::size_t i = 0; i < alpha.size(); ++i) {
                for (std::uint32_t k = 0; k < alpha[i]; ++k) {
                    mono = terms_mul(mono, coords[i], below);
                }
            }
            acc = terms_add(acc, terms_scale(mono, q(c)));
        }
    }
    return acc;
}

// ---------------------------------------------------------------------------
// generators

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Rational random_rational(Rng& rng, long span = 9, long den = 6)
{
    return Rational(uniform(rng, -span, span), uniform(rng, 1, den));
}

inline Rational random_nonzero_rational(Rng& rng, long span = 9, long den = 6)
{
    long n = 0;
    while (n == 0) {
        n = uniform(rng, -span, span);
    }
    return Rational(n, uniform(rng, 1, den));
}

inline std::vector<Rational> random_coeffs(Rng& rng, std::size_t max_degree)
{
    std::vector<Rational> c(static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_degree))) + 1);
    for (auto& x : c) {
        x = random_rational(rng);
    }
    return c;
}

inline exact::SeriesU random_polynomial(Rng& rng, std::size_t max_degree)
{
    return exact::SeriesU::polynomial(random_coeffs(rng, max_degree));
}

/// Infinite series with rational coefficients given by a random
/// linear-times-geometric rule, so laziness is exercised.
inline exact::SeriesU random_series(Rng& rng)
{
    Rational a = random_rational(rng);
    Rational b = random_rational(rng);
    Rational ratio = random_nonzero_rational(rng, 3, 4);
    return exact::SeriesU::from_function([a, b, ratio](std::size_t n) {
        return (a + b * Rational(static_cast<long>(n))) * ratio.pow(static_cast<long>(n % 7));
    });
}

inline exact::SeriesM random_bivariate(Rng& rng, std::size_t max_degree)
{
    std::map<exact::MultiIndex, Rational> terms;
    long count = uniform(rng, 1, 6);
    for (long i = 0; i < count; ++i) {
        auto a = static_cast<std::uint32_t>(uniform(rng, 0, static_cast<long>(max_degree)));
        auto b = static_cast<std::uint32_t>(uniform(rng, 0, static_cast<long>(max_degree) - a));
        terms[{a, b}] = random_rational(rng);
    }
    return exact::SeriesM::from_terms(2, terms);
}

/// Finite Puiseux element with exponents in [lo, hi] on a random grid 1/1, 1/2, 1/3, 1/6.
inline exact::Puiseux random_puiseux(Rng& rng, long lo = -2, long hi = 4, bool nonzero = true)
{
    static const long grids[] = {1, 2, 3, 6};
    long ram = grids[uniform(rng, 0, 3)];
    std::map<Rational, Rational> terms;
    long count = uniform(rng, nonzero ? 1 : 0, 4);
    for (long i = 0; i < count; ++i) {
        Rational e(uniform(rng, lo * ram, hi * ram), ram);
        terms[e] = random_nonzero_rational(rng);
    }
    return exact::Puiseux::from_terms(terms);
}

/// Finite element with |x| < t: valuation > 1, or valuation 1 with |leading| < 1.
inline exact::Puiseux random_box_point(Rng& rng)
{
    static const long grids[] = {1, 2, 3};
    long ram = grids[uniform(rng, 0, 2)];
    std::map<Rational, Rational> terms;
    if (uniform(rng, 0, 1) == 0) {
        terms[Rational(1)] = Rational(uniform(rng, -4, 4), 5);
    }
    long count = uniform(rng, 0, 3);
    for (long i = 0; i < count; ++i) {
        terms[Rational(uniform(rng, ram + 1, 4 * ram), ram)] = random_nonzero_rational(rng);
    }
    return exact::Puiseux::from_terms(terms);
}

/// Finite a·t + (higher terms) with |a| <= 3/5, so two of them form a point of the disc.
inline exact::Puiseux disc_coordinate(Rng& rng)
{
    std::map<Rational, Rational> terms;
    terms[Rational(1)] = Rational(uniform(rng, -3, 3), 5);
    long ram = uniform(rng, 1, 3);
    for (long i = uniform(rng, 0, 2); i > 0; --i) {
        terms[Rational(uniform(rng, ram + 1, 3 * ram), ram)] = random_nonzero_rational(rng);
    }
    return exact::Puiseux::from_terms(terms);
}

inline exact::DiscPoint random_disc_point(Rng& rng) { return {{disc_coordinate(rng), disc_coordinate(rng)}}; }

} // namespace oracle
