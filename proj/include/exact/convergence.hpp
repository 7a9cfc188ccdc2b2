#pragma once

// Exact term-growth certificates for coefficient streams. A certificate
// (r, M, n) with |a_n|·rⁿ > M for arbitrarily large M refutes convergence of
// Σ a_n zⁿ at |z| = r by the term test.

#include <cstddef>
#include <optional>

#include <json.hpp>

#include "exact/fps.hpp"

namespace exact {

struct DivergenceCertificate {
    Rational r;
    Rational M;
    std::size_t n = 0;
    /// |a_n|·rⁿ
    Rational witness;

    /// Exact check that witness > M.
    bool self_consistent() const { return witness > M; }
};

/// |a_n|·rⁿ, exactly.
Rational term_magnitude(const SeriesU& s, const Rational& r, std::size_t n);

struct DivergenceResult {
    std::optional<DivergenceCertificate> certificate;
    /// Largest index examined.
    std::size_t scanned_through = 0;

    bool found() const { return certificate.has_value(); }
};

/// Least n <= nmax with |a_n|·rⁿ > M.
DivergenceResult certify_divergence(const SeriesU& s, const Rational& r, const Rational& M, std::size_t nmax);

struct DecayReport {
    bool pass = true;
    std::optional<std::size_t> first_violation;
};

/// |a_n|·rⁿ <= M for every n in [from_n, to_n].
DecayReport certify_term_decay(const SeriesU& s, const Rational& r, const Rational& M, std::size_t from_n,
                               std::size_t to_n);

/// Recomputes the witness from the series and rechecks it exceeds M.
bool revalidate(const DivergenceCertificate& cert, const SeriesU& s);

/// {"r": {"num","den"}, "M": {...}, "n": 40, "witness": {...}} with decimal-string integers.
nlohmann::json to_json(const DivergenceCertificate& cert);
DivergenceCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json rational_to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);

} // namespace exact
