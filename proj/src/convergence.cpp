#include "exact/convergence.hpp"

#include "exact/errors.hpp"

namespace exact {

namespace {

void require_positive(const Rational& r, const char* what)
{
    if (r.sign() <= 0) {
        throw RejectedInput(std::string(what) + " must be positive, got " + r.to_string());
    }
}

} // namespace

Rational term_magnitude(const SeriesU& s, const Rational& r, std::size_t n)
{
    require_positive(r, "radius");
    Rational a = s.coeff(n);
    if (a.is_zero()) {
        return a;
    }
    return a.abs() * r.pow(static_cast<long>(n));
}

DivergenceResult certify_divergence(const SeriesU& s, const Rational& r, const Rational& M, std::size_t nmax)
{
    require_positive(r, "radius");
    require_positive(M, "bound");
    DivergenceResult result;
    // r^n is carried along instead of recomputed per index.
    Rational rn(1);
    for (std::size_t n = 0; n <= nmax; ++n) {
        if (n > 0) {
            rn *= r;
        }
        result.scanned_through = n;
        Rational a = s.coeff(n);
        if (a.is_zero()) {
            continue;
        }
        Rational magnitude = a.abs() * rn;
        if (magnitude > M) {
            result.certificate = DivergenceCertificate{r, M, n, std::move(magnitude)};
            return result;
        }
    }
    return result;
}

DecayReport certify_term_decay(const SeriesU& s, const Rational& r, const Rational& M, std::size_t from_n,
                               std::size_t to_n)
{
    require_positive(r, "radius");
    if (from_n > to_n) {
        throw RejectedInput("certify_term_decay: empty index range");
    }
    DecayReport report;
    Rational rn = r.pow(static_cast<long>(from_n));
    for (std::size_t n = from_n; n <= to_n; ++n) {
        if (n > from_n) {
            rn *= r;
        }
        if (s.coeff(n).abs() * rn > M) {
            report.pass = false;
            report.first_violation = n;
            return report;
        }
    }
    return report;
}

bool revalidate(const DivergenceCertificate& cert, const SeriesU& s)
{
    return cert.self_consistent() && term_magnitude(s, cert.r, cert.n) == cert.witness;
}

nlohmann::json rational_to_json(const Rational& q)
{
    return {{"num", q.numerator_string()}, {"den", q.denominator_string()}};
}

Rational rational_from_json(const nlohmann::json& j)
{
    return Rational::parse(j.at("num").get<std::string>() + "/" + j.at("den").get<std::string>());
}

nlohmann::json to_json(const DivergenceCertificate& cert)
{
    return {{"r", rational_to_json(cert.r)},
            {"M", rational_to_json(cert.M)},
            {"n", cert.n},
            {"witness", rational_to_json(cert.witness)}};
}

DivergenceCertificate certificate_from_json(const nlohmann::json& j)
{
    return {rational_from_json(j.at("r")), rational_from_json(j.at("M")), j.at("n").get<std::size_t>(),
            rational_from_json(j.at("witness"))};
}

} // namespace exact
