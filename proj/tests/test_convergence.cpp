#include <doctest.h>

#include "exact/convergence.hpp"
#include "exact/errors.hpp"
#include "support/oracles.hpp"

using namespace exact;

namespace {

/// |a_n|·rⁿ from scratch with mpz/mpq, r = num/den.
mpq_class magnitude_oracle(const mpq_class& an, long num, long den, unsigned long n)
{
    mpz_class rn;
    mpz_class rd;
    mpz_pow_ui(rn.get_mpz_t(), mpz_class(num).get_mpz_t(), n);
    mpz_pow_ui(rd.get_mpz_t(), mpz_class(den).get_mpz_t(), n);
    mpq_class out = abs(an) * mpq_class(rn, rd);
    out.canonicalize();
    return out;
}

} // namespace

TEST_CASE("term_magnitude examples")
{
    CHECK(term_magnitude(SeriesU::factorial(), Rational(1, 10), 5) == Rational(3, 12500));
    CHECK(term_magnitude(SeriesU::geometric(), Rational(1, 2), 10) == Rational(1, 1024));
    CHECK(term_magnitude(SeriesU::polynomial({0, 5}), Rational(7), 3).is_zero());
    CHECK(term_magnitude(SeriesU::polynomial({0, -5}), Rational(2), 1) == Rational(10));
    CHECK_THROWS_AS(term_magnitude(SeriesU::geometric(), Rational(0), 3), RejectedInput);
    CHECK_THROWS_AS(term_magnitude(SeriesU::geometric(), Rational(-1), 3), RejectedInput);
}

TEST_CASE("certify_divergence examples")
{
    DivergenceResult f = certify_divergence(SeriesU::factorial(), Rational(1, 10), Rational(1000000), 100);
    REQUIRE(f.found());
    CHECK(f.certificate->n == 40);
    CHECK(f.certificate->witness.raw() == magnitude_oracle(oracle::factorial(39), 1, 10, 40));
    CHECK(f.certificate->self_consistent());

    DivergenceResult g = certify_divergence(SeriesU::geometric(), Rational(1, 2), Rational(1), 10000);
    CHECK_FALSE(g.found());
    CHECK(g.scanned_through == 10000);

    CHECK_FALSE(certify_divergence(SeriesU::exponential(), Rational(2), Rational(10), 10000).found());
    DivergenceResult e = certify_divergence(SeriesU::exponential(), Rational(2), Rational(3, 2), 10000);
    REQUIRE(e.found());
    CHECK(e.certificate->n == 1);
    CHECK(e.certificate->witness == Rational(2));
}

TEST_CASE("exact scan oracle agrees on the least factorial witness")
{
    for (long den : {1L, 10L, 100L}) {
        mpq_class M = 1000000;
        unsigned long least = 0;
        for (unsigned long n = 1; n <= 2000 && least == 0; ++n) {
            if (magnitude_oracle(oracle::factorial(n - 1), 1, den, n) > M) {
                least = n;
            }
        }
        DivergenceResult d = certify_divergence(SeriesU::factorial(), Rational(1, den), Rational(1000000), 2000);
        REQUIRE(d.found());
        CHECK(d.certificate->n == least);
    }
}

TEST_CASE("certify_term_decay examples")
{
    CHECK(certify_term_decay(SeriesU::geometric(), Rational(1, 2), Rational(1), 0, 1000).pass);
    CHECK(certify_term_decay(SeriesU::exponential(), Rational(1), Rational(1), 0, 500).pass);
    CHECK(certify_term_decay(SeriesU::factorial(), Rational(1, 10), Rational(1000000), 0, 39).pass);
    DecayReport fail = certify_term_decay(SeriesU::factorial(), Rational(1, 10), Rational(1000000), 0, 40);
    CHECK_FALSE(fail.pass);
    CHECK(fail.first_violation == std::size_t{40});
    CHECK_THROWS_AS(certify_term_decay(SeriesU::geometric(), Rational(1), Rational(1), 5, 4), RejectedInput);
}

TEST_CASE("property: certificates are sound and minimal")
{
    oracle::Rng rng(501);
    int found = 0;
    for (int i = 0; i < 30; ++i) {
        SeriesU s = i % 3 == 0 ? SeriesU::factorial() : oracle::random_series(rng);
        Rational r(oracle::uniform(rng, 1, 30), oracle::uniform(rng, 1, 20));
        Rational M(oracle::uniform(rng, 1, 100000), oracle::uniform(rng, 1, 7));
        DivergenceResult d = certify_divergence(s, r, M, 300);
        if (!d.found()) {
            CHECK(certify_term_decay(s, r, M, 0, 300).pass);
            continue;
        }
        ++found;
        const DivergenceCertificate& c = *d.certificate;
        CHECK(revalidate(c, s));
        CHECK(c.witness.raw() > M.raw());
        for (std::size_t n = 0; n < c.n; ++n) {
            CHECK(term_magnitude(s, r, n) <= M);
        }
    }
    CHECK(found > 5);
}

TEST_CASE("revalidate rejects tampered certificates")
{
    SeriesU f = SeriesU::factorial();
    DivergenceCertificate c = *certify_divergence(f, Rational(1, 10), Rational(1000000), 100).certificate;
    CHECK(revalidate(c, f));
    DivergenceCertificate wrong_n = c;
    wrong_n.n = 39;
    CHECK_FALSE(revalidate(wrong_n, f));
    DivergenceCertificate wrong_witness = c;
    wrong_witness.witness = wrong_witness.witness + Rational(1);
    CHECK_FALSE(revalidate(wrong_witness, f));
    CHECK_FALSE(revalidate(c, SeriesU::geometric()));
}

TEST_CASE("certificate JSON round-trip uses decimal strings")
{
    DivergenceCertificate c = *certify_divergence(SeriesU::factorial(), Rational(1, 10), Rational(1000000), 100).certificate;
    nlohmann::json j = to_json(c);
    CHECK(j["n"] == 40);
    CHECK(j["r"]["num"] == "1");
    CHECK(j["r"]["den"] == "10");
    CHECK(j["witness"]["num"].is_string());
    DivergenceCertificate back = certificate_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.n == c.n);
    CHECK(back.r == c.r);
    CHECK(back.M == c.M);
    CHECK(back.witness == c.witness);
    CHECK(rational_from_json(rational_to_json(Rational(-22, 7))) == Rational(-22, 7));
    CHECK_THROWS(rational_from_json(nlohmann::json{{"num", 1}, {"den", "2"}}));
}
