#include <doctest.h>

#include "exact/errors.hpp"
#include "exact/ode.hpp"
#include "support/oracles.hpp"

using namespace exact;

namespace {

SeriesU z_pow(std::size_t k) { return SeriesU::monomial(1, k); }

bool all_zero(const std::vector<Rational>& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& c) { return c.is_zero(); });
}

} // namespace

TEST_CASE("flagship equation yields a_n = (n-1)! for 1 <= n <= 100")
{
    LinearODE ode = LinearODE::flagship();
    CHECK(equal_through(ode.A, z_pow(2), 10));
    CHECK(equal_through(ode.B, SeriesU::constant(-1), 10));
    CHECK(equal_through(ode.C, -z_pow(1), 10));

    FormalSolution sol = solve(ode);
    CHECK(sol.regime == Regime::unique);
    CHECK(sol.F.coeff(0).is_zero());
    for (unsigned long n = 1; n <= 100; ++n) {
        CHECK(sol.F.coeff(n).numerator() == oracle::factorial(n - 1));
        CHECK(sol.F.coeff(n).is_integer());
    }
}

TEST_CASE("exponential initial value problem")
{
    LinearODE ode{SeriesU::constant(1), SeriesU::constant(-1), SeriesU()};
    CHECK(detect_regime(ode) == Regime::ivp);
    FormalSolution sol = solve(ode, Rational(1));
    for (unsigned long n = 0; n < 40; ++n) {
        CHECK(sol.F.coeff(n).denominator() == oracle::factorial(n));
        CHECK(sol.F.coeff(n).numerator() == 1);
    }
    CHECK(all_zero(residual(ode, SeriesU::exponential(), 50)));
    CHECK(solve(ode, Rational(-3, 7)).F.coeff(0) == Rational(-3, 7));
}

TEST_CASE("algebraic equation A = 0")
{
    LinearODE ode{SeriesU(), SeriesU::constant(1), SeriesU::geometric()};
    FormalSolution sol = solve(ode);
    CHECK(sol.regime == Regime::unique);
    CHECK(equal_through(sol.F, SeriesU::geometric(), 50));
}

TEST_CASE("regime errors")
{
    CHECK_THROWS_AS(solve(LinearODE{z_pow(1), z_pow(2), SeriesU::constant(1)}), SingularEquation);
    CHECK_THROWS_AS(detect_regime(LinearODE{SeriesU(), SeriesU(), SeriesU()}), SingularEquation);
    CHECK_THROWS_AS(solve(LinearODE::flagship(), Rational(1)), RejectedInput);
    CHECK_THROWS_AS(solve(LinearODE{SeriesU::constant(1), SeriesU(), SeriesU()}), RejectedInput);
    // B(0) + n·A'(0) = 0 at n = 3
    CHECK_THROWS_AS(solve(LinearODE{z_pow(1), SeriesU::constant(-3), SeriesU::geometric()}), SingularEquation);
    CHECK(to_string(Regime::unique) == "unique");
    CHECK(to_string(Regime::ivp) == "ivp");
}

TEST_CASE("residual examples")
{
    LinearODE ode = LinearODE::flagship();
    SeriesU F = solve(ode).F;
    std::vector<Rational> r = residual(ode, F, 200);
    CHECK(r.size() == 200);
    CHECK(all_zero(r));

    SeriesU perturbed = with_coeff(F, 5, F.coeff(5) + Rational(1));
    std::vector<Rational> pr = residual(ode, perturbed, 10);
    CHECK(first_nonzero(pr) == std::size_t{5});
    CHECK(pr[5] == Rational(-1));
    // z²F′ carries the perturbation one index up
    CHECK(pr[6] == Rational(5));
    CHECK(first_nonzero(residual(ode, SeriesU::factorial(), 120)) == std::nullopt);
}

TEST_CASE("taylor_uniqueness_witness examples")
{
    LinearODE ode = LinearODE::flagship();
    SeriesU F = solve(ode).F;
    SeriesU G = SeriesU::from_function([](std::size_t n) { return n == 0 ? Rational(0) : Rational::factorial(n - 1); });
    UniquenessWitness w = taylor_uniqueness_witness(ode, F, G, 100);
    CHECK(w.equal);
    CHECK(w.through == 100);
    CHECK(taylor_uniqueness_witness(ode, F, F, 37).equal);
    CHECK(taylor_uniqueness_witness(ode, F, solve(ode).F, 60).equal);

    CHECK_THROWS_AS(taylor_uniqueness_witness(ode, F, with_coeff(F, 3, 0), 10), PreconditionViolation);
    LinearODE ivp{SeriesU::constant(1), SeriesU::constant(-1), SeriesU()};
    CHECK_THROWS_AS(taylor_uniqueness_witness(ivp, SeriesU::exponential(), SeriesU::exponential(), 10), RejectedInput);
}

TEST_CASE("property: random unique-regime equations have zero residual through 60")
{
    oracle::Rng rng(401);
    int solved = 0;
    for (int i = 0; i < 60 && solved < 25; ++i) {
        std::vector<Rational> a = oracle::random_coeffs(rng, 4);
        a[0] = 0;
        std::vector<Rational> b = oracle::random_coeffs(rng, 4);
        b[0] = oracle::random_nonzero_rational(rng);
        LinearODE ode{SeriesU::polynomial(a), SeriesU::polynomial(b), oracle::random_polynomial(rng, 4)};
        CHECK(detect_regime(ode) == Regime::unique);
        // resonance: B(0) + n·A'(0) = 0 for a positive integer n
        bool resonant = a.size() > 1 && !a[1].is_zero() && (-b[0] / a[1]).is_integer() && -b[0] / a[1] > Rational(0);
        if (resonant) {
            CHECK_THROWS_AS(solve(ode).F.coeff(60), SingularEquation);
            continue;
        }
        ++solved;
        CHECK(all_zero(residual(ode, solve(ode).F, 61)));
    }
    CHECK(solved == 25);
}

TEST_CASE("property: ivp solutions start at the supplied initial value")
{
    oracle::Rng rng(402);
    for (int i = 0; i < 15; ++i) {
        std::vector<Rational> a = oracle::random_coeffs(rng, 4);
        a[0] = oracle::random_nonzero_rational(rng);
        LinearODE ode{SeriesU::polynomial(a), oracle::random_polynomial(rng, 4), oracle::random_polynomial(rng, 4)};
        Rational initial = oracle::random_rational(rng);
        FormalSolution sol = solve(ode, initial);
        CHECK(sol.regime == Regime::ivp);
        CHECK(sol.F.coeff(0) == initial);
        CHECK(all_zero(residual(ode, sol.F, 40)));
    }
}
