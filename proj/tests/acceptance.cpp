// Acceptance gate: one [PASS]/[FAIL] line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "exact/cli/expr.hpp"
#include "exact/cli/parser.hpp"
#include "exact/complexified.hpp"
#include "exact/convergence.hpp"
#include "exact/errors.hpp"
#include "exact/ode.hpp"
#include "exact/puiseux.hpp"
#include "support/oracles.hpp"
#include "support/process.hpp"

using namespace exact;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

struct Criterion {
    int id;
    std::string name;
    double seconds_limit; // 0: no limit
    std::function<Outcome()> run;
};

mpq_class pow_q(long num, long den, unsigned long n)
{
    mpz_class a;
    mpz_class b;
    mpz_pow_ui(a.get_mpz_t(), mpz_class(num).get_mpz_t(), n);
    mpz_pow_ui(b.get_mpz_t(), mpz_class(den).get_mpz_t(), n);
    mpq_class out(a, b);
    out.canonicalize();
    return out;
}

Outcome flagship_recurrence()
{
    Outcome o;
    SeriesU F = solve(LinearODE::flagship()).F;
    for (unsigned long n = 1; n <= 100; ++n) {
        o.require(F.coeff(n).raw() == mpq_class(oracle::factorial(n - 1)), "a_" + std::to_string(n) + " != (n-1)!");
    }
    o.detail = o.pass ? "a_n = (n-1)! for 1 <= n <= 100" : o.detail;
    return o;
}

Outcome residual_zero()
{
    Outcome o;
    LinearODE ode = LinearODE::flagship();
    SeriesU F = solve(ode).F;
    std::vector<Rational> r = residual(ode, F, 201);
    auto bad = first_nonzero(r);
    o.require(r.size() == 201 && !bad, "library residual nonzero");

    // independent: z²F′ − F + z on dense coefficients
    oracle::Dense a = oracle::dense(F, 202);
    for (std::size_t n = 0; n <= 200; ++n) {
        mpq_class zsq_dF = n >= 1 ? mpq_class(static_cast<long>(n - 1)) * a[n - 1] : mpq_class(0);
        mpq_class value = zsq_dF - a[n] + (n == 1 ? 1 : 0);
        o.require(value == 0, "oracle residual nonzero at z^" + std::to_string(n));
    }
    o.detail = o.pass ? "A*F' + B*F - C = 0 through z^200" : o.detail;
    return o;
}

Outcome divergence_certificate()
{
    Outcome o;
    SeriesU F = solve(LinearODE::flagship()).F;
    const mpq_class M = 1000000;
    DivergenceResult d = certify_divergence(F, Rational(1, 10), Rational(1000000), 100);
    o.require(d.found() && d.certificate->n == 40, "least index is not 40");
    if (!o.pass) {
        return o;
    }
    // exact scan oracle: 39!/10^40 > 10^6 and every earlier term <= 10^6
    mpq_class w40 = mpq_class(oracle::factorial(39)) * pow_q(1, 10, 40);
    o.require(d.certificate->witness.raw() == w40 && w40 > M, "witness differs from 39!/10^40");
    for (unsigned long n = 1; n < 40; ++n) {
        o.require(mpq_class(oracle::factorial(n - 1)) * pow_q(1, 10, n) <= M, "not minimal");
    }
    std::ostringstream summary;
    summary << "r=1/10: n=40";
    for (long den : {1L, 100L, 1000L}) {
        DivergenceResult e = certify_divergence(F, Rational(1, den), Rational(1000000), 5000);
        o.require(e.found(), "no certificate for r = 1/" + std::to_string(den));
        if (!e.found()) {
            return o;
        }
        const auto& c = *e.certificate;
        mpq_class w = mpq_class(oracle::factorial(c.n - 1)) * pow_q(1, den, c.n);
        o.require(c.n <= 5000 && w == c.witness.raw() && w > M && revalidate(c, F),
                  "certificate for r = 1/" + std::to_string(den) + " does not re-validate");
        summary << "; r=1/" << den << ": n=" << c.n;
    }
    o.detail = o.pass ? summary.str() : o.detail;
    return o;
}

Outcome ring_embedding()
{
    Outcome o;
    oracle::Rng rng(9001);
    int checks = 0;
    for (int i = 0; i < 20; ++i) {
        SeriesM p = SeriesM::embed(oracle::random_polynomial(rng, 8), 1, 0);
        SeriesM q = SeriesM::embed(oracle::random_polynomial(rng, 8), 1, 0);
        for (int j = 0; j < 5; ++j) {
            BoxPoint x{{oracle::random_box_point(rng)}};
            Puiseux fp = eval_box(p, x, 20);
            Puiseux fq = eval_box(q, x, 20);
            o.require(agree_below(eval_box(p + q, x, 20), fp + fq, 20), "f_{p+q} != f_p + f_q");
            o.require(agree_below(eval_box(p * q, x, 20), fp * fq, 20), "f_{pq} != f_p f_q");
            o.require(oracle::terms_of(fp, 20) == oracle::box_eval(p, x.coords, 20, 8), "f_p differs from oracle");
            ++checks;
        }
    }
    o.detail = o.pass ? std::to_string(checks) + " (p, q, x) triples exact through t^20" : o.detail;
    return o;
}

Outcome derivative_transfer()
{
    Outcome o;
    oracle::Rng rng(9002);
    for (int i = 0; i < 10; ++i) {
        SeriesU pu = oracle::random_polynomial(rng, 8);
        SeriesM p = SeriesM::embed(pu, 1, 0);
        SeriesM dp = SeriesM::embed(derive(pu), 1, 0);
        Puiseux x = oracle::random_box_point(rng);
        long vh = 1 + i % 3;
        Puiseux h = Puiseux::monomial(Rational(oracle::uniform(rng, 1, 9) * (i % 2 ? -1 : 1), 100), vh);
        Rational boosted(20 + vh);
        Puiseux quotient = (eval_box(p, BoxPoint{{x + h}}, boosted) - eval_box(p, BoxPoint{{x}}, boosted)) * field_inv(h);
        Puiseux delta = quotient - eval_box(dp, BoxPoint{{x}}, 20);
        o.require(valuation(delta, 20).certainly_at_least(Rational(vh)),
                  "valuation gap below valuation(h) = " + std::to_string(vh));
    }
    o.detail = o.pass ? "10 instances, valuation(h) in {1, 2, 3}" : o.detail;
    return o;
}

Outcome k_differentiability()
{
    Outcome o;
    oracle::Rng rng(9003);
    for (int i = 0; i < 20; ++i) {
        SeriesU p = i == 0 ? solve(LinearODE::flagship()).F : oracle::random_polynomial(rng, 8);
        CoordinateSeries cs = coordinate_series(ComplexSeries(p));
        CrReport r = cr_check(cs.re, cs.im, 12);
        o.require(r.pass, "cr_check failed on instance " + std::to_string(i));
    }
    for (int i = 0; i < 10; ++i) {
        SeriesU p = i == 0 ? SeriesU::factorial() : oracle::random_series(rng);
        DiscPoint z0 = oracle::random_disc_point(rng);
        long vh = 1 + i % 3;
        ComplexPuiseux h{Puiseux::monomial(Rational(oracle::uniform(rng, -1, 1), 10), vh),
                         Puiseux::monomial(Rational(oracle::uniform(rng, 1, 5), 50), vh)};
        DiffQuotientReport r = diff_quotient_check(ComplexSeries(p), z0, h, 20);
        o.require(r.holds && r.delta_valuation.certainly_at_least(Rational(vh)),
                  "difference-quotient gap below valuation(h) on instance " + std::to_string(i));
    }
    o.detail = o.pass ? "CR through degree 12 on 20 series; 10 difference quotients" : o.detail;
    return o;
}

Outcome homogeneous_decomposition()
{
    Outcome o;
    for (unsigned long n = 1; n <= 10; ++n) {
        auto [re, im] = homog_decompose(n);
        for (unsigned long k = 0; k <= n; ++k) {
            MultiIndex alpha{static_cast<std::uint32_t>(n - k), static_cast<std::uint32_t>(k)};
            mpz_class c = oracle::binomial(n, k);
            mpz_class want_re = k % 2 ? 0 : (k % 4 == 0 ? c : mpz_class(-c));
            mpz_class want_im = k % 2 ? (k % 4 == 1 ? c : mpz_class(-c)) : 0;
            o.require(re.coeff(alpha).raw() == want_re && im.coeff(alpha).raw() == want_im,
                      "(x + iy)^" + std::to_string(n) + " mismatch");
        }
        o.require(re.slice(n + 1).empty() && im.slice(n - 1).empty(), "not homogeneous");
    }
    for (std::size_t a = 1; a <= 9; ++a) {
        for (std::size_t b = 1; a + b <= 10; ++b) {
            auto [ra, ia] = homog_decompose(a);
            auto [rb, ib] = homog_decompose(b);
            auto [rs, is] = homog_decompose(a + b);
            o.require(equal_through(ra * rb - ia * ib, rs, 12) && equal_through(ra * ib + ia * rb, is, 12),
                      "multiplicativity fails at " + std::to_string(a) + " + " + std::to_string(b));
        }
    }
    o.detail = o.pass ? "1 <= n <= 10 reassembled; multiplicative for a + b <= 10" : o.detail;
    return o;
}

Outcome ordered_field()
{
    Outcome o;
    Puiseux t = Puiseux::t();
    o.require(compare(Puiseux(), t, 20).order == Order::less, "0 < t fails");
    o.require(compare(t, Puiseux(Rational(1, 1000000)), 20).order == Order::less, "t < 10^-6 fails");
    Puiseux cube = Puiseux::monomial(1, Rational(1, 3));
    Puiseux sq = Puiseux::monomial(1, Rational(1, 2));
    o.require(compare(cube, sq, 20).order == Order::greater && compare(sq, t, 20).order == Order::greater,
              "t^(1/3) > t^(1/2) > t fails");

    oracle::Rng rng(9004);
    int triples = 0;
    while (triples < 50) {
        Puiseux a = oracle::random_puiseux(rng);
        Puiseux b = oracle::random_puiseux(rng);
        Puiseux c = oracle::random_puiseux(rng);
        Comparison ab = compare(a, b, 20);
        if (ab.order == Order::equal_through) {
            continue;
        }
        ++triples;
        const Puiseux& lo = ab.order == Order::less ? a : b;
        const Puiseux& hi = ab.order == Order::less ? b : a;
        o.require(compare(lo + c, hi + c, 20).order == Order::less, "a < b but a + c >= b + c");
        Puiseux pa = decided_sign(a, 20) == 1 ? a : -a;
        Puiseux pb = decided_sign(b, 20) == 1 ? b : -b;
        o.require(compare(Puiseux(), pa * pb, 40).order == Order::less, "0 < a, 0 < b but ab <= 0");
    }
    for (int i = 0; i < 30; ++i) {
        Puiseux a = oracle::random_puiseux(rng);
        if (i % 3 == 0) {
            a = a * field_inv(Puiseux(1) - Puiseux(oracle::random_rational(rng)) * sq);
        }
        o.require(agree_below(a * field_inv(a), Puiseux(1), 50), "a * inv(a) != 1 through t^50");
    }
    o.detail = o.pass ? "axioms on 50 triples; 30 inverses through t^50" : o.detail;
    return o;
}

Outcome cli_end_to_end()
{
    Outcome o;
    proc::Run run =
        proc::run(std::string(EXACTSERIES_BIN) + " counterexample --order 100 --r 1/10 --M 1000000 --nmax 100 --json");
    o.require(run.exit_code == 0, "counterexample exited with " + std::to_string(run.exit_code));
    if (!o.pass) {
        return o;
    }
    nlohmann::json j = nlohmann::json::parse(run.out);
    const auto& cert = j.at("certificate");
    o.require(j.at("pass") == true && j.at("stages").size() == 4, "JSON does not report four passing stages");
    // recompute |a_n|·rⁿ from the JSON fields alone
    unsigned long n = cert.at("n").get<unsigned long>();
    mpq_class r(mpz_class(cert.at("r").at("num").get<std::string>()), mpz_class(cert.at("r").at("den").get<std::string>()));
    mpq_class M(mpz_class(cert.at("M").at("num").get<std::string>()), mpz_class(cert.at("M").at("den").get<std::string>()));
    mpq_class witness(mpz_class(cert.at("witness").at("num").get<std::string>()),
                      mpz_class(cert.at("witness").at("den").get<std::string>()));
    r.canonicalize();
    M.canonicalize();
    witness.canonicalize();
    mpq_class rn = 1;
    for (unsigned long k = 0; k < n; ++k) {
        rn *= r;
    }
    mpq_class recomputed = mpq_class(oracle::factorial(n - 1)) * rn;
    o.require(n == 40 && r == mpq_class(1, 10) && M == 1000000, "certificate parameters differ");
    o.require(recomputed == witness && recomputed > M, "witness does not re-validate");

    std::ifstream in(CORPUS_PATH);
    int lines = 0;
    for (std::string line; std::getline(in, line);) {
        if (line.empty()) {
            continue;
        }
        ++lines;
        try {
            cli::Expr e = cli::parse(line);
            std::string once = cli::render(e);
            o.require(cli::parse(once) == e && cli::render(cli::parse(once)) == once, "round-trip fails: " + line);
        } catch (const Error& e) {
            o.require(false, "corpus line rejected: " + line);
        }
    }
    o.require(lines == 50, "corpus has " + std::to_string(lines) + " expressions");
    o.detail = o.pass ? "exit 0, witness 39!/10^40 re-validated, 50-expression round-trip" : o.detail;
    return o;
}

} // namespace

int main()
{
    std::vector<Criterion> criteria{
        {1, "flagship recurrence", 1.0, flagship_recurrence},
        {2, "residual zero", 2.0, residual_zero},
        {3, "divergence certificate", 5.0, divergence_certificate},
        {4, "ring-embedding transfer", 0.0, ring_embedding},
        {5, "derivative transfer", 0.0, derivative_transfer},
        {6, "K-differentiability", 0.0, k_differentiability},
        {7, "homogeneous decomposition", 0.0, homogeneous_decomposition},
        {8, "ordered field", 0.0, ordered_field},
        {9, "CLI end-to-end", 10.0, cli_end_to_end},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.seconds_limit > 0 && seconds >= c.seconds_limit) {
            o.pass = false;
            o.detail = "runtime over the limit; " + o.detail;
        }
        failures += o.pass ? 0 : 1;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.3f s", seconds);
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.id << " " << c.name << " (" << timing
                  << (c.seconds_limit > 0 ? ", limit " + std::to_string(static_cast<int>(c.seconds_limit)) + " s" : "")
                  << "): " << o.detail << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
