#include "exact/cli/commands.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "exact/cli/evaluate.hpp"
#include "exact/cli/parser.hpp"
#include "exact/cli/render.hpp"
#include "exact/complexified.hpp"
#include "exact/errors.hpp"
#include "exact/ode.hpp"

namespace exact::cli {

namespace {

using nlohmann::json;

constexpr std::size_t kShownCoefficients = 12;
constexpr std::size_t kCrDegreeCap = 12;
const char* const kFlagshipText = "z^2*F' - F = -z";

template <class Fn>
CommandResult guarded(Fn fn)
{
    try {
        return fn();
    } catch (const RejectedInput& e) {
        return {kExitUsage, "", std::string("error: ") + e.what()};
    } catch (const Error& e) {
        return {kExitAssertion, "", std::string("error: ") + e.what()};
    }
}

CommandResult emit(const Options& opts, int code, const std::string& text, const json& j)
{
    return {code, opts.json ? j.dump(2) + "\n" : text, ""};
}

std::string join(const std::vector<Rational>& xs)
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out += (i ? ", " : "") + xs[i].to_string();
    }
    return out;
}

json json_list(const std::vector<Rational>& xs)
{
    json out = json::array();
    for (const auto& x : xs) {
        out.push_back(rational_to_json(x));
    }
    return out;
}

std::string monomial_name(const MultiIndex& alpha)
{
    std::ostringstream os;
    os << "x^" << alpha[0] << "*y^" << alpha[1];
    return os.str();
}

std::string cr_summary(const CrReport& r)
{
    if (r.pass) {
        return "pass through degree " + std::to_string(r.degree);
    }
    return "fail at degree " + std::to_string(*r.failing_degree) + ": " + r.equation + " differs at " +
           monomial_name(*r.offending);
}

json cr_json(const CrReport& r)
{
    json j = {{"pass", r.pass}, {"degree", r.degree}};
    if (!r.pass) {
        j["failing_degree"] = *r.failing_degree;
        j["offending"] = *r.offending;
        j["equation"] = r.equation;
    }
    return j;
}

std::string certificate_text(const DivergenceCertificate& c)
{
    return "n = " + std::to_string(c.n) + ", |a_n|*r^n = " + c.witness.to_string() + " > " + c.M.to_string() +
           " at r = " + c.r.to_string();
}

SeriesU random_series(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> degree(0, 8);
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 5);
    std::vector<Rational> c(static_cast<std::size_t>(degree(rng)) + 1);
    for (auto& x : c) {
        x = Rational(num(rng), den(rng));
    }
    return SeriesU::polynomial(std::move(c));
}

} // namespace

CommandResult run_eval(const std::string& expr, const Options& opts)
{
    return guarded([&] {
        Value v = evaluate(parse(expr));
        return emit(opts, kExitOk, render_text(v, opts.order) + "\n", render_json(v, opts.order));
    });
}

CommandResult run_ode_solve(const std::string& equation, const Options& opts)
{
    return guarded([&] {
        LinearODE ode = to_ode(parse_equation(equation));
        FormalSolution sol = solve(ode, opts.initial);
        std::vector<Rational> coeffs = sol.F.prefix(opts.order + 1);
        std::vector<Rational> tail(coeffs.begin() + 1, coeffs.end());
        std::ostringstream os;
        os << "regime: " << to_string(sol.regime) << "\n";
        os << "a_0 = " << coeffs[0] << "\n";
        if (opts.order > 0) {
            os << "a_1..a_" << opts.order << ": " << join(tail) << "\n";
        }
        os << "F = " << render_text(sol.F, opts.order + 1) << "\n";
        json j = {{"equation", equation},
                  {"regime", to_string(sol.regime)},
                  {"order", opts.order},
                  {"coefficients", json_list(coeffs)}};
        return emit(opts, kExitOk, os.str(), j);
    });
}

CommandResult run_ode_check(const std::string& equation, const std::string& candidate, const Options& opts)
{
    return guarded([&] {
        LinearODE ode = to_ode(parse_equation(equation));
        SeriesU F = as_series(evaluate(parse(candidate)));
        std::vector<Rational> r = residual(ode, F, opts.order);
        auto bad = first_nonzero(r);
        json j = {{"order", opts.order}, {"residual_zero", !bad.has_value()}};
        std::string text;
        if (bad) {
            j["first_nonzero"] = *bad;
            j["value"] = rational_to_json(r[*bad]);
            text = "residual nonzero at z^" + std::to_string(*bad) + " (coefficient " + r[*bad].to_string() + ")\n";
        } else {
            text = "residual zero through z^" + std::to_string(opts.order == 0 ? 0 : opts.order - 1) + "\n";
        }
        return emit(opts, bad ? kExitAssertion : kExitOk, text, j);
    });
}

CommandResult run_diverge(const std::string& series, const Options& opts)
{
    return guarded([&] {
        SeriesU s = as_series(evaluate(parse(series)));
        DivergenceResult result = certify_divergence(s, opts.r, opts.M, opts.nmax);
        if (!result.found()) {
            json j = {{"found", false}, {"nmax", opts.nmax}, {"r", rational_to_json(opts.r)}, {"M", rational_to_json(opts.M)}};
            return emit(opts, kExitAssertion,
                        "not found: |a_n|*r^n <= " + opts.M.to_string() + " for all n <= " + std::to_string(opts.nmax) +
                            "\n",
                        j);
        }
        json j = to_json(*result.certificate);
        j["found"] = true;
        return emit(opts, kExitOk, "certificate: " + certificate_text(*result.certificate) + "\n", j);
    });
}

CommandResult run_compare(const std::string& a, const std::string& b, const Options& opts)
{
    return guarded([&] {
        Puiseux x = as_puiseux(evaluate(parse(a)));
        Puiseux y = as_puiseux(evaluate(parse(b)));
        Comparison c = compare(x, y, Rational(static_cast<long>(opts.order)));
        json j = {{"result", c.order == Order::less ? "less" : c.order == Order::greater ? "greater" : "equal_through"},
                  {"through", rational_to_json(c.through)},
                  {"exact", c.exact}};
        return emit(opts, kExitOk, c.to_string() + "\n", j);
    });
}

CommandResult run_cr_check(const std::vector<std::string>& exprs, const Options& opts)
{
    return guarded([&] {
        if (exprs.size() > 2) {
            throw RejectedInput("cr-check takes one series in z or two series in x, y");
        }
        if (exprs.empty()) {
            std::mt19937_64 rng(opts.seed);
            std::string text;
            json runs = json::array();
            bool all = true;
            for (int i = 0; i < 20; ++i) {
                SeriesU p = random_series(rng);
                CoordinateSeries cs = coordinate_series(ComplexSeries(p));
                CrReport r = cr_check(cs.re, cs.im, opts.order);
                all = all && r.pass;
                text += render_text(p, 9) + ": " + cr_summary(r) + "\n";
                runs.push_back({{"series", render_text(p, 9)}, {"report", cr_json(r)}});
            }
            return emit(opts, all ? kExitOk : kExitAssertion, text, json{{"seed", opts.seed}, {"runs", runs}, {"pass", all}});
        }
        CrReport r;
        if (exprs.size() == 1) {
            CoordinateSeries cs = coordinate_series(ComplexSeries(as_series(evaluate(parse(exprs[0])))));
            r = cr_check(cs.re, cs.im, opts.order);
        } else {
            r = cr_check(as_bivariate(evaluate(parse(exprs[0]))), as_bivariate(evaluate(parse(exprs[1]))), opts.order);
        }
        return emit(opts, r.pass ? kExitOk : kExitAssertion, cr_summary(r) + "\n", cr_json(r));
    });
}

bool CounterexampleReport::pass() const
{
    return stages.size() == 4 && std::all_of(stages.begin(), stages.end(), [](const auto& s) { return s.pass; });
}

std::optional<int> CounterexampleReport::failed_stage() const
{
    for (const auto& s : stages) {
        if (!s.pass) {
            return s.stage;
        }
    }
    return std::nullopt;
}

CounterexampleReport counterexample(const Options& opts)
{
    CounterexampleReport report;
    LinearODE ode = LinearODE::flagship();
    SeriesU F = solve(ode).F;
    if (opts.tamper_recurrence) {
        F = with_coeff(F, 0, Rational(1));
    }
    const std::size_t N = opts.order;

    // 1: a_n = (n−1)! for 1 <= n <= N
    report.leading_coefficients = drop(F, 1).prefix(std::min(N, kShownCoefficients));
    {
        StageOutcome s{1, "solve", true, "a_n = (n-1)! for 1 <= n <= " + std::to_string(N)};
        for (std::size_t n = 1; n <= N; ++n) {
            if (F.coeff(n) != Rational::factorial(n - 1)) {
                s.pass = false;
                s.detail = "a_" + std::to_string(n) + " = " + F.coeff(n).to_string() + " differs from " +
                           std::to_string(n - 1) + "!";
                break;
            }
        }
        report.stages.push_back(s);
        if (!s.pass) {
            return report;
        }
    }

    // 2: A·F′ + B·F − C vanishes through z^N
    {
        std::vector<Rational> r = residual(ode, F, N + 1);
        auto bad = first_nonzero(r);
        StageOutcome s{2, "residual", !bad.has_value(), "A*F' + B*F - C vanishes through z^" + std::to_string(N)};
        if (bad) {
            s.detail = "residual coefficient of z^" + std::to_string(*bad) + " is " + r[*bad].to_string();
        }
        report.stages.push_back(s);
        if (!s.pass) {
            return report;
        }
    }

    // 3: Cauchy–Riemann on the coordinate series
    {
        std::size_t degree = std::min(N, kCrDegreeCap);
        CoordinateSeries cs = coordinate_series(ComplexSeries(F));
        CrReport cr = cr_check(cs.re, cs.im, degree);
        report.stages.push_back({3, "cauchy-riemann", cr.pass, cr_summary(cr)});
        if (!cr.pass) {
            return report;
        }
    }

    // 4: divergence certificate at radius r
    {
        DivergenceResult d = certify_divergence(F, opts.r, opts.M, opts.nmax);
        StageOutcome s{4, "divergence", false, ""};
        if (d.found() && revalidate(*d.certificate, F)) {
            s.pass = true;
            s.detail = certificate_text(*d.certificate);
            report.certificate = d.certificate;
        } else {
            s.detail = "no n <= " + std::to_string(opts.nmax) + " with |a_n|*r^n > " + opts.M.to_string();
        }
        report.stages.push_back(s);
    }
    return report;
}

CommandResult run_counterexample(const Options& opts)
{
    return guarded([&] {
        CounterexampleReport report = counterexample(opts);
        std::ostringstream os;
        os << "equation: " << kFlagshipText << "\n";
        os << "a_1..a_" << report.leading_coefficients.size() << ": " << join(report.leading_coefficients) << "\n";
        json stages = json::array();
        for (const auto& s : report.stages) {
            os << "stage " << s.stage << " (" << s.name << "): " << (s.pass ? "pass" : "FAIL") << "  " << s.detail << "\n";
            stages.push_back({{"stage", s.stage}, {"name", s.name}, {"pass", s.pass}, {"detail", s.detail}});
        }
        auto failed = report.failed_stage();
        if (report.pass()) {
            os << "counterexample: pass\n";
        } else {
            int stage = failed ? *failed : static_cast<int>(report.stages.size()) + 1;
            os << "counterexample: FAIL at stage " << stage << "\n";
        }
        json j = {{"equation", kFlagshipText},
                  {"order", opts.order},
                  {"leading_coefficients", json_list(report.leading_coefficients)},
                  {"stages", stages},
                  {"pass", report.pass()}};
        j["certificate"] = report.certificate ? to_json(*report.certificate) : json(nullptr);
        j["failed_stage"] = failed ? json(*failed) : json(nullptr);
        CommandResult out = emit(opts, report.pass() ? kExitOk : kExitAssertion, os.str(), j);
        if (!report.pass()) {
            out.error = "counterexample failed at stage " + std::to_string(failed.value_or(0)) + "\n";
        }
        return out;
    });
}

} // namespace exact::cli
