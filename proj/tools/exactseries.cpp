#include <algorithm>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "exact/cli/commands.hpp"
#include "exact/errors.hpp"
#include "exact/rational.hpp"

namespace {

using exact::Rational;
using namespace exact::cli;

Rational rational_flag(const std::string& name, const std::string& text)
{
    try {
        return Rational::parse(text);
    } catch (const exact::Error& e) {
        throw CLI::ValidationError(name, e.what());
    }
}

/// Moves positional arguments behind "--" so expressions such as "-z" are
/// never read as short flags. The subcommand name stays in front.
std::vector<std::string> normalize_arguments(int argc, char** argv)
{
    static const std::set<std::string> takes_value{"--order", "--seed", "--r", "--M", "--nmax", "--initial"};
    std::vector<std::string> front;
    std::vector<std::string> positional;
    bool seen_subcommand = false;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--") {
            positional.insert(positional.end(), argv + i + 1, argv + argc);
            break;
        }
        if (arg.starts_with("--") || arg == "-h") {
            front.push_back(arg);
            if (takes_value.contains(arg) && i + 1 < argc) {
                front.emplace_back(argv[++i]);
            }
        } else if (!seen_subcommand) {
            front.push_back(arg);
            seen_subcommand = true;
        } else {
            positional.push_back(arg);
        }
    }
    if (!positional.empty()) {
        front.emplace_back("--");
        front.insert(front.end(), positional.begin(), positional.end());
    }
    // CLI11 consumes the vector from the back.
    std::reverse(front.begin(), front.end());
    return front;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact formal power series, Puiseux arithmetic and the flagship divergent solution"};
    app.name("exactseries");
    app.require_subcommand(1);
    app.fallthrough();

    Options opts;
    std::string r_text = "1/10";
    std::string m_text = "1000000";
    std::string initial_text;
    app.add_option("--order", opts.order, "truncation order N (default 20)");
    app.add_flag("--json", opts.json, "emit JSON instead of text");
    app.add_option("--seed", opts.seed, "seed for randomized demos");

    std::string expr;
    std::string expr2;
    std::vector<std::string> exprs;

    auto* eval = app.add_subcommand("eval", "evaluate an expression and render it");
    eval->add_option("expr", expr)->required();

    auto* ode_solve = app.add_subcommand("ode-solve", "solve A*F' + B*F = C as a formal power series");
    ode_solve->add_option("equation", expr)->required();
    ode_solve->add_option("--initial", initial_text, "F(0) when A(0) != 0");

    auto* ode_check = app.add_subcommand("ode-check", "check that a candidate series satisfies an equation");
    ode_check->add_option("equation", expr)->required();
    ode_check->add_option("candidate", expr2)->required();

    auto* diverge = app.add_subcommand("diverge", "search for |a_n|*r^n > M");
    diverge->add_option("series", expr)->required();

    auto* compare = app.add_subcommand("compare", "order two Puiseux series");
    compare->add_option("a", expr)->required();
    compare->add_option("b", expr2)->required();

    auto* cr = app.add_subcommand("cr-check", "Cauchy-Riemann identities of coordinate series");
    cr->add_option("series", exprs, "one series in z, or two series in x, y");

    auto* counter = app.add_subcommand("counterexample", "replay the flagship counterexample");
    counter->add_flag("--tamper-recurrence", opts.tamper_recurrence)->group("");

    for (auto* sub : {diverge, counter}) {
        sub->add_option("--r", r_text, "radius r > 0");
        sub->add_option("--M", m_text, "bound M");
        sub->add_option("--nmax", opts.nmax, "largest index scanned");
    }

    try {
        app.parse(normalize_arguments(argc, argv));
        opts.r = rational_flag("--r", r_text);
        opts.M = rational_flag("--M", m_text);
        if (!initial_text.empty()) {
            opts.initial = rational_flag("--initial", initial_text);
        }
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    CommandResult result;
    if (*eval) {
        result = run_eval(expr, opts);
    } else if (*ode_solve) {
        result = run_ode_solve(expr, opts);
    } else if (*ode_check) {
        result = run_ode_check(expr, expr2, opts);
    } else if (*diverge) {
        result = run_diverge(expr, opts);
    } else if (*compare) {
        result = run_compare(expr, expr2, opts);
    } else if (*cr) {
        result = run_cr_check(exprs, opts);
    } else {
        result = run_counterexample(opts);
    }
    std::cout << result.output;
    std::cerr << result.error;
    if (!result.error.empty() && result.error.back() != '\n') {
        std::cerr << '\n';
    }
    return result.exit_code;
}
