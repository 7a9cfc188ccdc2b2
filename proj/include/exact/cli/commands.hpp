#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exact/convergence.hpp"
#include "exact/rational.hpp"

namespace exact::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitUsage = 2;

struct Options {
    std::size_t order = 20;
    bool json = false;
    std::uint64_t seed = 1;
    Rational r{1, 10};
    Rational M{1000000};
    std::size_t nmax = 100;
    std::optional<Rational> initial;
    /// Test hook: seeds the flagship recurrence with a_0 = 1.
    bool tamper_recurrence = false;
};

struct CommandResult {
    int exit_code = kExitOk;
    std::string output;
    std::string error;
};

CommandResult run_eval(const std::string& expr, const Options& opts);
CommandResult run_ode_solve(const std::string& equation, const Options& opts);
CommandResult run_ode_check(const std::string& equation, const std::string& candidate, const Options& opts);
CommandResult run_diverge(const std::string& series, const Options& opts);
CommandResult run_compare(const std::string& a, const std::string& b, const Options& opts);
/// One z-series (checked through its coordinate series), two series in
/// (x, y), or none (random demo driven by the seed).
CommandResult run_cr_check(const std::vector<std::string>& exprs, const Options& opts);
CommandResult run_counterexample(const Options& opts);

struct StageOutcome {
    int stage;
    std::string name;
    bool pass;
    std::string detail;
};

struct CounterexampleReport {
    std::vector<StageOutcome> stages;
    /// a_1 .. a_min(order, 12)
    std::vector<Rational> leading_coefficients;
    std::optional<DivergenceCertificate> certificate;

    bool pass() const;
    std::optional<int> failed_stage() const;
};

/// Solve the flagship equation, check its residual, its Cauchy–Riemann
/// identities and its divergence; stops at the first failing stage.
CounterexampleReport counterexample(const Options& opts);

} // namespace exact::cli
