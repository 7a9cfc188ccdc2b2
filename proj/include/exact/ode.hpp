#pragma once

// First-order linear ODEs A(z)·F′(z) + B(z)·F(z) = C(z) with power-series
// coefficients, solved formally by coefficient recurrence.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "exact/fps.hpp"

namespace exact {

struct LinearODE {
    SeriesU A;
    SeriesU B;
    SeriesU C;

    /// F = z²F′ + z, stored as z²·F′ − F = −z.
    static LinearODE flagship();
};

enum class Regime {
    /// A(0) = 0, B(0) != 0: the recurrence pins every coefficient.
    unique,
    /// A(0) != 0: F(0) must be supplied.
    ivp,
};

std::string to_string(Regime r);

/// Classifies the equation; throws SingularEquation when A(0) = B(0) = 0.
Regime detect_regime(const LinearODE& ode);

struct FormalSolution {
    SeriesU F;
    Regime regime;
};

/// Coefficients of F from matching zⁿ in A·F′ + B·F = C.
///
/// Unique regime: (B₀ + n·A₁)·aₙ = Cₙ − Σ_{k≥1} Bₖ aₙ₋ₖ − Σ_{k≥2} Aₖ (n−k+1) aₙ₋ₖ₊₁.
/// IVP regime: A₀·(n+1)·aₙ₊₁ = Cₙ − Σ_{k≥1} Aₖ (n−k+1) aₙ₋ₖ₊₁ − Σ_{k≥0} Bₖ aₙ₋ₖ, a₀ = initial.
FormalSolution solve(const LinearODE& ode, const std::optional<Rational>& initial = std::nullopt);

/// First `order` coefficients of A·F′ + B·F − C.
std::vector<Rational> residual(const LinearODE& ode, const SeriesU& F, std::size_t order);

/// Index of the first nonzero entry, if any.
std::optional<std::size_t> first_nonzero(const std::vector<Rational>& coeffs);

struct UniquenessWitness {
    bool equal = true;
    std::size_t through = 0;
    std::optional<std::size_t> first_disagreement;
};

/// Confirms that two formal solutions of a unique-regime equation agree on
/// their first `order` coefficients. Throws PreconditionViolation if either
/// input has a nonzero residual there.
UniquenessWitness taylor_uniqueness_witness(const LinearODE& ode, const SeriesU& F, const SeriesU& G, std::size_t order);

} // namespace exact
