#include "exact/ode.hpp"

#include <algorithm>

#include "exact/errors.hpp"

namespace exact {

LinearODE LinearODE::flagship()
{
    return {SeriesU::monomial(Rational(1), 2), SeriesU::constant(Rational(-1)), SeriesU::monomial(Rational(-1), 1)};
}

std::string to_string(Regime r)
{
    return r == Regime::unique ? "unique" : "ivp";
}

Regime detect_regime(const LinearODE& ode)
{
    if (!ode.A.coeff(0).is_zero()) {
        return Regime::ivp;
    }
    if (!ode.B.coeff(0).is_zero()) {
        return Regime::unique;
    }
    throw SingularEquation("A(0) = 0 and B(0) = 0: no recurrence pivot (indicial analysis is not supported)");
}

namespace {

// Σ_{k=first}^{n+1} A_k·(n−k+1)·a_{n−k+1}, skipping indices not yet known.
Rational derivative_part(const SeriesU& A, std::size_t n, std::size_t first, std::span<const Rational> a)
{
    Rational sum;
    for (std::size_t k = first; k <= n + 1; ++k) {
        std::size_t j = n + 1 - k;
        if (j == 0 || j >= a.size()) {
            continue;
        }
        Rational Ak = A.coeff(k);
        if (!Ak.is_zero()) {
            sum += Ak * Rational(j) * a[j];
        }
    }
    return sum;
}

Rational multiplier_part(const SeriesU& B, std::size_t n, std::size_t first, std::span<const Rational> a)
{
    Rational sum;
    for (std::size_t k = first; k <= n; ++k) {
        Rational Bk = B.coeff(k);
        if (!Bk.is_zero()) {
            sum += Bk * a[n - k];
        }
    }
    return sum;
}

} // namespace

FormalSolution solve(const LinearODE& ode, const std::optional<Rational>& initial)
{
    Regime regime = detect_regime(ode);
    if (regime == Regime::unique) {
        if (initial) {
            throw RejectedInput("A(0) = 0, B(0) != 0: the solution is unique, an initial value must not be supplied");
        }
        Rational b0 = ode.B.coeff(0);
        Rational a1 = ode.A.coeff(1);
        // The pivot B₀ + n·A₁ vanishes for n = −B₀/A₁ when that is a natural number.
        if (!a1.is_zero()) {
            Rational resonance = -b0 / a1;
            if (resonance.is_integer() && resonance.sign() >= 0) {
                throw SingularEquation("recurrence pivot B(0) + n*A'(0) vanishes at n = " + resonance.to_string());
            }
        }
        LinearODE eq = ode;
        SeriesU F = SeriesU::from_recurrence([eq, b0, a1](std::size_t n, std::span<const Rational> a) {
            Rational rhs = eq.C.coeff(n) - multiplier_part(eq.B, n, 1, a) - derivative_part(eq.A, n, 2, a);
            return rhs / (b0 + Rational(n) * a1);
        });
        return {F, regime};
    }

    if (!initial) {
        throw RejectedInput("A(0) != 0: an initial value F(0) is required");
    }
    Rational a0 = ode.A.coeff(0);
    LinearODE eq = ode;
    SeriesU F = SeriesU::from_recurrence([eq, a0, f0 = *initial](std::size_t m, std::span<const Rational> a) {
        if (m == 0) {
            return f0;
        }
        // Match z^n with n = m − 1 and solve for a_m.
        std::size_t n = m - 1;
        Rational rhs = eq.C.coeff(n) - derivative_part(eq.A, n, 1, a) - multiplier_part(eq.B, n, 0, a);
        return rhs / (a0 * Rational(m));
    });
    return {F, regime};
}

std::vector<Rational> residual(const LinearODE& ode, const SeriesU& F, std::size_t order)
{
    SeriesU r = sub(add(mul(ode.A, derive(F)), mul(ode.B, F)), ode.C);
    return r.prefix(order);
}

std::optional<std::size_t> first_nonzero(const std::vector<Rational>& coeffs)
{
    auto it = std::find_if(coeffs.begin(), coeffs.end(), [](const Rational& c) { return !c.is_zero(); });
    if (it == coeffs.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - coeffs.begin());
}

UniquenessWitness taylor_uniqueness_witness(const LinearODE& ode, const SeriesU& F, const SeriesU& G, std::size_t order)
{
    if (detect_regime(ode) != Regime::unique) {
        throw RejectedInput("taylor_uniqueness_witness: equation is not in the unique regime");
    }
    for (const SeriesU* s : {&F, &G}) {
        if (auto bad = first_nonzero(residual(ode, *s, order))) {
            throw PreconditionViolation("input series is not a formal solution: residual coefficient " +
                                        std::to_string(*bad) + " is nonzero");
        }
    }
    UniquenessWitness w;
    w.through = order;
    for (std::size_t n = 0; n < order; ++n) {
        if (F.coeff(n) != G.coeff(n)) {
            w.equal = false;
            w.first_disagreement = n;
            break;
        }
    }
    return w;
}

} // namespace exact
