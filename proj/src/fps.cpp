#include "exact/fps.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>

#include "exact/errors.hpp"

namespace exact {

struct SeriesU::Node {
    std::mutex mutex;
    std::vector<Rational> cache;
    Extender extend;
    std::optional<std::size_t> support;
};

SeriesU::SeriesU() : SeriesU(std::make_shared<Node>())
{
    node_->extend = [](std::size_t upto, std::vector<Rational>& prefix) { prefix.resize(upto + 1); };
    node_->support = 0;
}

SeriesU::SeriesU(std::shared_ptr<Node> node) : node_(std::move(node)) {}

SeriesU SeriesU::from_extender(Extender e, std::optional<std::size_t> support)
{
    auto node = std::make_shared<Node>();
    node->extend = std::move(e);
    node->support = support;
    return SeriesU(std::move(node));
}

SeriesU SeriesU::from_function(std::function<Rational(std::size_t)> f, std::optional<std::size_t> support)
{
    return from_extender(
        [f = std::move(f)](std::size_t upto, std::vector<Rational>& prefix) {
            while (prefix.size() <= upto) {
                prefix.push_back(f(prefix.size()));
            }
        },
        support);
}

SeriesU SeriesU::from_recurrence(Recurrence r, std::optional<std::size_t> support)
{
    return from_extender(
        [r = std::move(r)](std::size_t upto, std::vector<Rational>& prefix) {
            while (prefix.size() <= upto) {
                std::size_t n = prefix.size();
                Rational next = r(n, std::span<const Rational>(prefix.data(), n));
                prefix.push_back(std::move(next));
            }
        },
        support);
}

SeriesU SeriesU::constant(const Rational& c)
{
    return polynomial({c});
}

SeriesU SeriesU::monomial(const Rational& c, std::size_t degree)
{
    std::vector<Rational> coeffs(degree + 1);
    coeffs[degree] = c;
    return polynomial(std::move(coeffs));
}

SeriesU SeriesU::polynomial(std::vector<Rational> coeffs)
{
    while (!coeffs.empty() && coeffs.back().is_zero()) {
        coeffs.pop_back();
    }
    std::size_t support = coeffs.size();
    if (support == 0) {
        return SeriesU();
    }
    return from_function([coeffs = std::move(coeffs)](std::size_t n) { return n < coeffs.size() ? coeffs[n] : Rational(); },
                         support);
}

SeriesU SeriesU::geometric()
{
    return from_function([](std::size_t) { return Rational(1); });
}

SeriesU SeriesU::exponential()
{
    return from_recurrence([](std::size_t n, std::span<const Rational> earlier) {
        return n == 0 ? Rational(1) : earlier[n - 1] / Rational(n);
    });
}

SeriesU SeriesU::factorial()
{
    // a_1 = 1, a_n = (n-1)·a_{n-1}
    return from_recurrence([](std::size_t n, std::span<const Rational> earlier) {
        if (n == 0) {
            return Rational();
        }
        if (n == 1) {
            return Rational(1);
        }
        return earlier[n - 1] * Rational(n - 1);
    });
}

Rational SeriesU::coeff(std::size_t n) const
{
    if (node_->support && n >= *node_->support) {
        return Rational();
    }
    std::lock_guard lock(node_->mutex);
    if (node_->cache.size() <= n) {
        node_->extend(n, node_->cache);
    }
    return node_->cache[n];
}

std::vector<Rational> SeriesU::prefix(std::size_t count) const
{
    std::vector<Rational> out;
    std::size_t live = node_->support ? std::min(count, *node_->support) : count;
    if (live > 0) {
        std::lock_guard lock(node_->mutex);
        if (node_->cache.size() < live) {
            node_->extend(live - 1, node_->cache);
        }
        out.assign(node_->cache.begin(), node_->cache.begin() + static_cast<std::ptrdiff_t>(live));
    }
    out.resize(count);
    return out;
}

std::optional<std::size_t> SeriesU::support_bound() const
{
    return node_->support;
}

bool SeriesU::is_certified_zero() const
{
    if (!node_->support) {
        return false;
    }
    for (std::size_t n = 0; n < *node_->support; ++n) {
        if (!coeff(n).is_zero()) {
            return false;
        }
    }
    return true;
}

namespace {

std::optional<std::size_t> max_support(const SeriesU& a, const SeriesU& b)
{
    auto sa = a.support_bound();
    auto sb = b.support_bound();
    if (sa && sb) {
        return std::max(*sa, *sb);
    }
    return std::nullopt;
}

} // namespace

SeriesU add(const SeriesU& a, const SeriesU& b)
{
    return SeriesU::from_function([a, b](std::size_t n) { return a.coeff(n) + b.coeff(n); }, max_support(a, b));
}

SeriesU sub(const SeriesU& a, const SeriesU& b)
{
    return SeriesU::from_function([a, b](std::size_t n) { return a.coeff(n) - b.coeff(n); }, max_support(a, b));
}

SeriesU neg(const SeriesU& a)
{
    return SeriesU::from_function([a](std::size_t n) { return -a.coeff(n); }, a.support_bound());
}

SeriesU scale(const SeriesU& a, const Rational& c)
{
    if (c.is_zero()) {
        return SeriesU();
    }
    return SeriesU::from_function([a, c](std::size_t n) { return a.coeff(n) * c; }, a.support_bound());
}

SeriesU mul(const SeriesU& a, const SeriesU& b)
{
    auto sa = a.support_bound();
    auto sb = b.support_bound();
    std::optional<std::size_t> support;
    if ((sa && *sa == 0) || (sb && *sb == 0)) {
        return SeriesU();
    }
    if (sa && sb) {
        support = *sa + *sb - 1;
    }
    return SeriesU::from_function(
        [a, b, sa, sb](std::size_t n) {
            std::size_t lo = 0;
            std::size_t hi = n;
            if (sb && n + 1 > *sb) {
                lo = n + 1 - *sb;
            }
            if (sa) {
                hi = std::min(hi, *sa - 1);
            }
            Rational sum;
            for (std::size_t i = lo; i <= hi && i <= n; ++i) {
                Rational ai = a.coeff(i);
                if (!ai.is_zero()) {
                    sum += ai * b.coeff(n - i);
                }
            }
            return sum;
        },
        support);
}

SeriesU derive(const SeriesU& p)
{
    std::optional<std::size_t> support;
    if (auto s = p.support_bound()) {
        support = *s == 0 ? 0 : *s - 1;
    }
    return SeriesU::from_function([p](std::size_t n) { return Rational(n + 1) * p.coeff(n + 1); }, support);
}

namespace {

// Truncated product of two coefficient vectors, keeping `length` terms.
std::vector<Rational> truncated_product(const std::vector<Rational>& a, const std::vector<Rational>& b, std::size_t length)
{
    std::vector<Rational> out(length);
    for (std::size_t i = 0; i < a.size() && i < length; ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < b.size() && i + j < length; ++j) {
            if (!b[j].is_zero()) {
                out[i + j] += a[i] * b[j];
            }
        }
    }
    return out;
}

} // namespace

SeriesU compose(const SeriesU& p, const SeriesU& q)
{
    if (!q.coeff(0).is_zero()) {
        throw RejectedInput("compose: inner series must have zero constant term, got " + q.coeff(0).to_string());
    }
    std::optional<std::size_t> support;
    auto sp = p.support_bound();
    auto sq = q.support_bound();
    if (sp && *sp <= 1) {
        return SeriesU::polynomial({p.coeff(0)});
    }
    if (sp && sq) {
        support = *sq == 0 ? 1 : (*sp - 1) * (*sq - 1) + 1;
    }
    return SeriesU::from_extender(
        [p, q](std::size_t upto, std::vector<Rational>& prefix) {
            // Recompute the truncated composition from scratch with Horner's
            // scheme; doubling the target keeps the amortised cost bounded.
            std::size_t length = std::max(upto + 1, 2 * prefix.size());
            std::vector<Rational> qs = q.prefix(length);
            std::vector<Rational> acc(length);
            for (std::size_t k = length; k-- > 0;) {
                acc = truncated_product(acc, qs, length);
                acc[0] += p.coeff(k);
            }
            prefix = std::move(acc);
        },
        support);
}

SeriesU invert_unit(const SeriesU& p)
{
    Rational c0 = p.coeff(0);
    if (c0.is_zero()) {
        throw NonUnitError("invert_unit: series has zero constant term");
    }
    Rational inv0 = c0.inverse();
    if (auto s = p.support_bound(); s && *s == 1) {
        return SeriesU::constant(inv0);
    }
    return SeriesU::from_recurrence([p, inv0](std::size_t n, std::span<const Rational> earlier) {
        if (n == 0) {
            return inv0;
        }
        Rational sum;
        for (std::size_t k = 1; k <= n; ++k) {
            Rational pk = p.coeff(k);
            if (!pk.is_zero()) {
                sum += pk * earlier[n - k];
            }
        }
        return -(sum * inv0);
    });
}

SeriesU shift_up(const SeriesU& a, std::size_t k)
{
    if (k == 0) {
        return a;
    }
    std::optional<std::size_t> support;
    if (auto s = a.support_bound()) {
        support = *s == 0 ? 0 : *s + k;
    }
    return SeriesU::from_function([a, k](std::size_t n) { return n < k ? Rational() : a.coeff(n - k); }, support);
}

SeriesU drop(const SeriesU& a, std::size_t k)
{
    if (k == 0) {
        return a;
    }
    std::optional<std::size_t> support;
    if (auto s = a.support_bound()) {
        support = *s > k ? *s - k : 0;
    }
    return SeriesU::from_function([a, k](std::size_t n) { return a.coeff(n + k); }, support);
}

SeriesU spread(const SeriesU& a, std::size_t r)
{
    if (r == 0) {
        throw RejectedInput("spread: factor must be positive");
    }
    if (r == 1) {
        return a;
    }
    std::optional<std::size_t> support;
    if (auto s = a.support_bound()) {
        support = *s == 0 ? 0 : (*s - 1) * r + 1;
    }
    return SeriesU::from_function([a, r](std::size_t n) { return n % r == 0 ? a.coeff(n / r) : Rational(); }, support);
}

SeriesU taylor_shift(const SeriesU& p, const Rational& c)
{
    auto s = p.support_bound();
    if (!s) {
        throw RejectedInput("taylor_shift: only defined here for polynomials");
    }
    std::vector<Rational> coeffs(*s);
    for (std::size_t n = 0; n < *s; ++n) {
        Rational pn = p.coeff(n);
        if (pn.is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j <= n; ++j) {
            coeffs[j] += pn * Rational::binomial(n, j) * c.pow(static_cast<long>(n - j));
        }
    }
    return SeriesU::polynomial(std::move(coeffs));
}

SeriesU with_coeff(const SeriesU& a, std::size_t n, const Rational& value)
{
    std::optional<std::size_t> support = a.support_bound();
    if (support && !value.is_zero()) {
        support = std::max(*support, n + 1);
    }
    return SeriesU::from_function([a, n, value](std::size_t i) { return i == n ? value : a.coeff(i); }, support);
}

bool equal_through(const SeriesU& a, const SeriesU& b, std::size_t count)
{
    for (std::size_t n = 0; n < count; ++n) {
        if (a.coeff(n) != b.coeff(n)) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------

std::size_t total_degree(const MultiIndex& a)
{
    return std::accumulate(a.begin(), a.end(), std::size_t{0});
}

struct SeriesM::Node {
    std::mutex mutex;
    std::vector<Slice> slices;
    SliceFn fn;
    std::optional<std::size_t> support;
    std::size_t arity = 1;
};

SeriesM::SeriesM(std::size_t arity) : SeriesM(std::make_shared<Node>())
{
    if (arity == 0) {
        throw RejectedInput("multivariate series needs at least one variable");
    }
    node_->arity = arity;
    node_->support = 0;
    node_->fn = [](std::size_t, std::span<const Slice>) { return Slice{}; };
}

SeriesM::SeriesM(std::shared_ptr<Node> node) : node_(std::move(node)) {}

SeriesM SeriesM::from_slices(std::size_t arity, SliceFn f, std::optional<std::size_t> support)
{
    if (arity == 0) {
        throw RejectedInput("multivariate series needs at least one variable");
    }
    auto node = std::make_shared<Node>();
    node->arity = arity;
    node->fn = std::move(f);
    node->support = support;
    return SeriesM(std::move(node));
}

SeriesM SeriesM::constant(std::size_t arity, const Rational& c)
{
    return from_terms(arity, {{MultiIndex(arity, 0), c}});
}

SeriesM SeriesM::variable(std::size_t arity, std::size_t index)
{
    if (index >= arity) {
        throw RejectedInput("variable index " + std::to_string(index) + " out of range for arity " + std::to_string(arity));
    }
    MultiIndex e(arity, 0);
    e[index] = 1;
    return from_terms(arity, {{e, Rational(1)}});
}

SeriesM SeriesM::from_terms(std::size_t arity, const std::map<MultiIndex, Rational>& terms)
{
    std::vector<Slice> slices;
    for (const auto& [alpha, c] : terms) {
        if (alpha.size() != arity) {
            throw RejectedInput("monomial arity does not match series arity");
        }
        if (c.is_zero()) {
            continue;
        }
        std::size_t d = total_degree(alpha);
        if (slices.size() <= d) {
            slices.resize(d + 1);
        }
        slices[d][alpha] += c;
    }
    std::size_t support = slices.size();
    return from_slices(
        arity,
        [slices = std::move(slices)](std::size_t d, std::span<const Slice>) { return d < slices.size() ? slices[d] : Slice{}; },
        support);
}

SeriesM SeriesM::embed(const SeriesU& p, std::size_t arity, std::size_t index)
{
    if (index >= arity) {
        throw RejectedInput("embed: variable index out of range");
    }
    return from_slices(
        arity,
        [p, arity, index](std::size_t d, std::span<const Slice>) {
            Slice s;
            Rational c = p.coeff(d);
            if (!c.is_zero()) {
                MultiIndex e(arity, 0);
                e[index] = static_cast<std::uint32_t>(d);
                s.emplace(std::move(e), std::move(c));
            }
            return s;
        },
        p.support_bound());
}

std::size_t SeriesM::arity() const
{
    return node_->arity;
}

Slice SeriesM::slice(std::size_t degree) const
{
    if (node_->support && degree >= *node_->support) {
        return {};
    }
    std::lock_guard lock(node_->mutex);
    auto& slices = node_->slices;
    while (slices.size() <= degree) {
        std::size_t d = slices.size();
        Slice next = node_->fn(d, std::span<const Slice>(slices.data(), d));
        std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
        slices.push_back(std::move(next));
    }
    return slices[degree];
}

Rational SeriesM::coeff(const MultiIndex& alpha) const
{
    if (alpha.size() != arity()) {
        throw RejectedInput("coefficient index arity does not match series arity");
    }
    Slice s = slice(total_degree(alpha));
    auto it = s.find(alpha);
    return it == s.end() ? Rational() : it->second;
}

std::optional<std::size_t> SeriesM::support_bound() const
{
    return node_->support;
}

namespace {

void require_same_arity(const SeriesM& a, const SeriesM& b, const char* op)
{
    if (a.arity() != b.arity()) {
        throw RejectedInput(std::string(op) + ": arity mismatch (" + std::to_string(a.arity()) + " vs " +
                            std::to_string(b.arity()) + ")");
    }
}

std::optional<std::size_t> max_support(const SeriesM& a, const SeriesM& b)
{
    auto sa = a.support_bound();
    auto sb = b.support_bound();
    if (sa && sb) {
        return std::max(*sa, *sb);
    }
    return std::nullopt;
}

void accumulate(Slice& into, const Slice& from, const Rational& factor)
{
    for (const auto& [alpha, c] : from) {
        into[alpha] += c * factor;
    }
}

Slice slice_product(const Slice& a, const Slice& b)
{
    Slice out;
    for (const auto& [alpha, ca] : a) {
        for (const auto& [beta, cb] : b) {
            MultiIndex gamma = alpha;
            for (std::size_t i = 0; i < gamma.size(); ++i) {
                gamma[i] += beta[i];
            }
            out[gamma] += ca * cb;
        }
    }
    return out;
}

} // namespace

SeriesM add(const SeriesM& a, const SeriesM& b)
{
    require_same_arity(a, b, "add");
    return SeriesM::from_slices(
        a.arity(),
        [a, b](std::size_t d, std::span<const Slice>) {
            Slice s = a.slice(d);
            accumulate(s, b.slice(d), Rational(1));
            return s;
        },
        max_support(a, b));
}

SeriesM sub(const SeriesM& a, const SeriesM& b)
{
    require_same_arity(a, b, "sub");
    return SeriesM::from_slices(
        a.arity(),
        [a, b](std::size_t d, std::span<const Slice>) {
            Slice s = a.slice(d);
            accumulate(s, b.slice(d), Rational(-1));
            return s;
        },
        max_support(a, b));
}

SeriesM neg(const SeriesM& a)
{
    return scale(a, Rational(-1));
}

SeriesM scale(const SeriesM& a, const Rational& c)
{
    return SeriesM::from_slices(
        a.arity(),
        [a, c](std::size_t d, std::span<const Slice>) {
            Slice s;
            accumulate(s, a.slice(d), c);
            return s;
        },
        c.is_zero() ? std::optional<std::size_t>(0) : a.support_bound());
}

SeriesM mul(const SeriesM& a, const SeriesM& b)
{
    require_same_arity(a, b, "mul");
    auto sa = a.support_bound();
    auto sb = b.support_bound();
    if ((sa && *sa == 0) || (sb && *sb == 0)) {
        return SeriesM(a.arity());
    }
    std::optional<std::size_t> support;
    if (sa && sb) {
        support = *sa + *sb - 1;
    }
    return SeriesM::from_slices(
        a.arity(),
        [a, b](std::size_t d, std::span<const Slice>) {
            Slice s;
            for (std::size_t i = 0; i <= d; ++i) {
                Slice left = a.slice(i);
                if (left.empty()) {
                    continue;
                }
                Slice right = b.slice(d - i);
                if (right.empty()) {
                    continue;
                }
                accumulate(s, slice_product(left, right), Rational(1));
            }
            return s;
        },
        support);
}

SeriesM derive(const SeriesM& p, std::size_t index)
{
    if (index >= p.arity()) {
        throw RejectedInput("derive: variable index " + std::to_string(index) + " out of range for arity " +
                            std::to_string(p.arity()));
    }
    std::optional<std::size_t> support;
    if (auto s = p.support_bound()) {
        support = *s == 0 ? 0 : *s - 1;
    }
    return SeriesM::from_slices(
        p.arity(),
        [p, index](std::size_t d, std::span<const Slice>) {
            Slice s;
            for (const auto& [alpha, c] : p.slice(d + 1)) {
                if (alpha[index] == 0) {
                    continue;
                }
                MultiIndex beta = alpha;
                beta[index] -= 1;
                s[beta] += c * Rational(alpha[index]);
            }
            return s;
        },
        support);
}

SeriesM invert_unit(const SeriesM& p)
{
    Rational c0 = p.coeff(MultiIndex(p.arity(), 0));
    if (c0.is_zero()) {
        throw NonUnitError("invert_unit: series has zero constant term");
    }
    Rational inv0 = c0.inverse();
    std::size_t arity = p.arity();
    return SeriesM::from_slices(arity, [p, inv0, arity](std::size_t d, std::span<const Slice> earlier) {
        Slice s;
        if (d == 0) {
            s[MultiIndex(arity, 0)] = inv0;
            return s;
        }
        for (std::size_t i = 1; i <= d; ++i) {
            Slice pi = p.slice(i);
            if (!pi.empty()) {
                accumulate(s, slice_product(pi, earlier[d - i]), -inv0);
            }
        }
        return s;
    });
}

SeriesM divide_by_variable(const SeriesM& p, std::size_t index)
{
    if (index >= p.arity()) {
        throw RejectedInput("divide_by_variable: index out of range");
    }
    std::optional<std::size_t> support;
    if (auto s = p.support_bound()) {
        support = *s == 0 ? 0 : *s - 1;
    }
    return SeriesM::from_slices(
        p.arity(),
        [p, index](std::size_t d, std::span<const Slice>) {
            if (d == 0 && !p.slice(0).empty()) {
                throw PreconditionViolation("divide_by_variable: constant term is not divisible");
            }
            Slice s;
            for (const auto& [alpha, c] : p.slice(d + 1)) {
                if (alpha[index] == 0) {
                    throw PreconditionViolation("divide_by_variable: monomial without the divisor variable");
                }
                MultiIndex beta = alpha;
                beta[index] -= 1;
                s.emplace(std::move(beta), c);
            }
            return s;
        },
        support);
}

SeriesM substitute_constant(const SeriesM& p, std::size_t index, const Rational& c)
{
    if (p.arity() < 2 || index >= p.arity()) {
        throw RejectedInput("substitute_constant: needs arity >= 2 and a valid index");
    }
    auto support = p.support_bound();
    if (!support) {
        throw RejectedInput("substitute_constant: only defined here for polynomials");
    }
    std::map<MultiIndex, Rational> terms;
    for (std::size_t d = 0; d < *support; ++d) {
        for (const auto& [alpha, coeff] : p.slice(d)) {
            MultiIndex beta;
            for (std::size_t i = 0; i < alpha.size(); ++i) {
                if (i != index) {
                    beta.push_back(alpha[i]);
                }
            }
            terms[beta] += coeff * c.pow(alpha[index]);
        }
    }
    return SeriesM::from_terms(p.arity() - 1, terms);
}

SeriesU to_univariate(const SeriesM& p)
{
    if (p.arity() != 1) {
        throw RejectedInput("to_univariate: series has arity " + std::to_string(p.arity()));
    }
    return SeriesU::from_function([p](std::size_t n) { return p.coeff({static_cast<std::uint32_t>(n)}); },
                                  p.support_bound());
}

bool equal_through(const SeriesM& a, const SeriesM& b, std::size_t degree_count)
{
    require_same_arity(a, b, "equal_through");
    for (std::size_t d = 0; d < degree_count; ++d) {
        if (a.slice(d) != b.slice(d)) {
            return false;
        }
    }
    return true;
}

SeriesM shift_quotient(const SeriesU& p)
{
    // p(ξ + h): slice d is p_d·Σ_k C(d,k) ξ^{d−k} h^k.
    SeriesM shifted = SeriesM::from_slices(
        2,
        [p](std::size_t d, std::span<const Slice>) {
            Slice s;
            Rational pd = p.coeff(d);
            if (pd.is_zero()) {
                return s;
            }
            for (std::size_t k = 0; k <= d; ++k) {
                s[{static_cast<std::uint32_t>(d - k), static_cast<std::uint32_t>(k)}] = pd * Rational::binomial(d, k);
            }
            return s;
        },
        p.support_bound());
    return divide_by_variable(sub(shifted, SeriesM::embed(p, 2, 0)), 1);
}

} // namespace exact
