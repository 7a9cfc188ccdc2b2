#include "exact/cli/render.hpp"

#include "exact/convergence.hpp"
#include "exact/format.hpp"

namespace exact::cli {

namespace {

bool complete_below(const std::optional<std::size_t>& support, std::size_t order)
{
    return support && *support <= order;
}

std::string monomial_xy(const MultiIndex& alpha)
{
    std::string x = format::power("x", Rational(alpha[0]));
    std::string y = format::power("y", Rational(alpha[1]));
    if (!x.empty() && !y.empty()) {
        return x + "*" + y;
    }
    return x + y;
}

} // namespace

std::string render_text(const SeriesU& s, std::size_t order, const std::string& var)
{
    if (s.is_certified_zero()) {
        return "0";
    }
    std::string out;
    std::vector<Rational> c = s.prefix(order);
    for (std::size_t n = 0; n < c.size(); ++n) {
        format::append_term(out, c[n], format::power(var, Rational(n)));
    }
    if (!complete_below(s.support_bound(), order)) {
        std::string tail = "O(" + (order == 0 ? std::string("1") : format::power(var, Rational(order))) + ")";
        out += out.empty() ? tail : " + " + tail;
    }
    return out.empty() ? "0" : out;
}

std::string render_text(const SeriesM& s, std::size_t order)
{
    std::string out;
    for (std::size_t d = 0; d < order; ++d) {
        // Within a slice, descending powers of x: x^2, x*y, y^2.
        Slice slice = s.slice(d);
        for (auto it = slice.rbegin(); it != slice.rend(); ++it) {
            format::append_term(out, it->second, monomial_xy(it->first));
        }
    }
    if (!complete_below(s.support_bound(), order)) {
        std::string tail = "O((x, y)^" + std::to_string(order) + ")";
        out += out.empty() ? tail : " + " + tail;
    }
    return out.empty() ? "0" : out;
}

std::string render_text(const Value& v, std::size_t order)
{
    switch (v.index()) {
    case 0:
        return std::get<Rational>(v).to_string();
    case 1:
        return render_text(std::get<SeriesU>(v), order);
    case 2:
        return render_text(std::get<SeriesM>(v), order);
    default:
        return to_text(std::get<Puiseux>(v), Rational(static_cast<long>(order)));
    }
}

nlohmann::json render_json(const Value& v, std::size_t order)
{
    using nlohmann::json;
    switch (v.index()) {
    case 0:
        return {{"kind", "constant"}, {"value", rational_to_json(std::get<Rational>(v))}};
    case 1: {
        const auto& s = std::get<SeriesU>(v);
        json coeffs = json::array();
        for (const auto& c : s.prefix(order)) {
            coeffs.push_back(rational_to_json(c));
        }
        return {{"kind", "series"},
                {"variable", "z"},
                {"order", order},
                {"complete", complete_below(s.support_bound(), order)},
                {"coefficients", coeffs}};
    }
    case 2: {
        const auto& s = std::get<SeriesM>(v);
        json terms = json::array();
        for (std::size_t d = 0; d < order; ++d) {
            Slice slice = s.slice(d);
            for (auto it = slice.rbegin(); it != slice.rend(); ++it) {
                terms.push_back({{"exponent", it->first}, {"coeff", rational_to_json(it->second)}});
            }
        }
        return {{"kind", "bivariate"},
                {"variables", {"x", "y"}},
                {"order", order},
                {"complete", complete_below(s.support_bound(), order)},
                {"terms", terms}};
    }
    default: {
        const auto& p = std::get<Puiseux>(v);
        Rational bound(static_cast<long>(order));
        json terms = json::array();
        for (const auto& [e, c] : p.terms_below(bound)) {
            terms.push_back({{"exponent", rational_to_json(e)}, {"coeff", rational_to_json(c)}});
        }
        json out = {{"kind", "puiseux"}, {"variable", "t"}, {"order", order}, {"terms", terms}};
        out["precision"] = p.precision() ? rational_to_json(*p.precision()) : json(nullptr);
        out["ramification"] = p.normalized().ramification();
        return out;
    }
    }
}

} // namespace exact::cli
