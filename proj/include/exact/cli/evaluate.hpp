#pragma once

#include <string>
#include <variant>

#include "exact/cli/expr.hpp"
#include "exact/cli/parser.hpp"
#include "exact/fps.hpp"
#include "exact/ode.hpp"
#include "exact/puiseux.hpp"

namespace exact::cli {

/// Constant, series in z, series in (x, y), or Puiseux series in t.
using Value = std::variant<Rational, SeriesU, SeriesM, Puiseux>;

std::string kind_name(const Value& v);

/// Evaluates an expression; mixing z, (x, y) and t is a type error.
Value evaluate(const Expr& e);

/// Reads "A·F′ + B·F = C" off an equation linear in F, F′ with z-series coefficients.
LinearODE to_ode(const Equation& eq);

/// Value as a Puiseux element (constants included); throws otherwise.
Puiseux as_puiseux(const Value& v);
/// Value as a z-series (constants included); throws otherwise.
SeriesU as_series(const Value& v);
/// Value as a series in (x, y) (constants included); throws otherwise.
SeriesM as_bivariate(const Value& v);

} // namespace exact::cli
