#pragma once

#include "gengeo/expr.hpp"
#include "gengeo/rng.hpp"

namespace gengeo {

struct ExprGenOptions {
  int max_depth = 4;
  bool allow_div = true;
  bool allow_pow = true;
};

// Seeded random expression over `nvars` coordinate slots.  Generated
// denominators have the shape 2.5 + sin(...) or 2.5 + cos(...), so every
// expression is smooth on all of R^n and safe for central differencing.
Expr random_expr(SplitMix64& rng, int nvars, const ExprGenOptions& opt = {});

}  // namespace gengeo
