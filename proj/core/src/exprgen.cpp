#include "gengeo/exprgen.hpp"

namespace gengeo {

namespace {

Expr leaf(SplitMix64& rng, int nvars) {
  if (rng.next() % 10 < 4) return Expr::constant(-2.0 + 4.0 * rng.next_double());
  return Expr::var(static_cast<int>(rng.next() % static_cast<std::uint64_t>(nvars)));
}

Expr gen(SplitMix64& rng, int nvars, int depth, const ExprGenOptions& opt) {
  if (depth <= 0 || rng.next() % 100 < 20) return leaf(rng, nvars);
  std::uint64_t pick = rng.next() % 100;
  if (pick < 18) return gen(rng, nvars, depth - 1, opt) + gen(rng, nvars, depth - 1, opt);
  if (pick < 30) return gen(rng, nvars, depth - 1, opt) - gen(rng, nvars, depth - 1, opt);
  if (pick < 50) return gen(rng, nvars, depth - 1, opt) * gen(rng, nvars, depth - 1, opt);
  if (pick < 58) return -gen(rng, nvars, depth - 1, opt);
  if (pick < 72) return sin(gen(rng, nvars, depth - 1, opt));
  if (pick < 86) return cos(gen(rng, nvars, depth - 1, opt));
  if (pick < 93 && opt.allow_pow) {
    int e = 2 + static_cast<int>(rng.next() % 2);
    return pow_int(gen(rng, nvars, depth - 1, opt), e);
  }
  if (opt.allow_div) {
    Expr num = gen(rng, nvars, depth - 1, opt);
    Expr den = rng.next() % 2 == 0
                   ? Expr::constant(2.5) + sin(gen(rng, nvars, depth - 1, opt))
                   : Expr::constant(2.5) + cos(gen(rng, nvars, depth - 1, opt));
    return num / den;
  }
  return leaf(rng, nvars);
}

}  // namespace

Expr random_expr(SplitMix64& rng, int nvars, const ExprGenOptions& opt) {
  if (nvars < 1) throw DomainError("random_expr needs at least one variable");
  return gen(rng, nvars, opt.max_depth, opt);
}

}  // namespace gengeo
