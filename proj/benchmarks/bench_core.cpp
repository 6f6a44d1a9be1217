#include <benchmark/benchmark.h>

#include "gengeo/dorfman.hpp"
#include "gengeo/exprgen.hpp"
#include "gengeo/integrability.hpp"
#include "gengeo/sphere6.hpp"

using namespace gengeo;

namespace {

Expr bench_expr() {
  SplitMix64 rng(7);
  ExprGenOptions opt;
  opt.max_depth = 5;
  return random_expr(rng, 6, opt);
}

void BM_ExprEval(benchmark::State& state) {
  Expr e = bench_expr();
  Point p = {0.7, 1.1, 0.9, 1.3, 0.8, 2.1};
  for (auto _ : state) benchmark::DoNotOptimize(e.eval(p));
}
BENCHMARK(BM_ExprEval);

void BM_ExprGradient(benchmark::State& state) {
  Expr e = bench_expr();
  Point p = {0.7, 1.1, 0.9, 1.3, 0.8, 2.1};
  for (auto _ : state) benchmark::DoNotOptimize(e.eval_dual(p));
}
BENCHMARK(BM_ExprGradient);

void BM_BuildJPoint(benchmark::State& state) {
  ChartPtr chart = make_sphere6_chart();
  EndoField j = build_j(chart, cayley_dickson_cross_table());
  std::vector<Point> pts = sample_chart(*chart, 64, 3);
  std::size_t k = 0;
  for (auto _ : state) {
    // fresh points defeat the cache, so this times the least-squares solve
    Point p = pts[k++ % pts.size()];
    p[5] += 1e-9 * static_cast<double>(k);
    benchmark::DoNotOptimize(eval_endo(j, p));
  }
}
BENCHMARK(BM_BuildJPoint);

void BM_ConditionResiduals(benchmark::State& state) {
  Sphere6 s = make_sphere6();
  BlockEndo t = spherical_combination(0.6, 0.0, 0.8, s.metric, s.j);
  std::vector<Point> pts = sample_box(sphere6_equivalence_box(), 1, 5);
  for (auto _ : state) benchmark::DoNotOptimize(condition_residuals(t, pts));
}
BENCHMARK(BM_ConditionResiduals);

void BM_GenNijenhuisPair(benchmark::State& state) {
  Sphere6 s = make_sphere6();
  BlockEndo t = make_j_omega(s.metric, s.j);
  GenField u = frame_vector_section(s.chart, 1);
  GenField v = frame_form_section(s.chart, 2);
  GenField tor = gen_nijenhuis(t, u, v);
  Point p = sample_box(sphere6_equivalence_box(), 1, 9).front();
  for (auto _ : state) benchmark::DoNotOptimize(eval_section(tor, p));
}
BENCHMARK(BM_GenNijenhuisPair);

}  // namespace

BENCHMARK_MAIN();
