#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "gengeo/exprgen.hpp"
#include "gengeo/integrability.hpp"

using namespace gengeo;

namespace {

MatrixFieldPtr random_block(SplitMix64& rng, int n) {
  ExprGenOptions opt;
  opt.max_depth = 2;
  std::vector<std::vector<Expr>> rows;
  for (int i = 0; i < n; ++i) {
    std::vector<Expr> row;
    for (int j = 0; j < n; ++j) row.push_back(random_expr(rng, n, opt));
    rows.push_back(row);
  }
  return mat_from_exprs(rows);
}

// Almost Hermitian pair on the plane with curvature in u1: J^2 = -Id and
// g(J., J.) = g hold identically.
struct CurvedPair {
  ChartPtr chart;
  MetricField g;
  EndoField j;
};

CurvedPair curved_pair() {
  ChartPtr chart = make_euclidean_chart(2);
  const std::vector<std::string>& n = chart->coord_names();
  MetricField g = metric_field(chart, {{parse("1", n), parse("0", n)},
                                       {parse("0", n), parse("1/(1+u1^2)^2", n)}});
  EndoField j = endo_field(chart, {{parse("0", n), parse("1+u1^2", n)},
                                   {parse("-1/(1+u1^2)", n), parse("0", n)}});
  return {chart, g, j};
}

}  // namespace

TEST_CASE("slot description names frame pairs one-based") {
  CHECK(describe(SlotIndex{6, 3, 5, 2, 17}) ==
        "torsion(dx_4, dx_6) vector component 3 at point 17");
  CHECK(describe(SlotIndex{0, 0, 1, 0, 0}) == "torsion(e_1, e_2) vector component 1 at point 0");
  CHECK(describe(SlotIndex{3, 2, 0, 1, 4}) == "torsion(e_3, dx_1) form component 2 at point 4");
  CHECK(describe(SlotIndex{5, 0, 0, 0, 1}) == "torsion(dx_1, e_1) form component 1 at point 1");
}

TEST_CASE("residual report bookkeeping and verdict thresholds") {
  ResidualReport rr(2, 3);
  CHECK(rr.dim() == 2);
  CHECK(rr.num_points() == 3);
  CHECK(rr.max_abs() == 0.0);
  // empty report counts as vanishing
  CHECK(rr.verdict(1e-9, 1e-3) == ResidualReport::Verdict::vanishes);

  for (int c = 0; c < 8; ++c)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l)
          for (int p = 0; p < 3; ++p) rr.scale_at(c, i, j, l, p) = 1.0;

  rr.at(6, 0, 1, 1, 2) = 1e-12;
  CHECK(rr.verdict(1e-9, 1e-3) == ResidualReport::Verdict::vanishes);
  SlotIndex top = rr.argmax();
  CHECK(top.condition == 6);
  CHECK(top.i == 0);
  CHECK(top.j == 1);
  CHECK(top.l == 1);
  CHECK(top.point == 2);

  rr.at(2, 1, 0, 0, 1) = -5e-7;
  CHECK(rr.max_abs() == doctest::Approx(5e-7));
  CHECK(rr.verdict(1e-9, 1e-3) == ResidualReport::Verdict::indeterminate);
  CHECK(rr.argmax().condition == 2);

  rr.at(0, 0, 0, 0, 0) = 2e-3;
  CHECK(rr.verdict(1e-9, 1e-3) == ResidualReport::Verdict::nonvanishing);

  rr.scale_at(1, 1, 1, 1, 1) = 7.0;
  CHECK(rr.max_scale() == doctest::Approx(7.0));
  // a big scale loosens the vanishing bound proportionally
  ResidualReport loose(1, 1);
  loose.at(0, 0, 0, 0, 0) = 5e-8;
  loose.scale_at(0, 0, 0, 0, 0) = 100.0;
  CHECK(loose.verdict(1e-9, 1e-3) == ResidualReport::Verdict::vanishes);

  CHECK(std::string(to_string(ResidualReport::Verdict::vanishes)) == "vanishes");
  CHECK(std::string(to_string(ResidualReport::Verdict::nonvanishing)) == "nonvanishing");
  CHECK(std::string(to_string(ResidualReport::Verdict::indeterminate)) == "indeterminate");
}

TEST_CASE("report gaps, flat and scale-relative") {
  ResidualReport a(1, 1), b(1, 1);
  for (int c = 0; c < 8; ++c) {
    a.scale_at(c, 0, 0, 0, 0) = 1.0;
    b.scale_at(c, 0, 0, 0, 0) = 1.0;
  }
  a.at(4, 0, 0, 0, 0) = 1.0;
  b.at(4, 0, 0, 0, 0) = 1.25;
  a.scale_at(4, 0, 0, 0, 0) = 10.0;
  CHECK(max_gap(a, b) == doctest::Approx(0.25));
  CHECK(max_scaled_gap(a, b) == doctest::Approx(0.025));
  ResidualReport other(2, 1);
  CHECK_THROWS_AS(max_gap(a, other), DomainError);
}

TEST_CASE("metric structure on the line: all eight conditions by hand") {
  // g = 1 + u1^2, so beta = -1/g.  At u = 1: g = 2, g' = 2.
  ChartPtr chart = make_euclidean_chart(1);
  MetricField g = metric_field(chart, {{parse("1+u1^2", chart->coord_names())}});
  BlockEndo jg = make_j_g(g);
  std::vector<Point> pts = {{1.0}};
  ResidualReport rr = condition_residuals(jg, pts);

  CHECK(rr.at(0, 0, 0, 0, 0) == doctest::Approx(1.0));    // g'/g
  CHECK(rr.at(1, 0, 0, 0, 0) == doctest::Approx(0.0));
  CHECK(rr.at(2, 0, 0, 0, 0) == doctest::Approx(0.0));
  CHECK(rr.at(3, 0, 0, 0, 0) == doctest::Approx(-1.0));   // -g'/g
  CHECK(rr.at(4, 0, 0, 0, 0) == doctest::Approx(0.0));
  CHECK(rr.at(5, 0, 0, 0, 0) == doctest::Approx(1.0));    // +g'/g
  CHECK(rr.at(6, 0, 0, 0, 0) == doctest::Approx(0.25));   // g'/g^3
  CHECK(rr.at(7, 0, 0, 0, 0) == doctest::Approx(0.0));

  // the bracket oracle lands on the same numbers
  CHECK(max_gap(rr, oracle_frame_nijenhuis(jg, pts)) < 1e-12);

  SymmetrizedResiduals sr = symmetrized_conditions(jg, pts[0]);
  CHECK(sr.s1_at(0, 0, 0) == doctest::Approx(0.0));
  CHECK(sr.s2_at(0, 0, 0) == doctest::Approx(-0.5));  // 2 beta beta'
  // the symmetrized combinations against the raw slots
  CHECK(sr.s1_at(0, 0, 0) ==
        doctest::Approx(-(rr.at(2, 0, 0, 0, 0) + rr.at(4, 0, 0, 0, 0))));
  CHECK(sr.s2_at(0, 0, 0) ==
        doctest::Approx(-(rr.at(6, 0, 0, 0, 0) + rr.at(6, 0, 0, 0, 0))));
}

TEST_CASE("direct conditions equal the bracket oracle on generic tables") {
  for (int n : {2, 3}) {
    CAPTURE(n);
    ChartPtr chart = make_euclidean_chart(n);
    SplitMix64 rng(777 + static_cast<std::uint64_t>(n));
    BlockEndo t = block_endo(chart, random_block(rng, n), random_block(rng, n),
                             random_block(rng, n), random_block(rng, n));
    std::vector<Point> pts = sample_chart(*chart, 4, 5);
    ResidualReport rr = condition_residuals(t, pts);
    ResidualReport oo = oracle_frame_nijenhuis(t, pts);
    CHECK(max_scaled_gap(rr, oo) < 1e-12);
    // a generic table is nowhere near integrable
    CHECK(rr.max_abs() > 1e-2);
  }
}

TEST_CASE("symmetrized slots match their defining formula") {
  ChartPtr chart = make_euclidean_chart(2);
  SplitMix64 rng(31);
  MatrixFieldPtr A = random_block(rng, 2);
  MatrixFieldPtr B = random_block(rng, 2);
  MatrixFieldPtr C = random_block(rng, 2);
  MatrixFieldPtr D = random_block(rng, 2);
  BlockEndo t = block_endo(chart, A, B, C, D);
  for (const Point& p : sample_chart(*chart, 3, 8)) {
    SymmetrizedResiduals sr = symmetrized_conditions(t, p);
    MatJet<double> ja = mat_jet<double>(*A, std::span<const double>(p));
    MatJet<double> jb = mat_jet<double>(*B, std::span<const double>(p));
    MatJet<double> jd = mat_jet<double>(*D, std::span<const double>(p));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l) {
          double s1 = 0.0, s2 = 0.0;
          for (int k = 0; k < 2; ++k) {
            s1 += jb.val.at(k, l) *
                  (ja.d[static_cast<std::size_t>(k)].at(i, j) +
                   jd.d[static_cast<std::size_t>(k)].at(j, i));
            s2 += jb.val.at(k, l) *
                  (jb.d[static_cast<std::size_t>(k)].at(i, j) +
                   jb.d[static_cast<std::size_t>(k)].at(j, i));
          }
          CHECK(sr.s1_at(i, j, l) == doctest::Approx(s1).epsilon(1e-10));
          CHECK(sr.s2_at(i, j, l) == doctest::Approx(s2).epsilon(1e-10));
        }
  }
}

TEST_CASE("surface hermitian pair: the skew structures integrate") {
  CurvedPair cp = curved_pair();
  std::vector<Point> pts = sample_chart(*cp.chart, 5, 6);
  CHECK(complex_structure_defect(cp.j, pts) < 1e-12);
  CHECK(metric_compatibility_defect(cp.g, cp.j, pts) < 1e-12);

  // on a surface every J is integrable and every two-form is closed, so both
  // skew structures must come out vanishing; the symmetric ones must not
  BlockEndo jw = make_j_omega(cp.g, cp.j);
  BlockEndo jm = make_j_lambda(cp.j, -1);
  BlockEndo j1 = make_j_lambda(cp.j, 1);
  BlockEndo jg = make_j_g(cp.g);

  CHECK(condition_residuals(jw, pts).verdict(1e-9, 1e-3) ==
        ResidualReport::Verdict::vanishes);
  CHECK(condition_residuals(jm, pts).verdict(1e-9, 1e-3) ==
        ResidualReport::Verdict::vanishes);
  CHECK(condition_residuals(j1, pts).verdict(1e-9, 1e-3) ==
        ResidualReport::Verdict::nonvanishing);
  CHECK(condition_residuals(jg, pts).verdict(1e-9, 1e-3) ==
        ResidualReport::Verdict::nonvanishing);

  // oracle agreement on all four
  for (const BlockEndo& t : {jw, jm, j1, jg})
    CHECK(max_scaled_gap(condition_residuals(t, pts), oracle_frame_nijenhuis(t, pts)) < 1e-12);
}

TEST_CASE("tensoriality holds for skew structures and fails for symmetric ones") {
  CurvedPair cp = curved_pair();
  std::vector<Point> pts = sample_chart(*cp.chart, 3, 7);
  CHECK(strong_sufficiency_gap(make_j_omega(cp.g, cp.j), pts, 3, 99) < 1e-8);
  CHECK(strong_sufficiency_gap(make_j_lambda(cp.j, -1), pts, 3, 99) < 1e-8);
  CHECK(strong_sufficiency_gap(make_j_lambda(cp.j, 1), pts, 3, 99) > 1e-3);
  CHECK(strong_sufficiency_gap(make_j_g(cp.g), pts, 3, 99) > 1e-3);
}
