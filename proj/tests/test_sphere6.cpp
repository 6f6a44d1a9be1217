#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gengeo/sphere6.hpp"

using namespace gengeo;

namespace {

const double kHalfPi = 1.5707963267948966;

const Sphere6& s6() {
  static Sphere6 s = make_sphere6();
  return s;
}

}  // namespace

TEST_CASE("both candidate tables are genuine cross products") {
  for (const CrossTable& t : {cyclic_cross_table(), cayley_dickson_cross_table()}) {
    CAPTURE(t.variant);
    CHECK(t.antisymmetry_defect() == 0.0);
    CHECK(t.norm_property_defect(200, 11) < 1e-12);
  }
  CHECK(calibration_candidates().size() == 56);  // 2 families x 7 shifts x rev x sign
}

TEST_CASE("calibration picks the labeling that matches the fixtures") {
  CHECK(s6().table.variant == "cd shift=0 rev=0 sign=+1");

  std::vector<Point> pts = sample_chart(*s6().chart, 10, 12);
  CHECK(fixture_defect(s6().chart, s6().j.comps, pts) < 1e-10);

  // the cyclic labeling is a valid cross product but the wrong chart match
  EndoField jc = build_j(s6().chart, cyclic_cross_table());
  CHECK(fixture_defect(s6().chart, jc.comps, pts) > 0.1);
  CHECK_THROWS_AS(calibrate_table(s6().chart, {cyclic_cross_table()}, 5, 13), DomainError);
}

TEST_CASE("structure tensor at the centre point") {
  Point pc(6, kHalfPi);
  Mat<double> J = eval_endo(s6().j, pc);
  // J d_1 = -d_6 and J d_6 = +d_1 here
  for (int k = 0; k < 5; ++k) {
    CHECK(J.at(0, k) == doctest::Approx(0.0));
    CHECK(J.at(k, 0) == doctest::Approx(0.0));
  }
  CHECK(J.at(0, 5) == doctest::Approx(-1.0));
  CHECK(J.at(5, 0) == doctest::Approx(1.0));

  std::vector<Point> pts = sample_chart(*s6().chart, 20, 14);
  CHECK(complex_structure_defect(s6().j, pts) < 1e-9);
  CHECK(metric_compatibility_defect(s6().metric, s6().j, pts) < 1e-9);
}

TEST_CASE("round metric diagnostics") {
  std::vector<Point> pts = sample_chart(*s6().chart, 25, 15);
  CHECK(metric_symmetry_defect(s6().metric, pts) == 0.0);
  CHECK(metric_inverse_defect(s6().metric, pts) < 1e-12);
  // induced metric of the unit-sphere embedding
  CHECK(metric_pullback_defect(s6().metric, pts) < 1e-12);
  CHECK(min_embedding_rank_margin(*s6().chart, pts) > 1e-3);

  // diagonal entries against the published strings
  const Sphere6Text& text = sphere6_text();
  for (const Point& p : sample_chart(*s6().chart, 5, 16)) {
    Mat<double> g = eval_mat<double>(*s6().metric.g, std::span<const double>(p));
    for (int i = 0; i < 6; ++i) {
      Expr e = parse(text.metric_diag[static_cast<std::size_t>(i)], s6().chart->coord_names());
      CHECK(g.at(i, i) == doctest::Approx(e.eval(p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("sampling boxes stay inside the chart") {
  for (const std::vector<Interval>& box : {sphere6_equivalence_box(), sphere6_scan_box()}) {
    REQUIRE(box.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
      CHECK(box[i].lo < box[i].hi);
      CHECK(box[i].lo >= s6().chart->domain()[i].lo);
      CHECK(box[i].hi <= s6().chart->domain()[i].hi);
    }
    for (const Point& p : sample_box(box, 10, 17)) CHECK(s6().chart->contains(p));
  }
}

TEST_CASE("quaternion triple on the sphere") {
  std::vector<Point> pts = sample_box(sphere6_equivalence_box(), 5, 18);
  BlockEndo j1 = make_j_lambda(s6().j, 1);
  BlockEndo jg = make_j_g(s6().metric);
  BlockEndo jw = make_j_omega(s6().metric, s6().j);
  CHECK(hypercomplex_check(jg, j1, jw, pts));
  GenStructureClass cls = classify(spherical_combination(0.6, 0.0, 0.8, s6().metric, s6().j), pts);
  CHECK(cls.weak);
  CHECK_FALSE(cls.strong);
}

TEST_CASE("symmetrized slots collapse pairs of raw conditions") {
  const std::vector<std::string>& names = s6().chart->coord_names();
  BlockEndo t = spherical_combination(scalar_from_expr(parse("sin(u1)", names)),
                                      scalar_from_expr(parse("cos(u1)*sin(u2)", names)),
                                      scalar_from_expr(parse("cos(u1)*cos(u2)", names)),
                                      s6().metric, s6().j,
                                      sample_box(sphere6_equivalence_box(), 10, 3));
  std::vector<Point> pts = sample_box(sphere6_equivalence_box(), 2, 19);
  ResidualReport rr = condition_residuals(t, pts);
  double worst = 0.0, mag = 0.0;
  for (int k = 0; k < static_cast<int>(pts.size()); ++k) {
    SymmetrizedResiduals sr = symmetrized_conditions(t, pts[static_cast<std::size_t>(k)]);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        for (int l = 0; l < 6; ++l) {
          worst = std::max(worst, std::abs(sr.s1_at(i, j, l) +
                                           rr.at(2, i, j, l, k) + rr.at(4, j, i, l, k)));
          worst = std::max(worst, std::abs(sr.s2_at(i, j, l) +
                                           rr.at(6, i, j, l, k) + rr.at(6, j, i, l, k)));
          mag = std::max({mag, std::abs(sr.s1_at(i, j, l)), std::abs(sr.s2_at(i, j, l))});
        }
  }
  CHECK(worst < 1e-12);
  CHECK(mag > 0.5);  // the identity is not vacuous here
}

TEST_CASE("closed-form torsion combination at a hand point") {
  // at (pi/2, pi/3, pi/3, ...) the right side is -sin(pi/3) (1/4 + 1/4) / (3/4)
  Point pp = {kHalfPi, M_PI / 3.0, M_PI / 3.0, kHalfPi, kHalfPi, kHalfPi};
  IdentityCheck chk = cross_torsion_identity(s6(), pp);
  CHECK(chk.rhs == doctest::Approx(-std::sqrt(3.0) / 3.0).epsilon(1e-13));
  CHECK(chk.gap() < 1e-12 * (1.0 + std::abs(chk.rhs)));

  for (const Point& p : sample_box(sphere6_scan_box(), 10, 20)) {
    IdentityCheck c = cross_torsion_identity(s6(), p);
    CHECK(c.gap() < 1e-10 * (1.0 + std::abs(c.rhs)));
    CHECK(std::abs(c.rhs) > 0.1);  // bounded away from zero on the scan box
  }
}

TEST_CASE("metric-leg obstruction identity") {
  Point p0 = {M_PI / 3.0, 1.0, 1.2, kHalfPi, 2.0, 3.0};
  const std::vector<std::string>& names = s6().chart->coord_names();

  // s2 slot of the pure metric structure carries the whole left side
  SymmetrizedResiduals sr = symmetrized_conditions(make_j_g(s6().metric), p0);
  CHECK(sr.s2_at(1, 1, 0) ==
        doctest::Approx(-4.0 * std::cos(p0[0]) / std::pow(std::sin(p0[0]), 3)).epsilon(1e-12));

  IdentityCheck tb = metric_leg_obstruction(s6(), Expr::constant(1.0), parse("u2", names), p0);
  CHECK(tb.rhs == doctest::Approx(8.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-13));
  CHECK(tb.gap() < 1e-12 * (1.0 + std::abs(tb.rhs)));

  // the collapse holds for any smooth coefficients, not just constants
  Expr b = parse("sin(u2)*u3", names);
  Expr c = parse("cos(u4)+u5", names);
  for (const Point& p : sample_box(sphere6_scan_box(), 8, 22)) {
    IdentityCheck chk = metric_leg_obstruction(s6(), b, c, p);
    CHECK(chk.gap() < 1e-10 * (1.0 + std::abs(chk.rhs)));
  }
}

TEST_CASE("no spherical direction integrates") {
  ScanReport scan = scan_nonexistence(s6(), 6, 5, 21, 1e-3);
  REQUIRE(scan.entries.size() == 6);
  CHECK(scan.all_nonvanishing);
  CHECK(scan.min_max_residual > 1.0);  // far above the nonvanishing floor
  CHECK(scan.weakest_direction >= 0);
  CHECK(scan.weakest_direction < 6);
  double weakest = scan.entries[static_cast<std::size_t>(scan.weakest_direction)].max_residual;
  CHECK(weakest == doctest::Approx(scan.min_max_residual));
  for (const ScanEntry& e : scan.entries) {
    CHECK(e.a * e.a + e.b * e.b + e.c * e.c == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.max_residual >= scan.min_max_residual);
    CHECK(e.max_scale >= 1.0);
  }
  // reruns with the same seed reproduce the sweep exactly
  ScanReport again = scan_nonexistence(s6(), 6, 5, 21, 1e-3);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(again.entries[i].a == scan.entries[i].a);
    CHECK(again.entries[i].max_residual == scan.entries[i].max_residual);
  }
}
