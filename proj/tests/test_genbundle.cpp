#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gengeo/genbundle.hpp"

using namespace gengeo;

namespace {

const std::vector<std::string> n2 = {"u1", "u2"};

Expr c0() { return Expr::constant(0.0); }
Expr c1() { return Expr::constant(1.0); }

EndoField flat_j(const ChartPtr& chart) {
  return endo_field(chart, {{c0(), c1()}, {Expr::constant(-1.0), c0()}});
}

MetricField flat_metric(const ChartPtr& chart) {
  return metric_field(chart, {{c1(), c0()}, {c0(), c1()}});
}

}  // namespace

TEST_CASE("canonical pairing values and gram spectrum") {
  ChartPtr chart = make_euclidean_chart(2);
  GenField u = gen_add(frame_vector_section(chart, 0), frame_form_section(chart, 0));
  CHECK(pairing_g0(u, u, {0.0, 0.0}) == doctest::Approx(1.0));
  GenField v = frame_vector_section(chart, 1);
  CHECK(pairing_g0(u, v, {0.0, 0.0}) == doctest::Approx(0.0));
  GenField w = frame_form_section(chart, 0);
  CHECK(pairing_g0(frame_vector_section(chart, 0), w, {0.0, 0.0}) == doctest::Approx(0.5));

  std::vector<double> ev = sym_eigenvalues(pairing_gram(2));
  CHECK(ev[0] == doctest::Approx(-0.5));
  CHECK(ev[1] == doctest::Approx(-0.5));
  CHECK(ev[2] == doctest::Approx(0.5));
  CHECK(ev[3] == doctest::Approx(0.5));
}

TEST_CASE("block tables apply with the row-input convention") {
  ChartPtr chart = make_euclidean_chart(2);
  MetricField g = flat_metric(chart);
  EndoField j = flat_j(chart);
  Point p = {0.3, 0.4};

  BlockEndo jg = make_j_g(g);
  SectionValue r = eval_section(apply(jg, frame_vector_section(chart, 0)), p);
  CHECK(r.vec[0] == doctest::Approx(0.0));  // J_g d_1 = dx1
  CHECK(r.form[0] == doctest::Approx(1.0));
  SectionValue s = eval_section(apply(jg, frame_form_section(chart, 0)), p);
  CHECK(s.vec[0] == doctest::Approx(-1.0));  // J_g dx1 = -d_1
  CHECK(s.form[0] == doctest::Approx(0.0));

  BlockEndo jw = make_j_omega(g, j);
  SectionValue t = eval_section(apply(jw, frame_form_section(chart, 0)), p);
  CHECK(t.vec[0] == doctest::Approx(0.0));  // J_w dx1 = d_2
  CHECK(t.vec[1] == doctest::Approx(1.0));
  CHECK(t.form[0] == doctest::Approx(0.0));

  // assembled layout [[A, C], [B, D]] with rows as inputs
  Mat<double> table = assembled_table(jg, p);
  CHECK(table.at(0, 2) == doctest::Approx(1.0));   // C block: g
  CHECK(table.at(2, 0) == doctest::Approx(-1.0));  // B block: -ginv
  CHECK(table.at(0, 0) == doctest::Approx(0.0));

  // apply_at agrees with the field path
  SectionValue in;
  in.vec = {0.7, -0.2};
  in.form = {0.1, 0.5};
  SectionValue direct = apply_at(jg, in, p);
  GenField sec = gen_section(chart, {Expr::constant(0.7), Expr::constant(-0.2)},
                             {Expr::constant(0.1), Expr::constant(0.5)});
  SectionValue via_field = eval_section(apply(jg, sec), p);
  for (int i = 0; i < 2; ++i) {
    CHECK(direct.vec[static_cast<std::size_t>(i)] ==
          doctest::Approx(via_field.vec[static_cast<std::size_t>(i)]));
    CHECK(direct.form[static_cast<std::size_t>(i)] ==
          doctest::Approx(via_field.form[static_cast<std::size_t>(i)]));
  }
}

TEST_CASE("composition reproduces the quaternion relations") {
  ChartPtr chart = make_euclidean_chart(2);
  MetricField g = flat_metric(chart);
  EndoField j = flat_j(chart);
  BlockEndo j1 = make_j_lambda(j, 1);
  BlockEndo jg = make_j_g(g);
  BlockEndo jw = make_j_omega(g, j);
  std::vector<Point> pts = sample_chart(*chart, 5, 1);
  for (const Point& p : pts) {
    Mat<double> w = assembled_table(jw, p);
    CHECK(max_abs(assembled_table(compose(jg, j1), p) - w) < 1e-14);
    Mat<double> anti = assembled_table(compose(j1, jg), p);
    for (double& x : anti.a) x = -x;
    CHECK(max_abs(anti - w) < 1e-14);
  }
  CHECK(hypercomplex_check(jg, j1, jw, pts));
  // wrong cyclic order flips a sign and must fail
  CHECK_FALSE(hypercomplex_check(j1, jg, jw, pts));
}

TEST_CASE("classification of the flat structures") {
  ChartPtr chart = make_euclidean_chart(2);
  MetricField g = flat_metric(chart);
  EndoField j = flat_j(chart);
  std::vector<Point> pts = sample_chart(*chart, 5, 2);

  GenStructureClass c1j = classify(make_j_lambda(j, 1), pts);
  CHECK(c1j.weak);
  CHECK_FALSE(c1j.strong);  // diag(J, J*) is pairing-symmetric

  GenStructureClass cm = classify(make_j_lambda(j, -1), pts);
  CHECK(cm.strong);

  GenStructureClass cg = classify(make_j_g(g), pts);
  CHECK(cg.weak);
  CHECK_FALSE(cg.strong);
  CHECK(cg.skew_defect == doctest::Approx(1.0));  // G0(T d_1, d_1) pairs to 1/2 twice

  GenStructureClass cw = classify(make_j_omega(g, j), pts);
  CHECK(cw.strong);
}

TEST_CASE("invalid structure parameters are rejected") {
  ChartPtr chart = make_euclidean_chart(2);
  MetricField g = flat_metric(chart);
  EndoField j = flat_j(chart);
  CHECK_THROWS_AS(make_j_lambda(j, 2), DomainError);
  CHECK_THROWS_AS(make_j_lambda(j, 0), DomainError);
  CHECK_THROWS_AS(spherical_combination(1.0, 1.0, 0.0, g, j), DomainError);
  CHECK_NOTHROW(spherical_combination(0.6, 0.0, 0.8, g, j));
}

TEST_CASE("spherical combination with coefficient fields") {
  ChartPtr chart = make_euclidean_chart(2);
  MetricField g = flat_metric(chart);
  EndoField j = flat_j(chart);
  std::vector<Point> pts = sample_chart(*chart, 8, 3);

  BlockEndo t = spherical_combination(scalar_from_expr(parse("cos(u1)", n2)),
                                      scalar_from_expr(parse("sin(u1)", n2)),
                                      scalar_constant(0.0), g, j, pts);
  GenStructureClass cls = classify(t, pts);
  CHECK(cls.weak);
  CHECK_FALSE(cls.strong);  // mixing the two symmetric legs keeps it symmetric

  // a pointwise norm violation is caught at construction
  CHECK_THROWS_AS(spherical_combination(scalar_from_expr(parse("u1", n2)), scalar_constant(0.0),
                                        scalar_constant(0.0), g, j, pts),
                  DomainError);
}

TEST_CASE("linear combination matches hand-assembled blocks") {
  ChartPtr chart = make_euclidean_chart(2);
  MetricField g = flat_metric(chart);
  EndoField j = flat_j(chart);
  BlockEndo jg = make_j_g(g);
  BlockEndo jw = make_j_omega(g, j);
  BlockEndo combo = linear_combination(
      {{scalar_constant(0.6), jg}, {scalar_constant(0.8), jw}});
  BlockEndo sferic = spherical_combination(0.0, 0.6, 0.8, g, j);
  for (const Point& p : sample_chart(*chart, 4, 9))
    CHECK(max_abs(assembled_table(combo, p) - assembled_table(sferic, p)) < 1e-15);
}

TEST_CASE("charts must match across operands") {
  ChartPtr a = make_euclidean_chart(2);
  ChartPtr b = make_euclidean_chart(2);
  BlockEndo ja = make_j_g(flat_metric(a));
  CHECK_THROWS_AS(apply(ja, frame_vector_section(b, 0)), DomainError);
  CHECK_THROWS_AS(endo_sum(ja, make_j_g(flat_metric(b))), DomainError);
}

TEST_CASE("complex and skew defects flag broken tables") {
  ChartPtr chart = make_euclidean_chart(2);
  // A alone with A^2 = +Id is not a generalized complex candidate
  BlockEndo bad = block_endo(chart, mat_constant(identity_mat<double>(2)), zero_block(2),
                             zero_block(2), mat_constant(identity_mat<double>(2)));
  std::vector<Point> pts = sample_chart(*chart, 3, 4);
  CHECK(gen_complex_defect(bad, pts) == doctest::Approx(2.0));
  GenStructureClass cls = classify(bad, pts);
  CHECK_FALSE(cls.weak);
  CHECK_FALSE(cls.strong);
}
