#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "gengeo/chart.hpp"
#include "gengeo/fields.hpp"

using namespace gengeo;

namespace {
constexpr double kPi = std::numbers::pi;

ChartPtr circle_chart() {
  // unit circle: 1-chart embedded in R^2
  return make_chart("circle", {"t"}, {{0.3, 2 * kPi - 0.3}},
                    {parse("cos(t)", {"t"}), parse("sin(t)", {"t"})});
}
}  // namespace

TEST_CASE("chart construction validates inputs") {
  CHECK_THROWS_AS(make_chart("x", {}, {}), DomainError);
  CHECK_THROWS_AS(make_chart("x", {"a"}, {{1.0, 0.0}}), DomainError);  // lo >= hi
  CHECK_THROWS_AS(make_chart("x", {"a", "b"}, {{0, 1}}), DomainError);
  // embedding below the chart dimension is an immersion failure by arity
  CHECK_THROWS_AS(make_chart("x", {"a", "b"}, {{0, 1}, {0, 1}}, {parse("a", {"a", "b"})}),
                  DomainError);
}

TEST_CASE("containment is strict interior") {
  ChartPtr c = make_euclidean_chart(2);
  CHECK(c->contains({0.0, 0.0}));
  CHECK_FALSE(c->contains({10.0, 0.0}));
  CHECK_FALSE(c->contains({0.0, -10.0}));
  CHECK_THROWS_AS(c->require_inside({11.0, 0.0}), DomainError);
  CHECK_THROWS_AS(c->require_inside({0.0}), DomainError);  // wrong arity
}

TEST_CASE("sampling stays inside and is seed-reproducible") {
  ChartPtr c = circle_chart();
  std::vector<Point> a = sample_chart(*c, 40, 5);
  std::vector<Point> b = sample_chart(*c, 40, 5);
  std::vector<Point> d = sample_chart(*c, 40, 6);
  CHECK(a == b);
  CHECK(a != d);
  for (const Point& p : a) CHECK(c->contains(p));
}

TEST_CASE("embedding jacobian and rank margin on the circle") {
  ChartPtr c = circle_chart();
  Point p = {1.1};
  Mat<double> jac = embedding_jacobian(*c, p);
  CHECK(jac.rows == 2);
  CHECK(jac.cols == 1);
  CHECK(jac.at(0, 0) == doctest::Approx(-std::sin(1.1)));
  CHECK(jac.at(1, 0) == doctest::Approx(std::cos(1.1)));
  // the circle is a unit-speed immersion: smallest singular value is 1
  double margin = min_embedding_rank_margin(*c, sample_chart(*c, 10, 1));
  CHECK(margin == doctest::Approx(1.0));
}

TEST_CASE("require_same_chart is identity, not equality") {
  ChartPtr a = make_euclidean_chart(2);
  ChartPtr b = make_euclidean_chart(2);
  CHECK_NOTHROW(require_same_chart(a, a));
  CHECK_THROWS_AS(require_same_chart(a, b), DomainError);
}

TEST_CASE("lu solves and detects singularity") {
  Mat<double> m(3, 3);
  double vals[9] = {2, 1, 0, 1, 3, 1, 0, 1, 4};
  for (int i = 0; i < 9; ++i) m.a[static_cast<std::size_t>(i)] = vals[i];
  Mat<double> id = identity_mat<double>(3);
  Mat<double> inv = lu_solve(m, id);
  CHECK(max_abs(matmul(m, inv) - id) < 1e-13);

  Mat<double> sing(2, 2);
  sing.at(0, 0) = 1.0;
  sing.at(0, 1) = 2.0;
  sing.at(1, 0) = 2.0;
  sing.at(1, 1) = 4.0;
  CHECK_THROWS_AS(lu_solve(sing, identity_mat<double>(2)), DomainError);
}

TEST_CASE("least squares recovers an exact tangent solve") {
  // overdetermined consistent system: E x = b with b in the column space
  Mat<double> e(3, 2);
  e.at(0, 0) = 1.0;
  e.at(1, 1) = 2.0;
  e.at(2, 0) = 1.0;
  e.at(2, 1) = 1.0;
  Mat<double> x(2, 1);
  x.at(0, 0) = 0.75;
  x.at(1, 0) = -1.5;
  Mat<double> b = matmul(e, x);
  Mat<double> sol = lstsq(e, b);
  CHECK(max_abs(sol - x) < 1e-13);
}

TEST_CASE("jacobi eigenvalues of a symmetric matrix") {
  // eigenvalues of [[2,1],[1,2]] are 1 and 3
  Mat<double> m(2, 2);
  m.at(0, 0) = 2.0;
  m.at(0, 1) = 1.0;
  m.at(1, 0) = 1.0;
  m.at(1, 1) = 2.0;
  std::vector<double> ev = sym_eigenvalues(m);
  CHECK(ev[0] == doctest::Approx(1.0));
  CHECK(ev[1] == doctest::Approx(3.0));
  CHECK(min_singular_value(m) == doctest::Approx(1.0));
}

TEST_CASE("matrix field algebra and pointwise inverse") {
  auto m = mat_from_exprs({{parse("2 + sin(u1)", {"u1"}), Expr::constant(1.0)},
                           {Expr::constant(0.0), parse("1 + u1^2", {"u1"})}});
  auto minv = mat_inverse(m);
  Point p = {0.6};
  Mat<double> prod = matmul(eval_mat<double>(*m, std::span<const double>(p)),
                            eval_mat<double>(*minv, std::span<const double>(p)));
  CHECK(max_abs(prod - identity_mat<double>(2)) < 1e-14);

  // the inverse field differentiates: d/du (1/(2+sin u)) = -cos u/(2+sin u)^2
  MatJet<double> jet = mat_jet<double>(*minv, std::span<const double>(p));
  double den = 2.0 + std::sin(0.6);
  CHECK(jet.d[0].at(0, 0) == doctest::Approx(-std::cos(0.6) / (den * den)));
}

TEST_CASE("cached matrix field agrees with its source at every level") {
  auto raw = mat_from_exprs({{parse("sin(u1)*u2", {"u1", "u2"}), Expr::constant(2.0)},
                             {parse("u1^2", {"u1", "u2"}), parse("cos(u2)", {"u1", "u2"})}});
  auto cached = mat_cached(raw);
  Point p = {0.8, -0.4};
  std::span<const double> x(p);
  CHECK(max_abs(eval_mat<double>(*cached, x) - eval_mat<double>(*raw, x)) == 0.0);
  MatJet<double> ja = mat_jet<double>(*cached, x);
  MatJet<double> jb = mat_jet<double>(*raw, x);
  CHECK(max_abs(ja.val - jb.val) == 0.0);
  for (int k = 0; k < 2; ++k)
    CHECK(max_abs(ja.d[static_cast<std::size_t>(k)] - jb.d[static_cast<std::size_t>(k)]) == 0.0);
  // repeated evaluation hits the cache and stays identical
  CHECK(max_abs(eval_mat<double>(*cached, x) - eval_mat<double>(*raw, x)) == 0.0);
}

TEST_CASE("vector jets differentiate componentwise") {
  auto v = vec_from_exprs({parse("u1*u2", {"u1", "u2"}), parse("sin(u2)", {"u1", "u2"})});
  Point p = {1.5, 0.7};
  VecJet<double> jet = vec_jet<double>(*v, std::span<const double>(p));
  CHECK(jet.val[0] == doctest::Approx(1.05));
  CHECK(jet.d.at(0, 0) == doctest::Approx(0.7));   // d(u1 u2)/du1
  CHECK(jet.d.at(1, 0) == doctest::Approx(1.5));   // d(u1 u2)/du2
  CHECK(jet.d.at(1, 1) == doctest::Approx(std::cos(0.7)));
  CHECK(jet.d.at(0, 1) == doctest::Approx(0.0));
}
