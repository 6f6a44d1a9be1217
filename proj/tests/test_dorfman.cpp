#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gengeo/calculus.hpp"
#include "gengeo/dorfman.hpp"
#include "gengeo/exprgen.hpp"

using namespace gengeo;

namespace {

const std::vector<std::string> n2 = {"u1", "u2"};
const std::vector<std::string> n3 = {"u1", "u2", "u3"};

Expr c0() { return Expr::constant(0.0); }
Expr c1() { return Expr::constant(1.0); }

EndoField flat_j(const ChartPtr& chart) {
  // row-input table: J d_1 = d_2, J d_2 = -d_1
  return endo_field(chart, {{c0(), c1()}, {Expr::constant(-1.0), c0()}});
}

MetricField flat_metric(const ChartPtr& chart) {
  return metric_field(chart, {{c1(), c0()}, {c0(), c1()}});
}

GenField random_section(const ChartPtr& chart, SplitMix64& rng) {
  ExprGenOptions opt;
  opt.max_depth = 2;
  const int n = chart->dim();
  std::vector<Expr> vec, form;
  for (int i = 0; i < n; ++i) {
    vec.push_back(random_expr(rng, n, opt));
    form.push_back(random_expr(rng, n, opt));
  }
  return gen_section(chart, std::move(vec), std::move(form));
}

}  // namespace

TEST_CASE("lie bracket of u2 d_1 with d_2 is -d_1") {
  ChartPtr chart = make_euclidean_chart(2);
  VectorField x = vector_field(chart, {parse("u2", n2), c0()});
  VectorField y = vector_field(chart, {c0(), c1()});
  std::vector<double> b = eval_vector(lie_bracket(x, y), {0.3, -0.7});
  CHECK(b[0] == doctest::Approx(-1.0));
  CHECK(b[1] == doctest::Approx(0.0));
}

TEST_CASE("lie derivative of dx1 along u2 d_1 is dx2") {
  ChartPtr chart = make_euclidean_chart(2);
  VectorField x = vector_field(chart, {parse("u2", n2), c0()});
  OneForm eta = one_form(chart, {c1(), c0()});
  std::vector<double> ld = eval_one_form(lie_derivative_form(x, eta), {1.2, 0.4});
  CHECK(ld[0] == doctest::Approx(0.0));
  CHECK(ld[1] == doctest::Approx(1.0));
}

TEST_CASE("interior product of d(u1 dx2) with d_1 is dx2") {
  ChartPtr chart = make_euclidean_chart(2);
  OneForm xi = one_form(chart, {c0(), parse("u1", n2)});
  VectorField y = vector_field(chart, {c1(), c0()});
  std::vector<double> v = eval_one_form(interior_d(y, xi), {0.9, 2.1});
  CHECK(v[0] == doctest::Approx(0.0));
  CHECK(v[1] == doctest::Approx(1.0));
}

TEST_CASE("exterior derivative of a two-form on R^3") {
  ChartPtr chart = make_euclidean_chart(3);
  TwoForm w = two_form(chart, {{c0(), parse("u3", n3), c0()},
                               {parse("-u3", n3), c0(), c0()},
                               {c0(), c0(), c0()}});
  CHECK(two_form_antisym_defect(w, {{0.1, 0.2, 0.3}}) == doctest::Approx(0.0));
  Tensor3 dw = dtwoform(w, {1.0, -2.0, 0.5});
  CHECK(dw.at(2, 0, 1) == doctest::Approx(1.0));
  CHECK(dw.at(0, 1, 2) == doctest::Approx(1.0));  // total antisymmetry, even perm
  CHECK(dw.at(1, 0, 2) == doctest::Approx(-1.0)); // odd perm
  CHECK(dw.at(0, 0, 1) == doctest::Approx(0.0));
}

TEST_CASE("jacobi identity for the lie bracket") {
  ChartPtr chart = make_euclidean_chart(2);
  SplitMix64 rng(17);
  ExprGenOptions opt;
  opt.max_depth = 2;
  auto mk = [&] {
    return vector_field(chart, {random_expr(rng, 2, opt), random_expr(rng, 2, opt)});
  };
  VectorField x = mk(), y = mk(), z = mk();
  VectorField j1 = lie_bracket(x, lie_bracket(y, z));
  VectorField j2 = lie_bracket(lie_bracket(x, y), z);
  VectorField j3 = lie_bracket(y, lie_bracket(x, z));
  for (const Point& p : sample_chart(*chart, 5, 3)) {
    std::vector<double> a = eval_vector(j1, p), b = eval_vector(j2, p), c = eval_vector(j3, p);
    for (int i = 0; i < 2; ++i)
      CHECK(std::abs(a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)] -
                     c[static_cast<std::size_t>(i)]) < 1e-10);
  }
}

TEST_CASE("dorfman bracket frozen values") {
  ChartPtr chart = make_euclidean_chart(2);
  Point p = {0.8, -0.3};

  // [[d_1, u1 dx2]] = dx2
  GenField u = frame_vector_section(chart, 0);
  GenField v = gen_section(chart, {c0(), c0()}, {c0(), parse("u1", n2)});
  SectionValue r = eval_section(dorfman_bracket(u, v), p);
  CHECK(r.vec[0] == doctest::Approx(0.0));
  CHECK(r.vec[1] == doctest::Approx(0.0));
  CHECK(r.form[0] == doctest::Approx(0.0));
  CHECK(r.form[1] == doctest::Approx(1.0));

  // [[u2 d_1 + dx1, d_2]] = -d_1
  GenField a = gen_section(chart, {parse("u2", n2), c0()}, {c1(), c0()});
  GenField b = frame_vector_section(chart, 1);
  SectionValue s = eval_section(dorfman_bracket(a, b), p);
  CHECK(s.vec[0] == doctest::Approx(-1.0));
  CHECK(s.vec[1] == doctest::Approx(0.0));
  CHECK(s.form[0] == doctest::Approx(0.0));
  CHECK(s.form[1] == doctest::Approx(0.0));
}

TEST_CASE("dorfman bracket satisfies the leibniz identity") {
  ChartPtr chart = make_euclidean_chart(2);
  SplitMix64 rng(23);
  GenField u = random_section(chart, rng);
  GenField v = random_section(chart, rng);
  GenField w = random_section(chart, rng);
  GenField lhs = dorfman_bracket(u, dorfman_bracket(v, w));
  GenField r1 = dorfman_bracket(dorfman_bracket(u, v), w);
  GenField r2 = dorfman_bracket(v, dorfman_bracket(u, w));
  for (const Point& p : sample_chart(*chart, 4, 11)) {
    SectionValue a = eval_section(lhs, p), b = eval_section(r1, p), c = eval_section(r2, p);
    for (int i = 0; i < 2; ++i) {
      CHECK(std::abs(a.vec[static_cast<std::size_t>(i)] - b.vec[static_cast<std::size_t>(i)] -
                     c.vec[static_cast<std::size_t>(i)]) < 1e-9);
      CHECK(std::abs(a.form[static_cast<std::size_t>(i)] - b.form[static_cast<std::size_t>(i)] -
                     c.form[static_cast<std::size_t>(i)]) < 1e-9);
    }
  }
}

TEST_CASE("symmetric part of the bracket is the pairing differential") {
  ChartPtr chart = make_euclidean_chart(2);
  SplitMix64 rng(31);
  GenField u = random_section(chart, rng);
  GenField v = random_section(chart, rng);
  GenField sym = gen_add(dorfman_bracket(u, v), dorfman_bracket(v, u));
  for (const Point& p : sample_chart(*chart, 4, 7)) {
    SectionValue s = eval_section(sym, p);
    CHECK(std::abs(s.vec[0]) < 1e-10);
    CHECK(std::abs(s.vec[1]) < 1e-10);
    for (int k = 0; k < 2; ++k) {
      Point hi = p, lo = p;
      hi[static_cast<std::size_t>(k)] += 1e-6;
      lo[static_cast<std::size_t>(k)] -= 1e-6;
      double grad = (2.0 * pairing_g0(u, v, hi) - 2.0 * pairing_g0(u, v, lo)) / 2e-6;
      CHECK(std::abs(s.form[static_cast<std::size_t>(k)] - grad) <
            1e-4 * (1.0 + std::abs(grad)));
    }
  }
}

TEST_CASE("endomorphism tables act on vectors and forms") {
  ChartPtr chart = make_euclidean_chart(2);
  EndoField j = flat_j(chart);
  Point p = {0.1, 0.2};
  // J d_1 = d_2
  std::vector<double> jx = eval_vector(endo_apply(j, vector_field(chart, {c1(), c0()})), p);
  CHECK(jx[0] == doctest::Approx(0.0));
  CHECK(jx[1] == doctest::Approx(1.0));
  // J* dx1 = -dx2
  std::vector<double> jf =
      eval_one_form(endo_apply_transpose(j, one_form(chart, {c1(), c0()})), p);
  CHECK(jf[0] == doctest::Approx(0.0));
  CHECK(jf[1] == doctest::Approx(-1.0));
  CHECK(complex_structure_defect(j, {p}) == doctest::Approx(0.0));
}

TEST_CASE("musical tables for the flat pair") {
  ChartPtr chart = make_euclidean_chart(2);
  Musicals m = musical(flat_metric(chart), flat_j(chart));
  Point p = {0.0, 0.0};
  std::span<const double> x(p);
  Mat<double> fo = eval_mat<double>(*m.flat_omega, x);
  CHECK(fo.at(0, 1) == doctest::Approx(1.0));
  CHECK(fo.at(1, 0) == doctest::Approx(-1.0));
  Mat<double> so = eval_mat<double>(*m.sharp_omega, x);
  CHECK(so.at(0, 1) == doctest::Approx(-1.0));
  CHECK(so.at(1, 0) == doctest::Approx(1.0));
  Mat<double> sg = eval_mat<double>(*m.sharp_g, x);
  CHECK(max_abs(sg - identity_mat<double>(2)) == doctest::Approx(0.0));
}

TEST_CASE("classical torsion: field combinator matches the jet tensor") {
  // N_J is defined for any endomorphism table; any almost complex structure
  // on a 2-chart has vanishing torsion, so run a generic 3x3 table instead.
  ChartPtr chart = make_euclidean_chart(3);
  SplitMix64 rng(41);
  ExprGenOptions opt;
  opt.max_depth = 2;
  std::vector<std::vector<Expr>> entries(3);
  for (auto& row : entries)
    for (int k = 0; k < 3; ++k) row.push_back(random_expr(rng, 3, opt));
  EndoField j = endo_field(chart, entries);
  auto frame = [&](int i) {
    std::vector<Expr> comps(3, Expr::constant(0.0));
    comps[static_cast<std::size_t>(i)] = Expr::constant(1.0);
    return vector_field(chart, comps);
  };
  bool saw_nonzero = false;
  for (const Point& p : sample_chart(*chart, 4, 9)) {
    Tensor3 n = nijenhuis_tensor(j, p);
    saw_nonzero = saw_nonzero || n.max_abs() > 1e-3;
    for (int i = 0; i < 3; ++i)
      for (int jj = 0; jj < 3; ++jj) {
        std::vector<double> val = eval_vector(nijenhuis_classical(j, frame(i), frame(jj)), p);
        for (int l = 0; l < 3; ++l)
          CHECK(std::abs(val[static_cast<std::size_t>(l)] - n.at(i, jj, l)) <
                1e-9 * (1.0 + n.max_abs()));
      }
  }
  CHECK(saw_nonzero);  // the comparison is not vacuous
}

TEST_CASE("tensoriality probe frozen flat values") {
  ChartPtr chart = make_euclidean_chart(2);
  MetricField g = flat_metric(chart);
  EndoField j = flat_j(chart);
  OneForm xi = one_form(chart, {c1(), c0()});
  TensorialityProbe probe =
      tensoriality_probe(g, j, parse("u1", n2), xi, xi, {0.4, 1.3});
  CHECK(probe.discrepancy.vec[0] == doctest::Approx(-2.0));
  CHECK(probe.discrepancy.vec[1] == doctest::Approx(0.0));
  CHECK(probe.discrepancy.form[0] == doctest::Approx(0.0));
  CHECK(probe.discrepancy.form[1] == doctest::Approx(2.0));
  CHECK(probe.gap < 1e-12);
  CHECK(probe.magnitude == doctest::Approx(2.0));
}

TEST_CASE("fundamental two-form of the flat pair is constant and closed") {
  ChartPtr chart = make_euclidean_chart(2);
  TwoForm w = fundamental_two_form(flat_metric(chart), flat_j(chart));
  CHECK(two_form_antisym_defect(w, sample_chart(*chart, 3, 1)) < 1e-15);
  CHECK(dtwoform(w, {0.2, 0.5}).max_abs() < 1e-15);
}
