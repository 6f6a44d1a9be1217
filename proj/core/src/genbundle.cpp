#include "gengeo/genbundle.hpp"

#include <algorithm>
#include <cmath>

namespace gengeo {

double pairing_g0(const SectionValue& u, const SectionValue& v) {
  if (u.vec.size() != v.vec.size() || u.form.size() != v.form.size())
    throw DomainError("pairing on sections of different width");
  double acc = 0.0;
  for (std::size_t i = 0; i < u.vec.size(); ++i)
    acc += u.vec[i] * v.form[i] + u.form[i] * v.vec[i];
  return 0.5 * acc;
}

double pairing_g0(const GenField& u, const GenField& v, const Point& p) {
  require_same_chart(u.chart, v.chart);
  return pairing_g0(eval_section(u, p), eval_section(v, p));
}

Mat<double> pairing_gram(int n) {
  Mat<double> gram(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    gram.at(i, n + i) = 0.5;
    gram.at(n + i, i) = 0.5;
  }
  return gram;
}

MatrixFieldPtr zero_block(int n) { return mat_constant(Mat<double>(n, n)); }

BlockEndo block_endo(ChartPtr chart, MatrixFieldPtr a, MatrixFieldPtr b, MatrixFieldPtr c,
                     MatrixFieldPtr d) {
  const int n = chart->dim();
  for (const MatrixFieldPtr& m : {a, b, c, d}) {
    if (!m) throw DomainError("block endomorphism needs all four blocks");
    if (m->rows() != n || m->cols() != n) throw DomainError("block table must be n by n");
  }
  return {std::move(chart), std::move(a), std::move(b), std::move(c), std::move(d)};
}

Mat<double> assembled_table(const BlockEndo& t, const Point& p) {
  t.chart->require_inside(p);
  const int n = t.chart->dim();
  std::span<const double> x(p);
  Mat<double> a = eval_mat<double>(*t.A, x), b = eval_mat<double>(*t.B, x);
  Mat<double> c = eval_mat<double>(*t.C, x), d = eval_mat<double>(*t.D, x);
  Mat<double> u(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      u.at(i, j) = a.at(i, j);
      u.at(i, n + j) = c.at(i, j);
      u.at(n + i, j) = b.at(i, j);
      u.at(n + i, n + j) = d.at(i, j);
    }
  return u;
}

GenField apply(const BlockEndo& t, const GenField& u) {
  require_same_chart(t.chart, u.chart);
  const int n = t.chart->dim();
  auto ta = t.A;
  auto tb = t.B;
  auto tc = t.C;
  auto td = t.D;
  auto uc = u.comps;
  return {u.chart,
          make_vec_field(2 * n, [ta, tb, tc, td, uc, n]<class S>(std::span<const S> p,
                                                                 std::vector<S>& out) {
            std::vector<S> uv = eval_comps<S>(*uc, p);
            Mat<S> a = eval_mat<S>(*ta, p), b = eval_mat<S>(*tb, p);
            Mat<S> c = eval_mat<S>(*tc, p), d = eval_mat<S>(*td, p);
            for (int j = 0; j < n; ++j) {
              S vec = S(0.0), form = S(0.0);
              for (int i = 0; i < n; ++i) {
                const S& xv = uv[static_cast<std::size_t>(i)];
                const S& xf = uv[static_cast<std::size_t>(n + i)];
                vec += xv * a.at(i, j) + xf * b.at(i, j);
                form += xv * c.at(i, j) + xf * d.at(i, j);
              }
              out[static_cast<std::size_t>(j)] = vec;
              out[static_cast<std::size_t>(n + j)] = form;
            }
          })};
}

SectionValue apply_at(const BlockEndo& t, const SectionValue& u, const Point& p) {
  t.chart->require_inside(p);
  const int n = t.chart->dim();
  if (static_cast<int>(u.vec.size()) != n || static_cast<int>(u.form.size()) != n)
    throw DomainError("section width mismatch in apply_at");
  std::span<const double> x(p);
  Mat<double> a = eval_mat<double>(*t.A, x), b = eval_mat<double>(*t.B, x);
  Mat<double> c = eval_mat<double>(*t.C, x), d = eval_mat<double>(*t.D, x);
  SectionValue r;
  r.vec.assign(static_cast<std::size_t>(n), 0.0);
  r.form.assign(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      r.vec[static_cast<std::size_t>(j)] += u.vec[static_cast<std::size_t>(i)] * a.at(i, j) +
                                            u.form[static_cast<std::size_t>(i)] * b.at(i, j);
      r.form[static_cast<std::size_t>(j)] += u.vec[static_cast<std::size_t>(i)] * c.at(i, j) +
                                             u.form[static_cast<std::size_t>(i)] * d.at(i, j);
    }
  return r;
}

// Row-input tables compose in application order: the assembled table of
// s . t is U_t U_s, blockwise as below.
BlockEndo compose(const BlockEndo& s, const BlockEndo& t) {
  require_same_chart(s.chart, t.chart);
  MatrixFieldPtr a = mat_sum({mat_product(t.A, s.A), mat_product(t.C, s.B)});
  MatrixFieldPtr b = mat_sum({mat_product(t.B, s.A), mat_product(t.D, s.B)});
  MatrixFieldPtr c = mat_sum({mat_product(t.A, s.C), mat_product(t.C, s.D)});
  MatrixFieldPtr d = mat_sum({mat_product(t.B, s.C), mat_product(t.D, s.D)});
  return {s.chart, std::move(a), std::move(b), std::move(c), std::move(d)};
}

BlockEndo endo_sum(const BlockEndo& s, const BlockEndo& t) {
  require_same_chart(s.chart, t.chart);
  return {s.chart, mat_sum({s.A, t.A}), mat_sum({s.B, t.B}), mat_sum({s.C, t.C}),
          mat_sum({s.D, t.D})};
}

BlockEndo endo_scale(ScalarFieldPtr c, const BlockEndo& t) {
  return {t.chart, mat_scale(c, t.A), mat_scale(c, t.B), mat_scale(c, t.C), mat_scale(c, t.D)};
}

BlockEndo endo_scale(double c, const BlockEndo& t) {
  return {t.chart, mat_scale(c, t.A), mat_scale(c, t.B), mat_scale(c, t.C), mat_scale(c, t.D)};
}

BlockEndo linear_combination(const std::vector<std::pair<ScalarFieldPtr, BlockEndo>>& terms) {
  if (terms.empty()) throw DomainError("linear_combination needs at least one term");
  std::vector<MatrixFieldPtr> as, bs, cs, ds;
  for (const auto& [coeff, t] : terms) {
    require_same_chart(terms.front().second.chart, t.chart);
    as.push_back(mat_scale(coeff, t.A));
    bs.push_back(mat_scale(coeff, t.B));
    cs.push_back(mat_scale(coeff, t.C));
    ds.push_back(mat_scale(coeff, t.D));
  }
  return {terms.front().second.chart, mat_sum(as), mat_sum(bs), mat_sum(cs), mat_sum(ds)};
}

BlockEndo make_j_lambda(const EndoField& j, int lambda) {
  if (lambda != 1 && lambda != -1) throw DomainError("lambda must be +1 or -1");
  const int n = j.chart->dim();
  MatrixFieldPtr dual = mat_transposed(j.comps);
  if (lambda == -1) dual = mat_scale(-1.0, dual);
  return {j.chart, j.comps, zero_block(n), zero_block(n), dual};
}

BlockEndo make_j_g(const MetricField& g) {
  const int n = g.chart->dim();
  return {g.chart, zero_block(n), mat_scale(-1.0, g.ginv), g.g, zero_block(n)};
}

BlockEndo make_j_omega(const MetricField& g, const EndoField& j) {
  require_same_chart(g.chart, j.chart);
  const int n = g.chart->dim();
  return {g.chart, zero_block(n), mat_product(g.ginv, j.comps), mat_product(j.comps, g.g),
          zero_block(n)};
}

BlockEndo spherical_combination(ScalarFieldPtr a, ScalarFieldPtr b, ScalarFieldPtr c,
                                const MetricField& g, const EndoField& j,
                                const std::vector<Point>& norm_check_pts, double norm_tol) {
  require_same_chart(g.chart, j.chart);
  for (const Point& p : norm_check_pts) {
    std::span<const double> x(p);
    double av = a->eval(x), bv = b->eval(x), cv = c->eval(x);
    double norm = av * av + bv * bv + cv * cv;
    if (std::abs(norm - 1.0) > norm_tol)
      throw DomainError("spherical combination coefficients leave the unit sphere");
  }
  return linear_combination({{a, make_j_lambda(j, 1)}, {b, make_j_g(g)}, {c, make_j_omega(g, j)}});
}

BlockEndo spherical_combination(double a, double b, double c, const MetricField& g,
                                const EndoField& j) {
  double norm = a * a + b * b + c * c;
  if (std::abs(norm - 1.0) > 1e-10)
    throw DomainError("spherical combination coefficients leave the unit sphere");
  return linear_combination({{scalar_constant(a), make_j_lambda(j, 1)},
                             {scalar_constant(b), make_j_g(g)},
                             {scalar_constant(c), make_j_omega(g, j)}});
}

double gen_complex_defect(const BlockEndo& t, const std::vector<Point>& pts) {
  double worst = 0.0;
  for (const Point& p : pts) {
    Mat<double> u = assembled_table(t, p);
    worst = std::max(worst, max_abs(matmul(u, u) + identity_mat<double>(u.rows)));
  }
  return worst;
}

double gen_skew_defect(const BlockEndo& t, const std::vector<Point>& pts) {
  const int n = t.chart->dim();
  Mat<double> gram = pairing_gram(n);
  double worst = 0.0;
  for (const Point& p : pts) {
    Mat<double> u = assembled_table(t, p);
    Mat<double> up = matmul(u, gram);
    worst = std::max(worst, max_abs(up + transpose(up)));
  }
  return worst;
}

GenStructureClass classify(const BlockEndo& t, const std::vector<Point>& pts, double tol) {
  GenStructureClass r;
  r.complex_defect = gen_complex_defect(t, pts);
  r.skew_defect = gen_skew_defect(t, pts);
  r.weak = r.complex_defect <= tol;
  r.strong = r.weak && r.skew_defect <= tol;
  return r;
}

double hypercomplex_defect(const BlockEndo& j1, const BlockEndo& j2, const BlockEndo& j3,
                           const std::vector<Point>& pts) {
  require_same_chart(j1.chart, j2.chart);
  require_same_chart(j1.chart, j3.chart);
  double worst = 0.0;
  for (const Point& p : pts) {
    Mat<double> u1 = assembled_table(j1, p);
    Mat<double> u2 = assembled_table(j2, p);
    Mat<double> u3 = assembled_table(j3, p);
    Mat<double> id = identity_mat<double>(u1.rows);
    // application-order composition: table of a . b is U_b U_a
    worst = std::max(worst, max_abs(matmul(u1, u1) + id));
    worst = std::max(worst, max_abs(matmul(u2, u2) + id));
    worst = std::max(worst, max_abs(matmul(u3, u3) + id));
    worst = std::max(worst, max_abs(matmul(u2, u1) - u3));
    worst = std::max(worst, max_abs(matmul(u3, u2) - u1));
    worst = std::max(worst, max_abs(matmul(u1, u3) - u2));
    worst = std::max(worst, max_abs(matmul(u2, u1) + matmul(u1, u2)));
  }
  return worst;
}

bool hypercomplex_check(const BlockEndo& j1, const BlockEndo& j2, const BlockEndo& j3,
                        const std::vector<Point>& pts, double tol) {
  return hypercomplex_defect(j1, j2, j3, pts) <= tol;
}

}  // namespace gengeo
