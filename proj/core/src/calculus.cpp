#include "gengeo/calculus.hpp"

#include <algorithm>

namespace gengeo {

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  require_same_chart(x.chart, y.chart);
  auto xc = x.comps;
  auto yc = y.comps;
  const int n = x.chart->dim();
  return {x.chart,
          make_vec_field(n, [xc, yc, n]<class S>(std::span<const S> p, std::vector<S>& out) {
            if constexpr (!jets_available<S>) {
              (void)p;
              (void)out;
              throw DomainError("derivative depth exhausted in lie_bracket");
            } else {
              VecJet<S> xj = vec_jet<S>(*xc, p);
              VecJet<S> yj = vec_jet<S>(*yc, p);
              for (int l = 0; l < n; ++l) {
                S acc = S(0.0);
                for (int k = 0; k < n; ++k)
                  acc += xj.val[static_cast<std::size_t>(k)] * yj.d.at(k, l) -
                         yj.val[static_cast<std::size_t>(k)] * xj.d.at(k, l);
                out[static_cast<std::size_t>(l)] = acc;
              }
            }
          })};
}

OneForm lie_derivative_form(const VectorField& x, const OneForm& eta) {
  require_same_chart(x.chart, eta.chart);
  auto xc = x.comps;
  auto ec = eta.comps;
  const int n = x.chart->dim();
  return {x.chart,
          make_vec_field(n, [xc, ec, n]<class S>(std::span<const S> p, std::vector<S>& out) {
            if constexpr (!jets_available<S>) {
              (void)p;
              (void)out;
              throw DomainError("derivative depth exhausted in lie_derivative_form");
            } else {
              VecJet<S> xj = vec_jet<S>(*xc, p);
              VecJet<S> ej = vec_jet<S>(*ec, p);
              for (int j = 0; j < n; ++j) {
                S acc = S(0.0);
                for (int k = 0; k < n; ++k)
                  acc += xj.val[static_cast<std::size_t>(k)] * ej.d.at(k, j) +
                         ej.val[static_cast<std::size_t>(k)] * xj.d.at(j, k);
                out[static_cast<std::size_t>(j)] = acc;
              }
            }
          })};
}

OneForm interior_d(const VectorField& y, const OneForm& xi) {
  require_same_chart(y.chart, xi.chart);
  auto yc = y.comps;
  auto fc = xi.comps;
  const int n = y.chart->dim();
  return {y.chart,
          make_vec_field(n, [yc, fc, n]<class S>(std::span<const S> p, std::vector<S>& out) {
            if constexpr (!jets_available<S>) {
              (void)p;
              (void)out;
              throw DomainError("derivative depth exhausted in interior_d");
            } else {
              std::vector<S> yv = eval_comps<S>(*yc, p);
              VecJet<S> fj = vec_jet<S>(*fc, p);
              for (int j = 0; j < n; ++j) {
                S acc = S(0.0);
                for (int i = 0; i < n; ++i)
                  acc += yv[static_cast<std::size_t>(i)] * (fj.d.at(i, j) - fj.d.at(j, i));
                out[static_cast<std::size_t>(j)] = acc;
              }
            }
          })};
}

VectorField endo_apply(const EndoField& j, const VectorField& x) {
  require_same_chart(j.chart, x.chart);
  auto jc = j.comps;
  auto xc = x.comps;
  const int n = x.chart->dim();
  return {x.chart,
          make_vec_field(n, [jc, xc, n]<class S>(std::span<const S> p, std::vector<S>& out) {
            Mat<S> t = eval_mat<S>(*jc, p);
            std::vector<S> xv = eval_comps<S>(*xc, p);
            for (int c = 0; c < n; ++c) {
              S acc = S(0.0);
              for (int i = 0; i < n; ++i) acc += xv[static_cast<std::size_t>(i)] * t.at(i, c);
              out[static_cast<std::size_t>(c)] = acc;
            }
          })};
}

OneForm endo_apply_transpose(const EndoField& j, const OneForm& xi) {
  require_same_chart(j.chart, xi.chart);
  auto jc = j.comps;
  auto fc = xi.comps;
  const int n = xi.chart->dim();
  return {xi.chart,
          make_vec_field(n, [jc, fc, n]<class S>(std::span<const S> p, std::vector<S>& out) {
            Mat<S> t = eval_mat<S>(*jc, p);
            std::vector<S> fv = eval_comps<S>(*fc, p);
            // dual table is the transpose: (J* xi)_j = xi_i J[j][i]
            for (int c = 0; c < n; ++c) {
              S acc = S(0.0);
              for (int i = 0; i < n; ++i) acc += fv[static_cast<std::size_t>(i)] * t.at(c, i);
              out[static_cast<std::size_t>(c)] = acc;
            }
          })};
}

double Tensor3::max_abs() const {
  double best = 0.0;
  for (double x : a) best = std::max(best, std::abs(x));
  return best;
}

TwoForm two_form(ChartPtr chart, std::vector<std::vector<Expr>> entries) {
  MatrixFieldPtr comps = mat_from_exprs(std::move(entries));
  return two_form(std::move(chart), std::move(comps));
}

TwoForm two_form(ChartPtr chart, MatrixFieldPtr comps) {
  if (comps->rows() != chart->dim() || comps->cols() != chart->dim())
    throw DomainError("two-form components must be n by n");
  return {std::move(chart), std::move(comps)};
}

double two_form_antisym_defect(const TwoForm& w, const std::vector<Point>& pts) {
  double worst = 0.0;
  for (const Point& p : pts) {
    Mat<double> m = eval_mat<double>(*w.comps, std::span<const double>(p));
    worst = std::max(worst, max_abs(m + transpose(m)));
  }
  return worst;
}

Tensor3 dtwoform(const TwoForm& w, const Point& p) {
  w.chart->require_inside(p);
  const int n = w.chart->dim();
  MatJet<double> wj = mat_jet<double>(*w.comps, std::span<const double>(p));
  Tensor3 t(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        t.at(k, i, j) = wj.d[static_cast<std::size_t>(k)].at(i, j) +
                        wj.d[static_cast<std::size_t>(i)].at(j, k) +
                        wj.d[static_cast<std::size_t>(j)].at(k, i);
  return t;
}

TwoForm fundamental_two_form(const MetricField& g, const EndoField& j) {
  require_same_chart(g.chart, j.chart);
  // w_{ij} = g(J d_i, d_j) = J[i][k] g_{kj}, the table product J g.
  return {g.chart, mat_product(j.comps, g.g)};
}

VectorField nijenhuis_classical(const EndoField& j, const VectorField& x, const VectorField& y) {
  require_same_chart(j.chart, x.chart);
  require_same_chart(j.chart, y.chart);
  VectorField jx = endo_apply(j, x);
  VectorField jy = endo_apply(j, y);
  VectorField b1 = lie_bracket(jx, jy);
  VectorField b2 = endo_apply(j, lie_bracket(jx, y));
  VectorField b3 = endo_apply(j, lie_bracket(x, jy));
  VectorField b4 = lie_bracket(x, y);
  auto c1 = b1.comps;
  auto c2 = b2.comps;
  auto c3 = b3.comps;
  auto c4 = b4.comps;
  const int n = x.chart->dim();
  return {x.chart,
          make_vec_field(n, [c1, c2, c3, c4]<class S>(std::span<const S> p, std::vector<S>& out) {
            std::vector<S> v1 = eval_comps<S>(*c1, p);
            std::vector<S> v2 = eval_comps<S>(*c2, p);
            std::vector<S> v3 = eval_comps<S>(*c3, p);
            std::vector<S> v4 = eval_comps<S>(*c4, p);
            for (std::size_t c = 0; c < out.size(); ++c) out[c] = v1[c] - v2[c] - v3[c] - v4[c];
          })};
}

Tensor3 nijenhuis_tensor(const EndoField& j, const Point& p) {
  j.chart->require_inside(p);
  const int n = j.chart->dim();
  MatJet<double> jj = mat_jet<double>(*j.comps, std::span<const double>(p));
  Tensor3 t(n);
  for (int i = 0; i < n; ++i)
    for (int jdx = 0; jdx < n; ++jdx)
      for (int l = 0; l < n; ++l) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k)
          acc += jj.val.at(i, k) * jj.d[static_cast<std::size_t>(k)].at(jdx, l) -
                 jj.val.at(jdx, k) * jj.d[static_cast<std::size_t>(k)].at(i, l) +
                 jj.val.at(k, l) * (jj.d[static_cast<std::size_t>(jdx)].at(i, k) -
                                    jj.d[static_cast<std::size_t>(i)].at(jdx, k));
        t.at(i, jdx, l) = acc;
      }
  return t;
}

Musicals musical(const MetricField& g) {
  Musicals m;
  m.flat_g = g.g;
  m.sharp_g = g.ginv;
  return m;
}

Musicals musical(const MetricField& g, const EndoField& j) {
  require_same_chart(g.chart, j.chart);
  Musicals m = musical(g);
  m.flat_omega = mat_product(j.comps, g.g);
  m.sharp_omega = mat_scale(-1.0, mat_product(g.ginv, j.comps));
  return m;
}

}  // namespace gengeo
