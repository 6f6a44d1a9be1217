#include "gengeo/dorfman.hpp"

#include <algorithm>
#include <cmath>

namespace gengeo {

GenField dorfman_bracket(const GenField& u, const GenField& v) {
  require_same_chart(u.chart, v.chart);
  auto uc = u.comps;
  auto vc = v.comps;
  const int n = u.chart->dim();
  return {u.chart,
          make_vec_field(2 * n, [uc, vc, n]<class S>(std::span<const S> p, std::vector<S>& out) {
            if constexpr (!jets_available<S>) {
              (void)p;
              (void)out;
              throw DomainError("derivative depth exhausted in dorfman_bracket");
            } else {
              VecJet<S> uj = vec_jet<S>(*uc, p);
              VecJet<S> vj = vec_jet<S>(*vc, p);
              // components: [0, n) vector X, [n, 2n) form xi
              for (int l = 0; l < n; ++l) {
                S acc = S(0.0);
                for (int k = 0; k < n; ++k)
                  acc += uj.val[static_cast<std::size_t>(k)] * vj.d.at(k, l) -
                         vj.val[static_cast<std::size_t>(k)] * uj.d.at(k, l);
                out[static_cast<std::size_t>(l)] = acc;
              }
              for (int j = 0; j < n; ++j) {
                S acc = S(0.0);
                for (int k = 0; k < n; ++k) {
                  // L_X eta
                  acc += uj.val[static_cast<std::size_t>(k)] * vj.d.at(k, n + j) +
                         vj.val[static_cast<std::size_t>(n + k)] * uj.d.at(j, k);
                  // - i_Y d xi
                  acc -= vj.val[static_cast<std::size_t>(k)] *
                         (uj.d.at(k, n + j) - uj.d.at(j, n + k));
                }
                out[static_cast<std::size_t>(n + j)] = acc;
              }
            }
          })};
}

GenField gen_nijenhuis(const BlockEndo& t, const GenField& u, const GenField& v) {
  require_same_chart(t.chart, u.chart);
  require_same_chart(t.chart, v.chart);
  GenField tu = apply(t, u);
  GenField tv = apply(t, v);
  GenField b1 = dorfman_bracket(tu, tv);
  GenField b2 = apply(t, gen_add(dorfman_bracket(tu, v), dorfman_bracket(u, tv)));
  GenField b3 = dorfman_bracket(u, v);
  return gen_sub(gen_sub(b1, b2), b3);
}

TensorialityProbe tensoriality_probe(const MetricField& g, const EndoField& j, const Expr& f,
                                     const OneForm& xi, const OneForm& eta, const Point& p) {
  require_same_chart(g.chart, j.chart);
  require_same_chart(g.chart, xi.chart);
  require_same_chart(g.chart, eta.chart);
  g.chart->require_inside(p);
  const int n = g.chart->dim();

  BlockEndo probe =
      block_endo(g.chart, j.comps, g.ginv, zero_block(n), mat_transposed(j.comps));

  std::vector<Expr> zeros(static_cast<std::size_t>(n), Expr::constant(0.0));
  GenField u = gen_section(vector_field(g.chart, zeros), xi);
  GenField v = gen_section(vector_field(g.chart, zeros), eta);
  GenField fu = gen_scale(scalar_from_expr(f), u);

  SectionValue nfu = eval_section(gen_nijenhuis(probe, fu, v), p);
  SectionValue nu = eval_section(gen_nijenhuis(probe, u, v), p);
  double fv = f.eval(p);

  TensorialityProbe r;
  r.discrepancy.vec.resize(static_cast<std::size_t>(n));
  r.discrepancy.form.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    r.discrepancy.vec[static_cast<std::size_t>(i)] =
        nfu.vec[static_cast<std::size_t>(i)] - fv * nu.vec[static_cast<std::size_t>(i)];
    r.discrepancy.form[static_cast<std::size_t>(i)] =
        nfu.form[static_cast<std::size_t>(i)] - fv * nu.form[static_cast<std::size_t>(i)];
  }

  // closed form: -2 g(sharp xi, sharp eta) (sharp_g df + J* df)
  std::span<const double> x(p);
  Mat<double> ginv = eval_mat<double>(*g.ginv, x);
  Mat<double> jt = eval_mat<double>(*j.comps, x);
  std::vector<double> xiv = eval_comps<double>(*xi.comps, x);
  std::vector<double> etav = eval_comps<double>(*eta.comps, x);
  D1 fj = f.eval_dual(p);
  std::vector<double> df = fj.d.empty() ? std::vector<double>(static_cast<std::size_t>(n), 0.0)
                                        : fj.d;

  double scale = 0.0;  // g(sharp xi, sharp eta) = xi_i ginv^{ij} eta_j
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      scale += xiv[static_cast<std::size_t>(i)] * ginv.at(i, k) * etav[static_cast<std::size_t>(k)];

  r.closed_form.vec.assign(static_cast<std::size_t>(n), 0.0);
  r.closed_form.form.assign(static_cast<std::size_t>(n), 0.0);
  for (int c = 0; c < n; ++c) {
    double sharp_df = 0.0, jstar_df = 0.0;
    for (int i = 0; i < n; ++i) {
      sharp_df += df[static_cast<std::size_t>(i)] * ginv.at(i, c);
      jstar_df += df[static_cast<std::size_t>(i)] * jt.at(c, i);
    }
    r.closed_form.vec[static_cast<std::size_t>(c)] = -2.0 * scale * sharp_df;
    r.closed_form.form[static_cast<std::size_t>(c)] = -2.0 * scale * jstar_df;
  }

  for (int i = 0; i < n; ++i) {
    r.gap = std::max({r.gap,
                      std::abs(r.discrepancy.vec[static_cast<std::size_t>(i)] -
                               r.closed_form.vec[static_cast<std::size_t>(i)]),
                      std::abs(r.discrepancy.form[static_cast<std::size_t>(i)] -
                               r.closed_form.form[static_cast<std::size_t>(i)])});
    r.magnitude = std::max({r.magnitude, std::abs(r.closed_form.vec[static_cast<std::size_t>(i)]),
                            std::abs(r.closed_form.form[static_cast<std::size_t>(i)])});
  }
  return r;
}

}  // namespace gengeo
