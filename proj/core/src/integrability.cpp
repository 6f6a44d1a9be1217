#include "gengeo/integrability.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "gengeo/exprgen.hpp"

namespace gengeo {

std::string describe(const SlotIndex& s) {
  static const char* pair_names[4] = {"(e_%d, e_%d)", "(e_%d, dx_%d)", "(dx_%d, e_%d)",
                                      "(dx_%d, dx_%d)"};
  const int pair = s.condition / 2;
  const bool form_leg = s.condition % 2 == 1;
  char buf[64];
  std::snprintf(buf, sizeof(buf), pair_names[pair], s.i + 1, s.j + 1);
  return "torsion" + std::string(buf) + (form_leg ? " form" : " vector") + " component " +
         std::to_string(s.l + 1) + " at point " + std::to_string(s.point);
}

ResidualReport::ResidualReport(int dim, int num_points)
    : n_(dim),
      pts_(num_points),
      r_(static_cast<std::size_t>(8) * dim * dim * dim * num_points, 0.0),
      s_(static_cast<std::size_t>(8) * dim * dim * dim * num_points, 1.0) {}

std::size_t ResidualReport::idx(int cond, int i, int j, int l, int pt) const {
  return (((static_cast<std::size_t>(cond) * n_ + i) * n_ + j) * n_ + l) * pts_ + pt;
}

double ResidualReport::max_abs() const {
  double best = 0.0;
  for (double x : r_) best = std::max(best, std::abs(x));
  return best;
}

double ResidualReport::max_scale() const {
  double best = 1.0;
  for (double x : s_) best = std::max(best, x);
  return best;
}

SlotIndex ResidualReport::argmax() const {
  SlotIndex best;
  double best_val = -1.0;
  for (int c = 0; c < 8; ++c)
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        for (int l = 0; l < n_; ++l)
          for (int p = 0; p < pts_; ++p) {
            double v = std::abs(at(c, i, j, l, p));
            if (v > best_val) {
              best_val = v;
              best = SlotIndex{c, i, j, l, p};
            }
          }
  return best;
}

ResidualReport::Verdict ResidualReport::verdict(double tol_vanish, double tol_nonvanish) const {
  const double m = max_abs();
  if (m <= tol_vanish * max_scale()) return Verdict::vanishes;
  if (m >= tol_nonvanish) return Verdict::nonvanishing;
  return Verdict::indeterminate;
}

const char* to_string(ResidualReport::Verdict v) {
  switch (v) {
    case ResidualReport::Verdict::vanishes: return "vanishes";
    case ResidualReport::Verdict::nonvanishing: return "nonvanishing";
    case ResidualReport::Verdict::indeterminate: return "indeterminate";
  }
  return "unknown";
}

ResidualReport condition_residuals(const BlockEndo& t, const std::vector<Point>& pts) {
  const int n = t.chart->dim();
  ResidualReport rep(n, static_cast<int>(pts.size()));
  for (int pt = 0; pt < static_cast<int>(pts.size()); ++pt) {
    const Point& p = pts[static_cast<std::size_t>(pt)];
    t.chart->require_inside(p);
    std::span<const double> x(p);
    MatJet<double> A = mat_jet<double>(*t.A, x);
    MatJet<double> B = mat_jet<double>(*t.B, x);
    MatJet<double> C = mat_jet<double>(*t.C, x);
    MatJet<double> D = mat_jet<double>(*t.D, x);
    auto dA = [&](int k, int r, int c) { return A.d[static_cast<std::size_t>(k)].at(r, c); };
    auto dB = [&](int k, int r, int c) { return B.d[static_cast<std::size_t>(k)].at(r, c); };
    auto dC = [&](int k, int r, int c) { return C.d[static_cast<std::size_t>(k)].at(r, c); };
    auto dD = [&](int k, int r, int c) { return D.d[static_cast<std::size_t>(k)].at(r, c); };

    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          double acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
          double sc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
          auto add = [&](int cond, double term) {
            acc[cond] += term;
            sc[cond] = std::max(sc[cond], std::abs(term));
          };
          for (int k = 0; k < n; ++k) {
            // pair (e_i, e_j), vector leg
            add(0, A.val.at(i, k) * dA(k, j, l));
            add(0, -A.val.at(j, k) * dA(k, i, l));
            add(0, A.val.at(k, l) * (dA(j, i, k) - dA(i, j, k)));
            add(0, -B.val.at(k, l) * (dC(i, j, k) - dC(j, i, k) + dC(k, i, j)));
            // pair (e_i, e_j), form leg
            add(1, A.val.at(i, k) * dC(k, j, l));
            add(1, C.val.at(j, k) * dA(l, i, k));
            add(1, A.val.at(j, k) * (dC(l, i, k) - dC(k, i, l)));
            add(1, C.val.at(k, l) * (dA(j, i, k) - dA(i, j, k)));
            add(1, -D.val.at(k, l) * (dC(i, j, k) - dC(j, i, k) + dC(k, i, j)));
            // pair (e_i, dx_j), vector leg
            add(2, A.val.at(i, k) * dB(k, j, l));
            add(2, -B.val.at(j, k) * dA(k, i, l));
            add(2, -A.val.at(k, l) * dB(i, j, k));
            add(2, -B.val.at(k, l) * (dA(k, i, j) + dD(i, j, k)));
            // pair (e_i, dx_j), form leg
            add(3, A.val.at(i, k) * dD(k, j, l));
            add(3, D.val.at(j, k) * dA(l, i, k));
            add(3, B.val.at(j, k) * (dC(l, i, k) - dC(k, i, l)));
            add(3, -C.val.at(k, l) * dB(i, j, k));
            add(3, -D.val.at(k, l) * (dA(k, i, j) + dD(i, j, k)));
            // pair (dx_i, e_j), vector leg
            add(4, B.val.at(i, k) * dA(k, j, l));
            add(4, -A.val.at(j, k) * dB(k, i, l));
            add(4, A.val.at(k, l) * dB(j, i, k));
            add(4, B.val.at(k, l) * (dD(j, i, k) - dD(k, i, j)));
            // pair (dx_i, e_j), form leg
            add(5, B.val.at(i, k) * dC(k, j, l));
            add(5, C.val.at(j, k) * dB(l, i, k));
            add(5, A.val.at(j, k) * (dD(l, i, k) - dD(k, i, l)));
            add(5, C.val.at(k, l) * dB(j, i, k));
            add(5, D.val.at(k, l) * (dD(j, i, k) - dD(k, i, j)));
            // pair (dx_i, dx_j), vector leg
            add(6, B.val.at(i, k) * dB(k, j, l));
            add(6, -B.val.at(j, k) * dB(k, i, l));
            add(6, -B.val.at(k, l) * dB(k, i, j));
            // pair (dx_i, dx_j), form leg
            add(7, B.val.at(i, k) * dD(k, j, l));
            add(7, D.val.at(j, k) * dB(l, i, k));
            add(7, B.val.at(j, k) * (dD(l, i, k) - dD(k, i, l)));
            add(7, -D.val.at(k, l) * dB(k, i, j));
          }
          for (int c = 0; c < 8; ++c) {
            rep.at(c, i, j, l, pt) = acc[c];
            rep.scale_at(c, i, j, l, pt) = 1.0 + sc[c];
          }
        }
  }
  return rep;
}

ResidualReport oracle_frame_nijenhuis(const BlockEndo& t, const std::vector<Point>& pts) {
  const int n = t.chart->dim();
  ResidualReport rep(n, static_cast<int>(pts.size()));

  struct PairFields {
    GenField torsion;
    std::array<GenField, 4> parts;  // brackets whose magnitudes set the scale
  };
  // index [type_i][type_j][i][j], type 0 = frame vector, 1 = frame form
  std::vector<PairFields> fields;
  fields.reserve(static_cast<std::size_t>(4 * n * n));
  for (int ti = 0; ti < 2; ++ti)
    for (int tj = 0; tj < 2; ++tj)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          GenField u = ti == 0 ? frame_vector_section(t.chart, i) : frame_form_section(t.chart, i);
          GenField v = tj == 0 ? frame_vector_section(t.chart, j) : frame_form_section(t.chart, j);
          GenField tu = apply(t, u);
          GenField tv = apply(t, v);
          GenField b1 = dorfman_bracket(tu, tv);
          GenField b2 = dorfman_bracket(tu, v);
          GenField b3 = dorfman_bracket(u, tv);
          GenField b4 = dorfman_bracket(u, v);
          GenField torsion = gen_sub(gen_sub(b1, apply(t, gen_add(b2, b3))), b4);
          fields.push_back(PairFields{std::move(torsion), {b1, b2, b3, b4}});
        }

  for (int pt = 0; pt < static_cast<int>(pts.size()); ++pt) {
    const Point& p = pts[static_cast<std::size_t>(pt)];
    t.chart->require_inside(p);
    std::span<const double> x(p);
    std::size_t f = 0;
    for (int ti = 0; ti < 2; ++ti)
      for (int tj = 0; tj < 2; ++tj) {
        const int cond_vec = 2 * (2 * ti + tj);  // vector leg; form leg is +1
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j, ++f) {
            const PairFields& pf = fields[f];
            std::vector<double> w = eval_comps<double>(*pf.torsion.comps, x);
            double smax = 0.0;
            for (const GenField& part : pf.parts)
              for (double comp : eval_comps<double>(*part.comps, x))
                smax = std::max(smax, std::abs(comp));
            for (int l = 0; l < n; ++l) {
              rep.at(cond_vec, i, j, l, pt) = w[static_cast<std::size_t>(l)];
              rep.at(cond_vec + 1, i, j, l, pt) = w[static_cast<std::size_t>(n + l)];
              rep.scale_at(cond_vec, i, j, l, pt) = 1.0 + smax;
              rep.scale_at(cond_vec + 1, i, j, l, pt) = 1.0 + smax;
            }
          }
      }
  }
  return rep;
}

double max_gap(const ResidualReport& a, const ResidualReport& b) {
  if (a.dim() != b.dim() || a.num_points() != b.num_points())
    throw DomainError("residual reports have different shapes");
  double worst = 0.0;
  for (int c = 0; c < 8; ++c)
    for (int i = 0; i < a.dim(); ++i)
      for (int j = 0; j < a.dim(); ++j)
        for (int l = 0; l < a.dim(); ++l)
          for (int p = 0; p < a.num_points(); ++p)
            worst = std::max(worst, std::abs(a.at(c, i, j, l, p) - b.at(c, i, j, l, p)));
  return worst;
}

double max_scaled_gap(const ResidualReport& a, const ResidualReport& b) {
  if (a.dim() != b.dim() || a.num_points() != b.num_points())
    throw DomainError("residual reports have different shapes");
  double worst = 0.0;
  for (int c = 0; c < 8; ++c)
    for (int i = 0; i < a.dim(); ++i)
      for (int j = 0; j < a.dim(); ++j)
        for (int l = 0; l < a.dim(); ++l)
          for (int p = 0; p < a.num_points(); ++p) {
            double scale = std::max(a.scale_at(c, i, j, l, p), b.scale_at(c, i, j, l, p));
            worst = std::max(worst, std::abs(a.at(c, i, j, l, p) - b.at(c, i, j, l, p)) / scale);
          }
  return worst;
}

double SymmetrizedResiduals::s1_at(int i, int j, int l) const {
  return s1[(static_cast<std::size_t>(i) * n + j) * n + l];
}
double SymmetrizedResiduals::s2_at(int i, int j, int l) const {
  return s2[(static_cast<std::size_t>(i) * n + j) * n + l];
}

SymmetrizedResiduals symmetrized_conditions(const BlockEndo& t, const Point& p) {
  t.chart->require_inside(p);
  const int n = t.chart->dim();
  std::span<const double> x(p);
  MatJet<double> A = mat_jet<double>(*t.A, x);
  MatJet<double> B = mat_jet<double>(*t.B, x);
  MatJet<double> D = mat_jet<double>(*t.D, x);
  SymmetrizedResiduals r;
  r.n = n;
  r.s1.assign(static_cast<std::size_t>(n) * n * n, 0.0);
  r.s2.assign(static_cast<std::size_t>(n) * n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        double a1 = 0.0, a2 = 0.0;
        for (int k = 0; k < n; ++k) {
          const auto ks = static_cast<std::size_t>(k);
          a1 += B.val.at(k, l) * (A.d[ks].at(i, j) + D.d[ks].at(j, i));
          a2 += B.val.at(k, l) * (B.d[ks].at(i, j) + B.d[ks].at(j, i));
        }
        r.s1[(static_cast<std::size_t>(i) * n + j) * n + l] = a1;
        r.s2[(static_cast<std::size_t>(i) * n + j) * n + l] = a2;
      }
  return r;
}

double strong_sufficiency_gap(const BlockEndo& t, const std::vector<Point>& pts, int trials,
                              std::uint64_t seed) {
  const int n = t.chart->dim();
  SplitMix64 rng(seed);
  ExprGenOptions opt;
  opt.max_depth = 2;
  double worst = 0.0;
  for (const Point& p : pts) {
    ResidualReport frame = condition_residuals(t, {p});
    for (int trial = 0; trial < trials; ++trial) {
      std::vector<Expr> ucomps, vcomps;
      for (int c = 0; c < 2 * n; ++c) {
        ucomps.push_back(random_expr(rng, n, opt));
        vcomps.push_back(random_expr(rng, n, opt));
      }
      GenField u = gen_section(t.chart, vec_from_exprs(ucomps));
      GenField v = gen_section(t.chart, vec_from_exprs(vcomps));
      SectionValue actual = eval_section(gen_nijenhuis(t, u, v), p);
      std::span<const double> x(p);
      std::vector<double> uv = eval_comps<double>(*u.comps, x);
      std::vector<double> vv = eval_comps<double>(*v.comps, x);
      for (int l = 0; l < n; ++l) {
        double pred_vec = 0.0, pred_form = 0.0, scale = 1.0;
        for (int r = 0; r < 2 * n; ++r)
          for (int s = 0; s < 2 * n; ++s) {
            const int ti = r < n ? 0 : 1;
            const int tj = s < n ? 0 : 1;
            const int i = r % n;
            const int j = s % n;
            const int cond_vec = 2 * (2 * ti + tj);
            const double coeff =
                uv[static_cast<std::size_t>(r)] * vv[static_cast<std::size_t>(s)];
            double tv = coeff * frame.at(cond_vec, i, j, l, 0);
            double tf = coeff * frame.at(cond_vec + 1, i, j, l, 0);
            pred_vec += tv;
            pred_form += tf;
            scale = std::max({scale, std::abs(tv), std::abs(tf)});
          }
        worst = std::max(worst,
                         std::abs(actual.vec[static_cast<std::size_t>(l)] - pred_vec) / scale);
        worst = std::max(worst,
                         std::abs(actual.form[static_cast<std::size_t>(l)] - pred_form) / scale);
      }
    }
  }
  return worst;
}

}  // namespace gengeo
