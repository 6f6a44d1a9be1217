#include "gengeo/sphere6.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gengeo/rng.hpp"

namespace gengeo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMargin = 0.3;

// Oriented Fano triples, 0-based.  kCyclic is the e_n x e_{n+1} = e_{n+3}
// convention; kCayleyDickson comes from doubling the quaternions.
constexpr int kCyclic[7][3] = {{0, 1, 3}, {1, 2, 4}, {2, 3, 5}, {3, 4, 6},
                               {4, 5, 0}, {5, 6, 1}, {6, 0, 2}};
constexpr int kCayleyDickson[7][3] = {{0, 1, 2}, {0, 3, 4}, {0, 6, 5}, {1, 3, 5},
                                      {1, 4, 6}, {2, 3, 6}, {2, 5, 4}};

int rev_elem(int x) { return (7 - x) % 7; }

CrossTable table_from(const int (&triples)[7][3], int shift, bool rev, int sign,
                      std::string variant) {
  CrossTable t;
  t.variant = std::move(variant);
  for (int n = 0; n < 7; ++n) {
    int a = triples[n][0], b = triples[n][1], c = triples[n][2];
    if (rev) {
      a = rev_elem(a);
      b = rev_elem(b);
      c = rev_elem(c);
    }
    a = (a + shift) % 7;
    b = (b + shift) % 7;
    c = (c + shift) % 7;
    const int cyc[3][3] = {{a, b, c}, {b, c, a}, {c, a, b}};
    for (const auto& tr : cyc) {
      t.c[(static_cast<std::size_t>(tr[0]) * 7 + tr[1]) * 7 + tr[2]] =
          static_cast<std::int8_t>(sign);
      t.c[(static_cast<std::size_t>(tr[1]) * 7 + tr[0]) * 7 + tr[2]] =
          static_cast<std::int8_t>(-sign);
    }
  }
  return t;
}

std::string variant_name(const char* family, int shift, bool rev, int sign) {
  return std::string(family) + " shift=" + std::to_string(shift) +
         " rev=" + std::to_string(rev ? 1 : 0) + " sign=" + (sign > 0 ? "+1" : "-1");
}

const char* kCrossTorsionRhs = "-sin(u3)*(cos(u3)^2+cos(u2)^2)/(sin(u1)^3*sin(u2)^2)";

std::vector<std::string> coord_names6() { return {"u1", "u2", "u3", "u4", "u5", "u6"}; }

}  // namespace

const Sphere6Text& sphere6_text() {
  static const Sphere6Text text{
      {
          "cos(u1)",
          "sin(u1)*cos(u2)",
          "sin(u1)*sin(u2)*cos(u3)",
          "sin(u1)*sin(u2)*sin(u3)*cos(u4)",
          "sin(u1)*sin(u2)*sin(u3)*sin(u4)*cos(u5)",
          "sin(u1)*sin(u2)*sin(u3)*sin(u4)*sin(u5)*cos(u6)",
          "sin(u1)*sin(u2)*sin(u3)*sin(u4)*sin(u5)*sin(u6)",
      },
      {
          "1",
          "sin(u1)^2",
          "sin(u1)^2*sin(u2)^2",
          "sin(u1)^2*sin(u2)^2*sin(u3)^2",
          "sin(u1)^2*sin(u2)^2*sin(u3)^2*sin(u4)^2",
          "sin(u1)^2*sin(u2)^2*sin(u3)^2*sin(u4)^2*sin(u5)^2",
      },
      {
          "1",
          "1/sin(u1)^2",
          "1/(sin(u1)^2*sin(u2)^2)",
          "1/(sin(u1)^2*sin(u2)^2*sin(u3)^2)",
          "1/(sin(u1)^2*sin(u2)^2*sin(u3)^2*sin(u4)^2)",
          "1/(sin(u1)^2*sin(u2)^2*sin(u3)^2*sin(u4)^2*sin(u5)^2)",
      },
      {
          "0",
          "cos(u3)/sin(u1)",
          "-cos(u2)*sin(u3)/(sin(u1)*sin(u2))",
          "cos(u5)/sin(u1)",
          "-cos(u4)*sin(u5)/(sin(u1)*sin(u4))",
          "-1/sin(u1)",
      },
      {
          "0",
          "-sin(u1)*cos(u3)",
          "sin(u1)*cos(u2)*sin(u2)*sin(u3)",
          "-sin(u1)*sin(u2)^2*sin(u3)^2*cos(u5)",
          "sin(u1)*sin(u2)^2*sin(u3)^2*cos(u4)*sin(u4)*sin(u5)",
          "sin(u1)*sin(u2)^2*sin(u3)^2*sin(u4)^2*sin(u5)^2",
      },
  };
  return text;
}

double CrossTable::antisymmetry_defect() const {
  double worst = 0.0;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k)
        worst = std::max(worst, std::abs(static_cast<double>(sign(i, j, k) + sign(j, i, k))));
  return worst;
}

double CrossTable::norm_property_defect(int trials, std::uint64_t seed) const {
  SplitMix64 rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::array<double, 7> a, b;
    for (int i = 0; i < 7; ++i) {
      a[static_cast<std::size_t>(i)] = rng.next_in(-1.0, 1.0);
      b[static_cast<std::size_t>(i)] = rng.next_in(-1.0, 1.0);
    }
    std::array<double, 7> ab = cross(a, b);
    double na = 0.0, nb = 0.0, nab = 0.0, dot = 0.0;
    for (int i = 0; i < 7; ++i) {
      na += a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(i)];
      nb += b[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
      nab += ab[static_cast<std::size_t>(i)] * ab[static_cast<std::size_t>(i)];
      dot += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
    }
    worst = std::max(worst, std::abs(nab - (na * nb - dot * dot)));
  }
  return worst;
}

CrossTable cyclic_cross_table() { return table_from(kCyclic, 0, false, 1, "cyclic shift=0 rev=0 sign=+1"); }

CrossTable cayley_dickson_cross_table() {
  return table_from(kCayleyDickson, 0, false, 1, "cd shift=0 rev=0 sign=+1");
}

std::vector<CrossTable> calibration_candidates() {
  std::vector<CrossTable> out;
  out.reserve(56);
  for (int shift = 0; shift < 7; ++shift)
    for (int rev = 0; rev < 2; ++rev)
      for (int sign : {1, -1})
        out.push_back(table_from(kCyclic, shift, rev != 0, sign,
                                 variant_name("cyclic", shift, rev != 0, sign)));
  for (int shift = 0; shift < 7; ++shift)
    for (int rev = 0; rev < 2; ++rev)
      for (int sign : {1, -1})
        out.push_back(table_from(kCayleyDickson, shift, rev != 0, sign,
                                 variant_name("cd", shift, rev != 0, sign)));
  return out;
}

ChartPtr make_sphere6_chart() {
  std::vector<std::string> names = coord_names6();
  std::vector<Interval> domain(6, Interval{kMargin, kPi - kMargin});
  domain[5] = Interval{kMargin, 2.0 * kPi - kMargin};
  std::vector<Expr> embedding;
  for (const char* text : sphere6_text().embedding) embedding.push_back(parse(text, names));
  return make_chart("s6", std::move(names), std::move(domain), std::move(embedding));
}

MetricField make_sphere6_metric(ChartPtr chart) {
  std::vector<std::string> names = coord_names6();
  std::vector<std::vector<Expr>> g(6, std::vector<Expr>(6, Expr::constant(0.0)));
  std::vector<std::vector<Expr>> ginv(6, std::vector<Expr>(6, Expr::constant(0.0)));
  for (int i = 0; i < 6; ++i) {
    const auto is = static_cast<std::size_t>(i);
    g[is][is] = parse(sphere6_text().metric_diag[is], names);
    ginv[is][is] = parse(sphere6_text().metric_inv_diag[is], names);
  }
  return metric_field(std::move(chart), std::move(g), std::move(ginv));
}

std::vector<Expr> sphere6_j_row_fixture(const ChartPtr& chart) {
  std::vector<Expr> out;
  for (const char* text : sphere6_text().j_row) out.push_back(parse(text, chart->coord_names()));
  return out;
}

std::vector<Expr> sphere6_j_col_fixture(const ChartPtr& chart) {
  std::vector<Expr> out;
  for (const char* text : sphere6_text().j_col) out.push_back(parse(text, chart->coord_names()));
  return out;
}

EndoField build_j(ChartPtr chart, const CrossTable& table) {
  if (chart->dim() != 6 || !chart->has_embedding() || chart->embedding_dim() != 7)
    throw DomainError("cross-product structure needs a 6-chart embedded in R^7");
  MatrixFieldPtr raw = make_matrix_field(
      6, 6, [chart, table]<class S>(std::span<const S> x, Mat<S>& out) {
        std::vector<S> pos = embedding_position<S>(*chart, x);
        Mat<S> e = embedding_jacobian<S>(*chart, x);
        std::array<S, 7> p{S(0.0), S(0.0), S(0.0), S(0.0), S(0.0), S(0.0), S(0.0)};
        for (int k = 0; k < 7; ++k) p[static_cast<std::size_t>(k)] = pos[static_cast<std::size_t>(k)];
        Mat<S> rhs(7, 6);
        for (int i = 0; i < 6; ++i) {
          std::array<S, 7> col{S(0.0), S(0.0), S(0.0), S(0.0), S(0.0), S(0.0), S(0.0)};
          for (int k = 0; k < 7; ++k) col[static_cast<std::size_t>(k)] = e.at(k, i);
          std::array<S, 7> cr = table.cross(p, col);
          for (int k = 0; k < 7; ++k) rhs.at(k, i) = cr[static_cast<std::size_t>(k)];
        }
        Mat<S> sol = lstsq(e, rhs);
        if constexpr (std::is_same_v<S, double>) {
          // p x (tangent) is again tangent, so the residual is rounding only;
          // anything bigger means the table or chart is inconsistent.
          double resid = max_abs(rhs - matmul(e, sol));
          if (resid > 1e-9 * (1.0 + max_abs(rhs)))
            throw DomainError("cross-product field is not tangent to the embedded sphere");
        }
        for (int i = 0; i < 6; ++i)
          for (int k = 0; k < 6; ++k) out.at(i, k) = sol.at(k, i);
      });
  return endo_field(std::move(chart), mat_cached(std::move(raw)));
}

double fixture_defect(const ChartPtr& chart, const MatrixFieldPtr& j,
                      const std::vector<Point>& pts) {
  std::vector<Expr> row = sphere6_j_row_fixture(chart);
  std::vector<Expr> col = sphere6_j_col_fixture(chart);
  double worst = 0.0;
  for (const Point& p : pts) {
    Mat<double> t = eval_mat<double>(*j, std::span<const double>(p));
    for (int k = 0; k < 6; ++k) {
      worst = std::max(worst, std::abs(t.at(0, k) - row[static_cast<std::size_t>(k)].eval(p)));
      worst = std::max(worst, std::abs(t.at(k, 0) - col[static_cast<std::size_t>(k)].eval(p)));
    }
  }
  return worst;
}

CrossTable calibrate_table(const ChartPtr& chart, const std::vector<CrossTable>& candidates,
                           int npoints, std::uint64_t seed, double tol) {
  std::vector<Point> pts = sample_chart(*chart, npoints, seed);
  for (const CrossTable& cand : candidates) {
    EndoField j = build_j(chart, cand);
    if (fixture_defect(chart, j.comps, pts) <= tol) return cand;
  }
  throw DomainError("no cross-product candidate reproduces the component fixtures");
}

Sphere6 make_sphere6() {
  ChartPtr chart = make_sphere6_chart();
  CrossTable table = calibrate_table(chart, calibration_candidates(), 20, 20260819ULL, 1e-8);
  Sphere6 s{chart,
            make_sphere6_metric(chart),
            build_j(chart, table),
            table,
            sphere6_j_row_fixture(chart),
            sphere6_j_col_fixture(chart)};
  return s;
}

std::vector<Interval> sphere6_equivalence_box() {
  std::vector<Interval> box(6, Interval{kPi / 3.0, 2.0 * kPi / 3.0});
  box[5] = Interval{kMargin, 2.0 * kPi - kMargin};
  return box;
}

std::vector<Interval> sphere6_scan_box() {
  std::vector<Interval> box(6, Interval{kMargin, kPi - kMargin});
  box[0] = Interval{kPi / 3.0, 2.0 * kPi / 3.0};
  box[1] = Interval{kPi / 4.0, kPi / 3.0};
  box[2] = Interval{kPi / 4.0, kPi / 3.0};
  box[5] = Interval{kMargin, 2.0 * kPi - kMargin};
  return box;
}

double IdentityCheck::gap() const { return std::abs(lhs - rhs); }

IdentityCheck cross_torsion_identity(const Sphere6& s, const Point& p) {
  s.chart->require_inside(p);
  std::span<const double> x(p);
  Mat<double> ginv = eval_mat<double>(*s.metric.ginv, x);
  D1 jr1 = s.j_row_fixture[1].eval_dual(p);
  D1 jr2 = s.j_row_fixture[2].eval_dual(p);
  double jc1 = s.j_col_fixture[1].eval(p);
  double jc2 = s.j_col_fixture[2].eval(p);
  IdentityCheck r;
  r.lhs = ginv.at(1, 1) * jc1 * jr1.v * jr2.d[1] +
          ginv.at(2, 2) * jc2 * (jr1.v * jr2.d[2] - jr2.v * jr1.d[2]);
  r.rhs = parse(kCrossTorsionRhs, s.chart->coord_names()).eval(p);
  return r;
}

IdentityCheck metric_leg_obstruction(const Sphere6& s, const Expr& b, const Expr& c, const Point& p) {
  s.chart->require_inside(p);
  std::span<const double> x(p);
  MatJet<double> gi = mat_jet<double>(*s.metric.ginv, x);
  D1 bj = b.eval_dual(p);
  const double bv = bj.v;
  const double cv = c.eval(p);
  std::vector<double> db = bj.d.empty() ? std::vector<double>(6, 0.0) : bj.d;

  // w[k] = (g^{-1} Jcol)_k, the raising of the fixture column
  std::vector<double> jcol(6), w(6, 0.0);
  for (int k = 0; k < 6; ++k) jcol[static_cast<std::size_t>(k)] = s.j_col_fixture[static_cast<std::size_t>(k)].eval(p);
  for (int k = 0; k < 6; ++k)
    for (int t = 0; t < 6; ++t)
      w[static_cast<std::size_t>(k)] += gi.val.at(k, t) * jcol[static_cast<std::size_t>(t)];

  auto display = [&](int i, int j) {
    double t1 = 0.0, t2 = 0.0, t3 = 0.0, t4 = 0.0;
    for (int k = 0; k < 6; ++k) {
      const auto ks = static_cast<std::size_t>(k);
      t1 += w[ks] * gi.d[ks].at(i, j);
      t2 += gi.val.at(k, 0) * gi.d[ks].at(i, j);
      t3 += db[ks] * w[ks];
      t4 += db[ks] * gi.val.at(k, 0);
    }
    return bv * cv * t1 - bv * bv * t2 + cv * t3 * gi.val.at(i, j) - bv * t4 * gi.val.at(i, j);
  };

  IdentityCheck r;
  r.lhs = display(1, 1) - gi.val.at(1, 1) * display(0, 0);
  r.rhs = 2.0 * std::cos(p[0]) / std::pow(std::sin(p[0]), 3) * bv * bv;
  return r;
}

ScanReport scan_nonexistence(const Sphere6& s, int directions, int points_per_direction,
                             std::uint64_t seed, double tol_nonvanish) {
  std::vector<std::array<double, 3>> dirs = fibonacci_sphere(directions, seed);
  std::vector<Point> pts =
      sample_box(sphere6_scan_box(), points_per_direction, seed ^ 0x9e3779b97f4a7c15ULL);
  ScanReport rep;
  rep.min_max_residual = std::numeric_limits<double>::infinity();
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    const auto& dir = dirs[d];
    BlockEndo t = spherical_combination(dir[0], dir[1], dir[2], s.metric, s.j);
    ResidualReport rr = condition_residuals(t, pts);
    ScanEntry e;
    e.a = dir[0];
    e.b = dir[1];
    e.c = dir[2];
    e.max_residual = rr.max_abs();
    e.max_scale = rr.max_scale();
    e.peak = rr.argmax();
    if (e.max_residual < rep.min_max_residual) {
      rep.min_max_residual = e.max_residual;
      rep.weakest_direction = static_cast<int>(d);
    }
    rep.entries.push_back(e);
  }
  rep.all_nonvanishing = !rep.entries.empty() && rep.min_max_residual >= tol_nonvanish;
  return rep;
}

}  // namespace gengeo
