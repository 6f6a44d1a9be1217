#pragma once

#include <array>
#include <cstdint>

#include "gengeo/integrability.hpp"

namespace gengeo {

// Structure constants of a 7-dimensional cross product, c[i][j][k] in
// {-1, 0, +1} with e_i x e_j = sum_k c[i][j][k] e_k.
struct CrossTable {
  std::array<std::int8_t, 343> c{};
  std::string variant;

  int sign(int i, int j, int k) const {
    return c[(static_cast<std::size_t>(i) * 7 + j) * 7 + k];
  }

  template <class S>
  std::array<S, 7> cross(const std::array<S, 7>& a, const std::array<S, 7>& b) const {
    std::array<S, 7> r{S(0.0), S(0.0), S(0.0), S(0.0), S(0.0), S(0.0), S(0.0)};
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) {
        for (int k = 0; k < 7; ++k) {
          int s = sign(i, j, k);
          if (s == 1)
            r[static_cast<std::size_t>(k)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
          else if (s == -1)
            r[static_cast<std::size_t>(k)] -= a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
        }
      }
    return r;
  }

  double antisymmetry_defect() const;
  // max | |a x b|^2 - (|a|^2 |b|^2 - (a.b)^2) | over random pairs; a genuine
  // cross product keeps this at rounding level.
  double norm_property_defect(int trials, std::uint64_t seed) const;
};

// The two published component conventions, as oriented Fano triples, plus
// their relabelings: 7 cyclic shifts x optional reversal x overall sign each.
// Which one matches a given set of published component formulas is decided
// numerically by calibrate_table, not assumed.
CrossTable cyclic_cross_table();
CrossTable cayley_dickson_cross_table();
std::vector<CrossTable> calibration_candidates();

// Defining component strings of the builtin geometry: embedding into R^7,
// diagonal metric and inverse, and the two J fixtures.  Single source for
// the chart and metric builders, the fixtures, and the config exporter.
struct Sphere6Text {
  std::array<const char*, 7> embedding;
  std::array<const char*, 6> metric_diag;
  std::array<const char*, 6> metric_inv_diag;
  std::array<const char*, 6> j_row;
  std::array<const char*, 6> j_col;
};
const Sphere6Text& sphere6_text();

ChartPtr make_sphere6_chart();
MetricField make_sphere6_metric(ChartPtr chart);

// Component fixtures for the cross-product almost complex structure in this
// chart: the first row J[1][k] and first column J[k][1] as expressions.
std::vector<Expr> sphere6_j_row_fixture(const ChartPtr& chart);
std::vector<Expr> sphere6_j_col_fixture(const ChartPtr& chart);

// J from the cross product: at each point solve E jc_i = pos x E_i in the
// least-squares sense (E the embedding Jacobian, columns tangent), giving
// J[i][k] = jc_i[k].  Result is memoized per point.
EndoField build_j(ChartPtr chart, const CrossTable& table);

// Worst fixture mismatch of a J table over sample points: first row and
// first column against the published expressions.
double fixture_defect(const ChartPtr& chart, const MatrixFieldPtr& j,
                      const std::vector<Point>& pts);

// Tries candidates in order against the fixtures; returns the first that
// matches within tol at npoints sample points.  Throws DomainError when
// nothing matches.
CrossTable calibrate_table(const ChartPtr& chart, const std::vector<CrossTable>& candidates,
                           int npoints, std::uint64_t seed, double tol = 1e-8);

struct Sphere6 {
  ChartPtr chart;
  MetricField metric;
  EndoField j;
  CrossTable table;
  std::vector<Expr> j_row_fixture, j_col_fixture;
};

// Calibrated round sphere package: chart, metric, cross-product J.
Sphere6 make_sphere6();

// Sub-boxes of the chart domain used for well-conditioned sampling.  The
// scan box additionally keeps u2, u3 where the curvature obstruction below
// is bounded away from zero.
std::vector<Interval> sphere6_equivalence_box();
std::vector<Interval> sphere6_scan_box();

struct IdentityCheck {
  double lhs = 0.0, rhs = 0.0;
  double gap() const;
};

// Closed-form torsion combination of the cross-product J, computed once from
// the fixtures and first derivatives and once from the closed right side
//   -sin(u3) (cos^2 u3 + cos^2 u2) / (sin^3 u1 sin^2 u2).
IdentityCheck cross_torsion_identity(const Sphere6& s, const Point& p);

// Obstruction on the metric leg: for coefficient fields b, c (the J_g and
// J_w legs) a specific combination of the symmetrized form-form conditions
// collapses, for any smooth b and c, to
//   2 cos(u1) / sin^3(u1) * b^2,
// so integrability forces b = 0 away from the equator.  Computed from the
// metric and fixture expressions only.
IdentityCheck metric_leg_obstruction(const Sphere6& s, const Expr& b, const Expr& c,
                                     const Point& p);

struct ScanEntry {
  double a = 0.0, b = 0.0, c = 0.0;
  double max_residual = 0.0;
  double max_scale = 1.0;
  SlotIndex peak;
};

struct ScanReport {
  std::vector<ScanEntry> entries;
  double min_max_residual = 0.0;  // worst direction's peak residual
  int weakest_direction = -1;
  bool all_nonvanishing = false;
};

// Sweeps unit-sphere coefficient directions (a, b, c), evaluating the eight
// conditions for a J_{1,J} + b J_g + c J_w on sample points of the scan box.
// all_nonvanishing reports whether every direction's residual peak clears
// tol_nonvanish.
ScanReport scan_nonexistence(const Sphere6& s, int directions, int points_per_direction,
                             std::uint64_t seed, double tol_nonvanish);

}  // namespace gengeo
