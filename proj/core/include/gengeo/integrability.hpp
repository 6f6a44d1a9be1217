#pragma once

#include <cstdint>
#include <string>

#include "gengeo/dorfman.hpp"

namespace gengeo {

// Frame slot of a residual: torsion of the pair selected by `condition` and
// (i, j), output component l, at sample point `point`.  Conditions 0..7 are
// the four frame pair types times the two output legs:
//   0: (d_i, d_j)   vector    1: (d_i, d_j)   form
//   2: (d_i, dx^j)  vector    3: (d_i, dx^j)  form
//   4: (dx^i, d_j)  vector    5: (dx^i, d_j)  form
//   6: (dx^i, dx^j) vector    7: (dx^i, dx^j) form
struct SlotIndex {
  int condition = 0, i = 0, j = 0, l = 0, point = 0;
};

std::string describe(const SlotIndex& s);

// Residuals of all eight local integrability conditions over a point sample,
// with a per-slot magnitude scale (1 + the largest summand that built the
// slot) so verdicts can respect cancellation-limited precision.
class ResidualReport {
 public:
  ResidualReport() = default;
  ResidualReport(int dim, int num_points);

  int dim() const { return n_; }
  int num_points() const { return pts_; }

  double& at(int cond, int i, int j, int l, int pt) { return r_[idx(cond, i, j, l, pt)]; }
  double at(int cond, int i, int j, int l, int pt) const { return r_[idx(cond, i, j, l, pt)]; }
  double& scale_at(int cond, int i, int j, int l, int pt) { return s_[idx(cond, i, j, l, pt)]; }
  double scale_at(int cond, int i, int j, int l, int pt) const {
    return s_[idx(cond, i, j, l, pt)];
  }

  double max_abs() const;
  double max_scale() const;
  SlotIndex argmax() const;

  enum class Verdict { vanishes, nonvanishing, indeterminate };
  // vanishes when max |residual| <= tol_vanish * max scale; nonvanishing when
  // max |residual| >= tol_nonvanish (absolute).
  Verdict verdict(double tol_vanish, double tol_nonvanish) const;

 private:
  std::size_t idx(int cond, int i, int j, int l, int pt) const;
  int n_ = 0, pts_ = 0;
  std::vector<double> r_, s_;
};

const char* to_string(ResidualReport::Verdict v);

// The eight conditions evaluated directly from the block tables and their
// first derivatives (one jet sweep per point).
ResidualReport condition_residuals(const BlockEndo& t, const std::vector<Point>& pts);

// Independent oracle: the same slots computed by running the generalized
// torsion through the Dorfman bracket on coordinate frame sections.  Shares
// no formula with condition_residuals beyond the bracket definition.
ResidualReport oracle_frame_nijenhuis(const BlockEndo& t, const std::vector<Point>& pts);

// Worst agreement over all slots, flat and scale-relative.
double max_gap(const ResidualReport& a, const ResidualReport& b);
double max_scaled_gap(const ResidualReport& a, const ResidualReport& b);

// Symmetrized combinations that survive in the i = j frame slots:
//   s1(i, j, l) = B[k][l] (d_k A[i][j] + d_k D[j][i])
//   s2(i, j, l) = B[k][l]  d_k (B[i][j] + B[j][i])
// (sums over k; raw normalization, no factor absorbed).
struct SymmetrizedResiduals {
  int n = 0;
  std::vector<double> s1, s2;
  double s1_at(int i, int j, int l) const;
  double s2_at(int i, int j, int l) const;
};

SymmetrizedResiduals symmetrized_conditions(const BlockEndo& t, const Point& p);

// For a G0-skew structure the torsion is tensorial, so its value on any
// section pair is the frame tensor contracted with the section components.
// Evaluates `trials` random expression-coefficient section pairs per point
// and returns the worst scale-relative gap against that contraction.
double strong_sufficiency_gap(const BlockEndo& t, const std::vector<Point>& pts, int trials,
                              std::uint64_t seed);

}  // namespace gengeo
