#pragma once

#include "gengeo/fields.hpp"

namespace gengeo {

// Lie bracket of vector fields.  The result is itself a field and can be
// evaluated at first jets, so brackets nest one level deep (enough for a
// Jacobi identity check at plain points).
VectorField lie_bracket(const VectorField& x, const VectorField& y);

// Lie derivative of a one-form along a vector field, via the Leibniz rule
// (L_X eta)_j = X^k d_k eta_j + eta_k d_j X^k.
OneForm lie_derivative_form(const VectorField& x, const OneForm& eta);

// Contraction i_Y d(xi) for a one-form xi:
// (i_Y dxi)_j = Y^i (d_i xi_j - d_j xi_i).
OneForm interior_d(const VectorField& y, const OneForm& xi);

// Applies an endomorphism table to a vector field: (JX)^j = X^i J[i][j].
VectorField endo_apply(const EndoField& j, const VectorField& x);

// Applies the dual endomorphism to a one-form; the dual table is the
// transpose of the vector table.
OneForm endo_apply_transpose(const EndoField& j, const OneForm& xi);

// Antisymmetric rank-3 coordinate tensor at a point, at(k, i, j).
struct Tensor3 {
  int n = 0;
  std::vector<double> a;

  Tensor3() = default;
  explicit Tensor3(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim * dim, 0.0) {}
  double& at(int k, int i, int j) { return a[(static_cast<std::size_t>(k) * n + i) * n + j]; }
  double at(int k, int i, int j) const { return a[(static_cast<std::size_t>(k) * n + i) * n + j]; }
  double max_abs() const;
};

// Two-form as its component matrix w[i][j] = w(d_i, d_j); must be
// antisymmetric, which two_form_antisym_defect measures.
struct TwoForm {
  ChartPtr chart;
  MatrixFieldPtr comps;
};

TwoForm two_form(ChartPtr chart, std::vector<std::vector<Expr>> entries);
TwoForm two_form(ChartPtr chart, MatrixFieldPtr comps);
double two_form_antisym_defect(const TwoForm& w, const std::vector<Point>& pts);

// Exterior derivative of a two-form at a point:
// (dw)_{kij} = d_k w_{ij} + d_i w_{jk} + d_j w_{ki}.
Tensor3 dtwoform(const TwoForm& w, const Point& p);

// Fundamental two-form of a compatible pair, w(X, Y) = g(JX, Y).
TwoForm fundamental_two_form(const MetricField& g, const EndoField& j);

// Nijenhuis torsion of an almost complex structure, as a field
// N(X, Y) = [JX, JY] - J[JX, Y] - J[X, JY] - [X, Y]
// and as the frame tensor at(i, j, l) = N(d_i, d_j)^l at a point.
VectorField nijenhuis_classical(const EndoField& j, const VectorField& x, const VectorField& y);
Tensor3 nijenhuis_tensor(const EndoField& j, const Point& p);

// Index-lowering and -raising tables for g and, when an almost complex
// structure is supplied, for its fundamental two-form.  Tables act on
// components the same way endomorphism tables do.
struct Musicals {
  MatrixFieldPtr flat_g, sharp_g;
  MatrixFieldPtr flat_omega, sharp_omega;  // null without J
};

Musicals musical(const MetricField& g);
Musicals musical(const MetricField& g, const EndoField& j);

}  // namespace gengeo
