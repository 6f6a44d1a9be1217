#pragma once

#include "gengeo/calculus.hpp"
#include "gengeo/fields.hpp"

namespace gengeo {

// Canonical pairing on TM + T*M: G0(X + xi, Y + eta) = (xi(Y) + eta(X)) / 2.
double pairing_g0(const SectionValue& u, const SectionValue& v);
double pairing_g0(const GenField& u, const GenField& v, const Point& p);

// The pairing's Gram matrix on the coordinate frame (d_1..d_n, dx^1..dx^n);
// constant, eigenvalues +1/2 and -1/2 with multiplicity n each.
Mat<double> pairing_gram(int n);

// Endomorphism of TM + T*M in block table form.  Each block is a row-input
// table like EndoField: A maps vectors to vectors, B forms to vectors, C
// vectors to forms, D forms to forms, so on components
//   (T u)_vec[j]  = u_vec[i] A[i][j] + u_form[i] B[i][j]
//   (T u)_form[j] = u_vec[i] C[i][j] + u_form[i] D[i][j].
struct BlockEndo {
  ChartPtr chart;
  MatrixFieldPtr A, B, C, D;
};

BlockEndo block_endo(ChartPtr chart, MatrixFieldPtr a, MatrixFieldPtr b, MatrixFieldPtr c,
                     MatrixFieldPtr d);
MatrixFieldPtr zero_block(int n);

// Assembled 2n x 2n table [[A, C], [B, D]] at a point.
Mat<double> assembled_table(const BlockEndo& t, const Point& p);

GenField apply(const BlockEndo& t, const GenField& u);
SectionValue apply_at(const BlockEndo& t, const SectionValue& u, const Point& p);

// Composition s . t, apply t first.
BlockEndo compose(const BlockEndo& s, const BlockEndo& t);

BlockEndo endo_sum(const BlockEndo& s, const BlockEndo& t);
BlockEndo endo_scale(ScalarFieldPtr c, const BlockEndo& t);
BlockEndo endo_scale(double c, const BlockEndo& t);
BlockEndo linear_combination(const std::vector<std::pair<ScalarFieldPtr, BlockEndo>>& terms);

// The three structures induced by an almost Hermitian pair (g, J):
//  - from J itself, diag(J, lambda J*), lambda in {+1, -1};
//  - from the metric, off-diagonal (sharp, -flat);
//  - from the fundamental two-form, off-diagonal musicals of w = g(J., .).
BlockEndo make_j_lambda(const EndoField& j, int lambda);
BlockEndo make_j_g(const MetricField& g);
BlockEndo make_j_omega(const MetricField& g, const EndoField& j);

// a J_{1,J} + b J_g + c J_w with coefficient fields.  The combination squares
// to -Id exactly when a^2 + b^2 + c^2 = 1, which is checked on sample points
// to tolerance norm_tol.
BlockEndo spherical_combination(ScalarFieldPtr a, ScalarFieldPtr b, ScalarFieldPtr c,
                                const MetricField& g, const EndoField& j,
                                const std::vector<Point>& norm_check_pts,
                                double norm_tol = 1e-10);
BlockEndo spherical_combination(double a, double b, double c, const MetricField& g,
                                const EndoField& j);

// max |U^2 + Id| of the assembled table over the points.
double gen_complex_defect(const BlockEndo& t, const std::vector<Point>& pts);
// max |G0(Tu, v) + G0(u, Tv)| on frame sections over the points.
double gen_skew_defect(const BlockEndo& t, const std::vector<Point>& pts);

// weak: T^2 = -Id within tol.  strong: additionally G0-skew within tol.
struct GenStructureClass {
  double complex_defect = 0.0;
  double skew_defect = 0.0;
  bool weak = false;
  bool strong = false;
};
GenStructureClass classify(const BlockEndo& t, const std::vector<Point>& pts, double tol = 1e-9);

// Quaternion relations for a triple: each squares to -Id, j1 . j2 = j3,
// j2 . j3 = j1, j3 . j1 = j2, and j1, j2 anticommute.  Returns the worst
// defect over the points; a triple passes when this is below tol.
double hypercomplex_defect(const BlockEndo& j1, const BlockEndo& j2, const BlockEndo& j3,
                           const std::vector<Point>& pts);
bool hypercomplex_check(const BlockEndo& j1, const BlockEndo& j2, const BlockEndo& j3,
                        const std::vector<Point>& pts, double tol = 1e-9);

}  // namespace gengeo
