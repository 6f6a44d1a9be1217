#pragma once

#include <memory>
#include <span>
#include <vector>

#include "gengeo/chart.hpp"
#include "gengeo/linalg.hpp"

namespace gengeo {

// Component fields evaluate at plain double coordinates or at first/second
// order jets of them.  Three virtual overloads cover every depth the calculus
// layer needs; combinators that must differentiate their operands check
// jets_available<S> and refuse the deepest level.

struct ScalarFieldBase {
  virtual ~ScalarFieldBase() = default;
  virtual double eval(std::span<const double> x) const = 0;
  virtual D1 eval(std::span<const D1> x) const = 0;
  virtual D2 eval(std::span<const D2> x) const = 0;
};
using ScalarFieldPtr = std::shared_ptr<const ScalarFieldBase>;

struct VecFieldBase {
  virtual ~VecFieldBase() = default;
  virtual int width() const = 0;
  virtual void eval(std::span<const double> x, std::vector<double>& out) const = 0;
  virtual void eval(std::span<const D1> x, std::vector<D1>& out) const = 0;
  virtual void eval(std::span<const D2> x, std::vector<D2>& out) const = 0;
};
using VecFieldPtr = std::shared_ptr<const VecFieldBase>;

struct MatrixFieldBase {
  virtual ~MatrixFieldBase() = default;
  virtual int rows() const = 0;
  virtual int cols() const = 0;
  virtual void eval(std::span<const double> x, Mat<double>& out) const = 0;
  virtual void eval(std::span<const D1> x, Mat<D1>& out) const = 0;
  virtual void eval(std::span<const D2> x, Mat<D2>& out) const = 0;
};
using MatrixFieldPtr = std::shared_ptr<const MatrixFieldBase>;

namespace detail {

template <class F>
class ScalarFieldFn final : public ScalarFieldBase {
 public:
  explicit ScalarFieldFn(F f) : f_(std::move(f)) {}
  double eval(std::span<const double> x) const override { return f_(x); }
  D1 eval(std::span<const D1> x) const override { return f_(x); }
  D2 eval(std::span<const D2> x) const override { return f_(x); }

 private:
  F f_;
};

template <class F>
class VecFieldFn final : public VecFieldBase {
 public:
  VecFieldFn(int width, F f) : width_(width), f_(std::move(f)) {}
  int width() const override { return width_; }
  void eval(std::span<const double> x, std::vector<double>& out) const override { run(x, out); }
  void eval(std::span<const D1> x, std::vector<D1>& out) const override { run(x, out); }
  void eval(std::span<const D2> x, std::vector<D2>& out) const override { run(x, out); }

 private:
  template <class S>
  void run(std::span<const S> x, std::vector<S>& out) const {
    out.assign(static_cast<std::size_t>(width_), S(0.0));
    f_(x, out);
  }
  int width_;
  F f_;
};

template <class F>
class MatrixFieldFn final : public MatrixFieldBase {
 public:
  MatrixFieldFn(int rows, int cols, F f) : rows_(rows), cols_(cols), f_(std::move(f)) {}
  int rows() const override { return rows_; }
  int cols() const override { return cols_; }
  void eval(std::span<const double> x, Mat<double>& out) const override { run(x, out); }
  void eval(std::span<const D1> x, Mat<D1>& out) const override { run(x, out); }
  void eval(std::span<const D2> x, Mat<D2>& out) const override { run(x, out); }

 private:
  template <class S>
  void run(std::span<const S> x, Mat<S>& out) const {
    out = Mat<S>(rows_, cols_);
    f_(x, out);
  }
  int rows_, cols_;
  F f_;
};

}  // namespace detail

template <class F>
ScalarFieldPtr make_scalar_field(F f) {
  return std::make_shared<const detail::ScalarFieldFn<F>>(std::move(f));
}
template <class F>
VecFieldPtr make_vec_field(int width, F f) {
  return std::make_shared<const detail::VecFieldFn<F>>(width, std::move(f));
}
template <class F>
MatrixFieldPtr make_matrix_field(int rows, int cols, F f) {
  return std::make_shared<const detail::MatrixFieldFn<F>>(rows, cols, std::move(f));
}

ScalarFieldPtr scalar_constant(double c);
ScalarFieldPtr scalar_from_expr(Expr e);
VecFieldPtr vec_from_exprs(std::vector<Expr> comps);
MatrixFieldPtr mat_from_exprs(std::vector<std::vector<Expr>> entries);
MatrixFieldPtr mat_constant(Mat<double> m);

// Pointwise algebra on matrix fields.
MatrixFieldPtr mat_scale(double c, MatrixFieldPtr m);
MatrixFieldPtr mat_scale(ScalarFieldPtr c, MatrixFieldPtr m);
MatrixFieldPtr mat_sum(std::vector<MatrixFieldPtr> terms);
MatrixFieldPtr mat_product(MatrixFieldPtr x, MatrixFieldPtr y);
MatrixFieldPtr mat_transposed(MatrixFieldPtr m);
// Pointwise matrix inverse through the generic LU solver, so it stays
// differentiable.
MatrixFieldPtr mat_inverse(MatrixFieldPtr m);

// Memoizes evaluations keyed on the coordinate values.  Plain points and
// identity-seeded first jets are cached; anything else passes through.
// Intended for expensive fields (a pointwise least-squares solve) that the
// calculus layer hits many times at the same sample points.
MatrixFieldPtr mat_cached(MatrixFieldPtr m);

template <class S>
std::vector<S> eval_comps(const VecFieldBase& f, std::span<const S> x) {
  std::vector<S> out;
  f.eval(x, out);
  return out;
}

template <class S>
Mat<S> eval_mat(const MatrixFieldBase& f, std::span<const S> x) {
  Mat<S> out;
  f.eval(x, out);
  return out;
}

// First-order jet of a vector field's components: val[c] and d.at(k, c), the
// partial of component c along coordinate k.  Requires a jet level below the
// interface ceiling; callers guard with jets_available<S>.
template <class S>
struct VecJet {
  std::vector<S> val;
  Mat<S> d;
};

template <class S>
VecJet<S> vec_jet(const VecFieldBase& f, std::span<const S> x) {
  static_assert(jets_available<S>, "vec_jet needs one spare derivative level");
  const int n = static_cast<int>(x.size());
  std::vector<Dual<S>> coords(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    coords[static_cast<std::size_t>(i)].v = x[static_cast<std::size_t>(i)];
    coords[static_cast<std::size_t>(i)].d.assign(static_cast<std::size_t>(n), S(0.0));
    coords[static_cast<std::size_t>(i)].d[static_cast<std::size_t>(i)] = S(1.0);
  }
  std::vector<Dual<S>> out;
  f.eval(std::span<const Dual<S>>(coords), out);
  VecJet<S> jet;
  const int w = f.width();
  jet.val.assign(static_cast<std::size_t>(w), S(0.0));
  jet.d = Mat<S>(n, w);
  for (int c = 0; c < w; ++c) {
    jet.val[static_cast<std::size_t>(c)] = out[static_cast<std::size_t>(c)].v;
    if (!out[static_cast<std::size_t>(c)].d.empty())
      for (int k = 0; k < n; ++k) jet.d.at(k, c) = out[static_cast<std::size_t>(c)].d[static_cast<std::size_t>(k)];
  }
  return jet;
}

// Jet of a matrix field: val and d[k], entrywise partials along coordinate k.
template <class S>
struct MatJet {
  Mat<S> val;
  std::vector<Mat<S>> d;
};

template <class S>
MatJet<S> mat_jet(const MatrixFieldBase& f, std::span<const S> x) {
  static_assert(jets_available<S>, "mat_jet needs one spare derivative level");
  const int n = static_cast<int>(x.size());
  std::vector<Dual<S>> coords(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    coords[static_cast<std::size_t>(i)].v = x[static_cast<std::size_t>(i)];
    coords[static_cast<std::size_t>(i)].d.assign(static_cast<std::size_t>(n), S(0.0));
    coords[static_cast<std::size_t>(i)].d[static_cast<std::size_t>(i)] = S(1.0);
  }
  Mat<Dual<S>> out;
  f.eval(std::span<const Dual<S>>(coords), out);
  MatJet<S> jet;
  jet.val = Mat<S>(out.rows, out.cols);
  jet.d.assign(static_cast<std::size_t>(n), Mat<S>(out.rows, out.cols));
  for (int r = 0; r < out.rows; ++r)
    for (int c = 0; c < out.cols; ++c) {
      const Dual<S>& e = out.at(r, c);
      jet.val.at(r, c) = e.v;
      if (!e.d.empty())
        for (int k = 0; k < n; ++k) jet.d[static_cast<std::size_t>(k)].at(r, c) = e.d[static_cast<std::size_t>(k)];
    }
  return jet;
}

// ---------------------------------------------------------------------------
// Chart-aware wrappers.

struct VectorField {
  ChartPtr chart;
  VecFieldPtr comps;  // width == chart->dim()
};

struct OneForm {
  ChartPtr chart;
  VecFieldPtr comps;
};

// Section of TM + T*M: components [0, n) are the vector part, [n, 2n) the
// form part.
struct GenField {
  ChartPtr chart;
  VecFieldPtr comps;  // width == 2 * chart->dim()
};

// Endomorphism table in row-input convention: entry (i, j) is the j-th
// output component on the i-th input, so J(∂_i) = sum_j table[i][j] ∂_j.
struct EndoField {
  ChartPtr chart;
  MatrixFieldPtr comps;
};

struct MetricField {
  ChartPtr chart;
  MatrixFieldPtr g;
  MatrixFieldPtr ginv;
};

VectorField vector_field(ChartPtr chart, std::vector<Expr> comps);
VectorField vector_field(ChartPtr chart, VecFieldPtr comps);
OneForm one_form(ChartPtr chart, std::vector<Expr> comps);
OneForm one_form(ChartPtr chart, VecFieldPtr comps);
GenField gen_section(const VectorField& x, const OneForm& xi);
GenField gen_section(ChartPtr chart, std::vector<Expr> vec_comps, std::vector<Expr> form_comps);
GenField gen_section(ChartPtr chart, VecFieldPtr comps);
EndoField endo_field(ChartPtr chart, std::vector<std::vector<Expr>> entries);
EndoField endo_field(ChartPtr chart, MatrixFieldPtr comps);
MetricField metric_field(ChartPtr chart, std::vector<std::vector<Expr>> g_entries);
MetricField metric_field(ChartPtr chart, std::vector<std::vector<Expr>> g_entries,
                         std::vector<std::vector<Expr>> ginv_entries);
MetricField metric_field(ChartPtr chart, MatrixFieldPtr g, MatrixFieldPtr ginv);

// Coordinate frame sections: the i-th basis vector field or coordinate
// differential as a generalized section.
GenField frame_vector_section(ChartPtr chart, int i);
GenField frame_form_section(ChartPtr chart, int i);

GenField gen_add(const GenField& u, const GenField& v);
GenField gen_sub(const GenField& u, const GenField& v);
GenField gen_scale(double c, const GenField& u);
GenField gen_scale(ScalarFieldPtr c, const GenField& u);

struct SectionValue {
  std::vector<double> vec, form;
};

SectionValue eval_section(const GenField& u, const Point& p);
std::vector<double> eval_vector(const VectorField& x, const Point& p);
std::vector<double> eval_one_form(const OneForm& xi, const Point& p);
Mat<double> eval_endo(const EndoField& j, const Point& p);

// Diagnostics for geometric inputs; each returns the worst defect over the
// sample points.
double metric_symmetry_defect(const MetricField& g, const std::vector<Point>& pts);
double metric_inverse_defect(const MetricField& g, const std::vector<Point>& pts);
// max |E^T E - g| when the chart embeds; the induced metric should be g.
double metric_pullback_defect(const MetricField& g, const std::vector<Point>& pts);
// max |J J + I| in table form.
double complex_structure_defect(const EndoField& j, const std::vector<Point>& pts);
// max |g(JX, JY) - g(X, Y)| on frame inputs.
double metric_compatibility_defect(const MetricField& g, const EndoField& j,
                                   const std::vector<Point>& pts);

}  // namespace gengeo
