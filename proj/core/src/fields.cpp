#include "gengeo/fields.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

namespace gengeo {

ScalarFieldPtr scalar_constant(double c) {
  return make_scalar_field([c]<class S>(std::span<const S>) -> S { return S(c); });
}

ScalarFieldPtr scalar_from_expr(Expr e) {
  if (!e.valid()) throw DomainError("empty expression for scalar field");
  return make_scalar_field(
      [e]<class S>(std::span<const S> x) -> S { return e.template eval_generic<S>(x); });
}

VecFieldPtr vec_from_exprs(std::vector<Expr> comps) {
  const int w = static_cast<int>(comps.size());
  for (const Expr& e : comps)
    if (!e.valid()) throw DomainError("empty expression in component list");
  return make_vec_field(
      w, [cs = std::move(comps)]<class S>(std::span<const S> x, std::vector<S>& out) {
        for (std::size_t c = 0; c < cs.size(); ++c) out[c] = cs[c].template eval_generic<S>(x);
      });
}

MatrixFieldPtr mat_from_exprs(std::vector<std::vector<Expr>> entries) {
  const int r = static_cast<int>(entries.size());
  if (r == 0) throw DomainError("empty matrix of expressions");
  const int c = static_cast<int>(entries.front().size());
  for (const auto& row : entries) {
    if (static_cast<int>(row.size()) != c) throw DomainError("ragged matrix of expressions");
    for (const Expr& e : row)
      if (!e.valid()) throw DomainError("empty expression in matrix");
  }
  return make_matrix_field(
      r, c, [es = std::move(entries)]<class S>(std::span<const S> x, Mat<S>& out) {
        for (int i = 0; i < out.rows; ++i)
          for (int j = 0; j < out.cols; ++j)
            out.at(i, j) = es[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                               .template eval_generic<S>(x);
      });
}

MatrixFieldPtr mat_constant(Mat<double> m) {
  return make_matrix_field(m.rows, m.cols,
                           [m = std::move(m)]<class S>(std::span<const S>, Mat<S>& out) {
                             for (int i = 0; i < out.rows; ++i)
                               for (int j = 0; j < out.cols; ++j) out.at(i, j) = S(m.at(i, j));
                           });
}

MatrixFieldPtr mat_scale(double c, MatrixFieldPtr m) {
  return make_matrix_field(m->rows(), m->cols(),
                           [c, m]<class S>(std::span<const S> x, Mat<S>& out) {
                             out = eval_mat<S>(*m, x);
                             for (S& e : out.a) e = e * c;
                           });
}

MatrixFieldPtr mat_scale(ScalarFieldPtr c, MatrixFieldPtr m) {
  return make_matrix_field(m->rows(), m->cols(),
                           [c, m]<class S>(std::span<const S> x, Mat<S>& out) {
                             S s = c->eval(x);
                             out = eval_mat<S>(*m, x);
                             for (S& e : out.a) e = e * s;
                           });
}

MatrixFieldPtr mat_sum(std::vector<MatrixFieldPtr> terms) {
  if (terms.empty()) throw DomainError("mat_sum needs at least one term");
  const int r = terms.front()->rows();
  const int c = terms.front()->cols();
  for (const auto& t : terms)
    if (t->rows() != r || t->cols() != c) throw DomainError("mat_sum shape mismatch");
  return make_matrix_field(r, c,
                           [ts = std::move(terms)]<class S>(std::span<const S> x, Mat<S>& out) {
                             out = eval_mat<S>(*ts.front(), x);
                             for (std::size_t k = 1; k < ts.size(); ++k)
                               out = out + eval_mat<S>(*ts[k], x);
                           });
}

MatrixFieldPtr mat_product(MatrixFieldPtr x, MatrixFieldPtr y) {
  if (x->cols() != y->rows()) throw DomainError("mat_product shape mismatch");
  return make_matrix_field(x->rows(), y->cols(),
                           [x, y]<class S>(std::span<const S> p, Mat<S>& out) {
                             out = matmul(eval_mat<S>(*x, p), eval_mat<S>(*y, p));
                           });
}

MatrixFieldPtr mat_transposed(MatrixFieldPtr m) {
  return make_matrix_field(m->cols(), m->rows(),
                           [m]<class S>(std::span<const S> x, Mat<S>& out) {
                             out = transpose(eval_mat<S>(*m, x));
                           });
}

MatrixFieldPtr mat_inverse(MatrixFieldPtr m) {
  if (m->rows() != m->cols()) throw DomainError("mat_inverse needs a square field");
  const int n = m->rows();
  return make_matrix_field(n, n, [m, n]<class S>(std::span<const S> x, Mat<S>& out) {
    out = lu_solve(eval_mat<S>(*m, x), identity_mat<S>(n));
  });
}

namespace {

class CachedMatrixField final : public MatrixFieldBase {
 public:
  explicit CachedMatrixField(MatrixFieldPtr inner) : inner_(std::move(inner)) {}

  int rows() const override { return inner_->rows(); }
  int cols() const override { return inner_->cols(); }

  void eval(std::span<const double> x, Mat<double>& out) const override {
    std::vector<double> key(x.begin(), x.end());
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = plain_.find(key);
      if (it != plain_.end()) {
        out = it->second;
        return;
      }
    }
    inner_->eval(x, out);
    std::lock_guard<std::mutex> lock(mu_);
    if (plain_.size() > kMaxEntries) plain_.clear();
    plain_.emplace(std::move(key), out);
  }

  void eval(std::span<const D1> x, Mat<D1>& out) const override {
    if (!identity_seeded(x)) {
      inner_->eval(x, out);
      return;
    }
    std::vector<double> key(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) key[i] = x[i].v;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = jet_.find(key);
      if (it != jet_.end()) {
        out = it->second;
        return;
      }
    }
    inner_->eval(x, out);
    std::lock_guard<std::mutex> lock(mu_);
    if (jet_.size() > kMaxEntries) jet_.clear();
    jet_.emplace(std::move(key), out);
  }

  void eval(std::span<const D2> x, Mat<D2>& out) const override { inner_->eval(x, out); }

 private:
  static bool identity_seeded(std::span<const D1> x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].d.size() != x.size()) return false;
      for (std::size_t k = 0; k < x.size(); ++k)
        if (x[i].d[k] != (k == i ? 1.0 : 0.0)) return false;
    }
    return true;
  }

  static constexpr std::size_t kMaxEntries = 4096;
  MatrixFieldPtr inner_;
  mutable std::mutex mu_;
  mutable std::map<std::vector<double>, Mat<double>> plain_;
  mutable std::map<std::vector<double>, Mat<D1>> jet_;
};

}  // namespace

MatrixFieldPtr mat_cached(MatrixFieldPtr m) {
  return std::make_shared<const CachedMatrixField>(std::move(m));
}

// ---------------------------------------------------------------------------
// Chart-aware wrappers.

namespace {
void check_arity(const std::vector<Expr>& es, int dim, const char* what) {
  for (const Expr& e : es)
    if (e.min_arity() > dim) throw DomainError(std::string(what) + " uses coordinates beyond the chart");
}
}  // namespace

VectorField vector_field(ChartPtr chart, std::vector<Expr> comps) {
  if (static_cast<int>(comps.size()) != chart->dim())
    throw DomainError("vector field needs one component per coordinate");
  check_arity(comps, chart->dim(), "vector field");
  return {chart, vec_from_exprs(std::move(comps))};
}

VectorField vector_field(ChartPtr chart, VecFieldPtr comps) {
  if (comps->width() != chart->dim()) throw DomainError("vector field width mismatch");
  return {std::move(chart), std::move(comps)};
}

OneForm one_form(ChartPtr chart, std::vector<Expr> comps) {
  if (static_cast<int>(comps.size()) != chart->dim())
    throw DomainError("one-form needs one component per coordinate");
  check_arity(comps, chart->dim(), "one-form");
  return {chart, vec_from_exprs(std::move(comps))};
}

OneForm one_form(ChartPtr chart, VecFieldPtr comps) {
  if (comps->width() != chart->dim()) throw DomainError("one-form width mismatch");
  return {std::move(chart), std::move(comps)};
}

GenField gen_section(const VectorField& x, const OneForm& xi) {
  require_same_chart(x.chart, xi.chart);
  const int n = x.chart->dim();
  auto xc = x.comps;
  auto fc = xi.comps;
  return {x.chart,
          make_vec_field(2 * n, [xc, fc, n]<class S>(std::span<const S> p, std::vector<S>& out) {
            std::vector<S> a = eval_comps<S>(*xc, p);
            std::vector<S> b = eval_comps<S>(*fc, p);
            for (int c = 0; c < n; ++c) {
              out[static_cast<std::size_t>(c)] = a[static_cast<std::size_t>(c)];
              out[static_cast<std::size_t>(n + c)] = b[static_cast<std::size_t>(c)];
            }
          })};
}

GenField gen_section(ChartPtr chart, std::vector<Expr> vec_comps, std::vector<Expr> form_comps) {
  const int n = chart->dim();
  if (static_cast<int>(vec_comps.size()) != n || static_cast<int>(form_comps.size()) != n)
    throw DomainError("generalized section needs n vector and n form components");
  std::vector<Expr> all = std::move(vec_comps);
  all.insert(all.end(), form_comps.begin(), form_comps.end());
  check_arity(all, n, "generalized section");
  return {std::move(chart), vec_from_exprs(std::move(all))};
}

GenField gen_section(ChartPtr chart, VecFieldPtr comps) {
  if (comps->width() != 2 * chart->dim()) throw DomainError("generalized section width mismatch");
  return {std::move(chart), std::move(comps)};
}

EndoField endo_field(ChartPtr chart, std::vector<std::vector<Expr>> entries) {
  const int n = chart->dim();
  if (static_cast<int>(entries.size()) != n) throw DomainError("endomorphism table must be n by n");
  for (const auto& row : entries) {
    if (static_cast<int>(row.size()) != n) throw DomainError("endomorphism table must be n by n");
    check_arity(row, n, "endomorphism");
  }
  return {std::move(chart), mat_from_exprs(std::move(entries))};
}

EndoField endo_field(ChartPtr chart, MatrixFieldPtr comps) {
  if (comps->rows() != chart->dim() || comps->cols() != chart->dim())
    throw DomainError("endomorphism table must be n by n");
  return {std::move(chart), std::move(comps)};
}

MetricField metric_field(ChartPtr chart, std::vector<std::vector<Expr>> g_entries) {
  MatrixFieldPtr g = mat_from_exprs(std::move(g_entries));
  if (g->rows() != chart->dim() || g->cols() != chart->dim())
    throw DomainError("metric must be n by n");
  MatrixFieldPtr ginv = mat_inverse(g);
  return {std::move(chart), std::move(g), std::move(ginv)};
}

MetricField metric_field(ChartPtr chart, std::vector<std::vector<Expr>> g_entries,
                         std::vector<std::vector<Expr>> ginv_entries) {
  MatrixFieldPtr g = mat_from_exprs(std::move(g_entries));
  MatrixFieldPtr ginv = mat_from_exprs(std::move(ginv_entries));
  return metric_field(std::move(chart), std::move(g), std::move(ginv));
}

MetricField metric_field(ChartPtr chart, MatrixFieldPtr g, MatrixFieldPtr ginv) {
  const int n = chart->dim();
  if (g->rows() != n || g->cols() != n || ginv->rows() != n || ginv->cols() != n)
    throw DomainError("metric must be n by n");
  return {std::move(chart), std::move(g), std::move(ginv)};
}

GenField frame_vector_section(ChartPtr chart, int i) {
  const int n = chart->dim();
  if (i < 0 || i >= n) throw DomainError("frame index out of range");
  return {std::move(chart),
          make_vec_field(2 * n, [i]<class S>(std::span<const S>, std::vector<S>& out) {
            out[static_cast<std::size_t>(i)] = S(1.0);
          })};
}

GenField frame_form_section(ChartPtr chart, int i) {
  const int n = chart->dim();
  if (i < 0 || i >= n) throw DomainError("frame index out of range");
  return {std::move(chart),
          make_vec_field(2 * n, [i, n]<class S>(std::span<const S>, std::vector<S>& out) {
            out[static_cast<std::size_t>(n + i)] = S(1.0);
          })};
}

GenField gen_add(const GenField& u, const GenField& v) {
  require_same_chart(u.chart, v.chart);
  auto uc = u.comps;
  auto vc = v.comps;
  return {u.chart,
          make_vec_field(uc->width(), [uc, vc]<class S>(std::span<const S> x, std::vector<S>& out) {
            std::vector<S> a = eval_comps<S>(*uc, x);
            std::vector<S> b = eval_comps<S>(*vc, x);
            for (std::size_t c = 0; c < out.size(); ++c) out[c] = a[c] + b[c];
          })};
}

GenField gen_sub(const GenField& u, const GenField& v) {
  require_same_chart(u.chart, v.chart);
  auto uc = u.comps;
  auto vc = v.comps;
  return {u.chart,
          make_vec_field(uc->width(), [uc, vc]<class S>(std::span<const S> x, std::vector<S>& out) {
            std::vector<S> a = eval_comps<S>(*uc, x);
            std::vector<S> b = eval_comps<S>(*vc, x);
            for (std::size_t c = 0; c < out.size(); ++c) out[c] = a[c] - b[c];
          })};
}

GenField gen_scale(double c, const GenField& u) {
  auto uc = u.comps;
  return {u.chart,
          make_vec_field(uc->width(), [uc, c]<class S>(std::span<const S> x, std::vector<S>& out) {
            out = eval_comps<S>(*uc, x);
            for (S& e : out) e = e * c;
          })};
}

GenField gen_scale(ScalarFieldPtr c, const GenField& u) {
  auto uc = u.comps;
  return {u.chart,
          make_vec_field(uc->width(), [uc, c]<class S>(std::span<const S> x, std::vector<S>& out) {
            S s = c->eval(x);
            out = eval_comps<S>(*uc, x);
            for (S& e : out) e = e * s;
          })};
}

SectionValue eval_section(const GenField& u, const Point& p) {
  u.chart->require_inside(p);
  std::vector<double> all = eval_comps<double>(*u.comps, std::span<const double>(p));
  const int n = u.chart->dim();
  SectionValue sv;
  sv.vec.assign(all.begin(), all.begin() + n);
  sv.form.assign(all.begin() + n, all.end());
  return sv;
}

std::vector<double> eval_vector(const VectorField& x, const Point& p) {
  x.chart->require_inside(p);
  return eval_comps<double>(*x.comps, std::span<const double>(p));
}

std::vector<double> eval_one_form(const OneForm& xi, const Point& p) {
  xi.chart->require_inside(p);
  return eval_comps<double>(*xi.comps, std::span<const double>(p));
}

Mat<double> eval_endo(const EndoField& j, const Point& p) {
  j.chart->require_inside(p);
  return eval_mat<double>(*j.comps, std::span<const double>(p));
}

// ---------------------------------------------------------------------------
// Diagnostics.

double metric_symmetry_defect(const MetricField& g, const std::vector<Point>& pts) {
  double worst = 0.0;
  for (const Point& p : pts) {
    Mat<double> m = eval_mat<double>(*g.g, std::span<const double>(p));
    worst = std::max(worst, max_abs(m - transpose(m)));
  }
  return worst;
}

double metric_inverse_defect(const MetricField& g, const std::vector<Point>& pts) {
  double worst = 0.0;
  for (const Point& p : pts) {
    Mat<double> m = eval_mat<double>(*g.g, std::span<const double>(p));
    Mat<double> mi = eval_mat<double>(*g.ginv, std::span<const double>(p));
    worst = std::max(worst, max_abs(matmul(m, mi) - identity_mat<double>(m.rows)));
  }
  return worst;
}

double metric_pullback_defect(const MetricField& g, const std::vector<Point>& pts) {
  if (!g.chart->has_embedding()) throw DomainError("chart has no embedding to pull back");
  double worst = 0.0;
  for (const Point& p : pts) {
    Mat<double> e = embedding_jacobian(*g.chart, p);
    Mat<double> induced = matmul(transpose(e), e);
    Mat<double> m = eval_mat<double>(*g.g, std::span<const double>(p));
    worst = std::max(worst, max_abs(induced - m));
  }
  return worst;
}

double complex_structure_defect(const EndoField& j, const std::vector<Point>& pts) {
  double worst = 0.0;
  for (const Point& p : pts) {
    Mat<double> t = eval_mat<double>(*j.comps, std::span<const double>(p));
    worst = std::max(worst, max_abs(matmul(t, t) + identity_mat<double>(t.rows)));
  }
  return worst;
}

double metric_compatibility_defect(const MetricField& g, const EndoField& j,
                                   const std::vector<Point>& pts) {
  require_same_chart(g.chart, j.chart);
  double worst = 0.0;
  for (const Point& p : pts) {
    Mat<double> t = eval_mat<double>(*j.comps, std::span<const double>(p));
    Mat<double> m = eval_mat<double>(*g.g, std::span<const double>(p));
    // g(JX, JY) on frame inputs is T g T^T in the row-input table convention.
    worst = std::max(worst, max_abs(matmul(t, matmul(m, transpose(t))) - m));
  }
  return worst;
}

}  // namespace gengeo
