#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gengeo/expr.hpp"
#include "gengeo/linalg.hpp"

namespace gengeo {

struct Interval {
  double lo = 0.0, hi = 1.0;
};

// A single coordinate chart: names, an open box domain, and optionally an
// embedding into R^m given componentwise by expressions.  All fields and
// operators carry a ChartPtr so dimension and identity mismatches surface as
// errors instead of silent nonsense.
class Chart {
 public:
  Chart(std::string name, std::vector<std::string> coord_names, std::vector<Interval> domain,
        std::vector<Expr> embedding = {});

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(coord_names_.size()); }
  const std::vector<std::string>& coord_names() const { return coord_names_; }
  const std::vector<Interval>& domain() const { return domain_; }
  bool has_embedding() const { return !embedding_.empty(); }
  int embedding_dim() const { return static_cast<int>(embedding_.size()); }
  const std::vector<Expr>& embedding() const { return embedding_; }

  bool contains(const Point& p) const;
  void require_inside(const Point& p) const;  // throws DomainError

 private:
  std::string name_;
  std::vector<std::string> coord_names_;
  std::vector<Interval> domain_;
  std::vector<Expr> embedding_;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::string name, std::vector<std::string> coord_names,
                    std::vector<Interval> domain, std::vector<Expr> embedding = {});

// n-dimensional Euclidean patch on (-10, 10)^n with coordinates u1..un.
// The identity embedding makes the flat metric available for free.
ChartPtr make_euclidean_chart(int dim);

void require_same_chart(const ChartPtr& a, const ChartPtr& b);

// Low-discrepancy interior points of a box or a chart domain.
std::vector<Point> sample_box(const std::vector<Interval>& box, int count, std::uint64_t seed);
std::vector<Point> sample_chart(const Chart& chart, int count, std::uint64_t seed);

// Jacobian of the embedding: entry (k, i) is the partial of component k with
// respect to coordinate i.  Works at any jet depth the expressions support.
template <class S>
Mat<S> embedding_jacobian(const Chart& chart, std::span<const S> x) {
  if (!chart.has_embedding()) throw DomainError("chart has no embedding");
  const int n = chart.dim();
  const int m = chart.embedding_dim();
  std::vector<Dual<S>> coords(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    coords[static_cast<std::size_t>(i)].v = x[static_cast<std::size_t>(i)];
    coords[static_cast<std::size_t>(i)].d.assign(static_cast<std::size_t>(n), S(0.0));
    coords[static_cast<std::size_t>(i)].d[static_cast<std::size_t>(i)] = S(1.0);
  }
  Mat<S> jac(m, n);
  for (int k = 0; k < m; ++k) {
    Dual<S> comp = chart.embedding()[static_cast<std::size_t>(k)].eval_generic<Dual<S>>(
        std::span<const Dual<S>>(coords));
    for (int i = 0; i < n; ++i)
      jac.at(k, i) = comp.d.empty() ? S(0.0) : comp.d[static_cast<std::size_t>(i)];
  }
  return jac;
}

inline Mat<double> embedding_jacobian(const Chart& chart, const Point& p) {
  return embedding_jacobian<double>(chart, std::span<const double>(p));
}

// Embedded position at a jet point.
template <class S>
std::vector<S> embedding_position(const Chart& chart, std::span<const S> x) {
  if (!chart.has_embedding()) throw DomainError("chart has no embedding");
  std::vector<S> pos(static_cast<std::size_t>(chart.embedding_dim()), S(0.0));
  for (int k = 0; k < chart.embedding_dim(); ++k)
    pos[static_cast<std::size_t>(k)] = chart.embedding()[static_cast<std::size_t>(k)].eval_generic<S>(x);
  return pos;
}

// Smallest singular value of the embedding Jacobian over the given points.
// An immersed chart keeps this bounded away from zero.
double min_embedding_rank_margin(const Chart& chart, const std::vector<Point>& pts);

}  // namespace gengeo
