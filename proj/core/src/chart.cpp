#include "gengeo/chart.hpp"

#include <algorithm>
#include <limits>

#include "gengeo/rng.hpp"

namespace gengeo {

Chart::Chart(std::string name, std::vector<std::string> coord_names, std::vector<Interval> domain,
             std::vector<Expr> embedding)
    : name_(std::move(name)),
      coord_names_(std::move(coord_names)),
      domain_(std::move(domain)),
      embedding_(std::move(embedding)) {
  if (coord_names_.empty()) throw DomainError("chart needs at least one coordinate");
  if (domain_.size() != coord_names_.size())
    throw DomainError("chart domain size does not match coordinate count");
  for (const Interval& iv : domain_)
    if (!(iv.lo < iv.hi)) throw DomainError("chart domain interval is empty");
  if (!embedding_.empty() && static_cast<int>(embedding_.size()) < dim())
    throw DomainError("embedding dimension below chart dimension");
  for (const Expr& e : embedding_)
    if (e.min_arity() > dim()) throw DomainError("embedding expression uses unknown coordinate");
}

bool Chart::contains(const Point& p) const {
  if (p.size() != coord_names_.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!(domain_[i].lo < p[i] && p[i] < domain_[i].hi)) return false;
  return true;
}

void Chart::require_inside(const Point& p) const {
  if (!contains(p))
    throw DomainError("point outside chart '" + name_ + "' domain");
}

ChartPtr make_chart(std::string name, std::vector<std::string> coord_names,
                    std::vector<Interval> domain, std::vector<Expr> embedding) {
  return std::make_shared<const Chart>(std::move(name), std::move(coord_names), std::move(domain),
                                       std::move(embedding));
}

ChartPtr make_euclidean_chart(int dim) {
  std::vector<std::string> names;
  std::vector<Interval> domain;
  std::vector<Expr> embedding;
  for (int i = 0; i < dim; ++i) {
    names.push_back("u" + std::to_string(i + 1));
    domain.push_back({-10.0, 10.0});
    embedding.push_back(Expr::var(i));
  }
  return make_chart("euclidean" + std::to_string(dim), std::move(names), std::move(domain),
                    std::move(embedding));
}

void require_same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (!a || !b) throw DomainError("missing chart");
  if (a != b) throw DomainError("operands live on different charts");
}

std::vector<Point> sample_box(const std::vector<Interval>& box, int count, std::uint64_t seed) {
  BoxSequence seq(static_cast<int>(box.size()), seed);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    std::vector<double> unit = seq.point(k);
    Point p(box.size());
    for (std::size_t i = 0; i < box.size(); ++i)
      p[i] = box[i].lo + (box[i].hi - box[i].lo) * unit[i];
    pts.push_back(std::move(p));
  }
  return pts;
}

std::vector<Point> sample_chart(const Chart& chart, int count, std::uint64_t seed) {
  return sample_box(chart.domain(), count, seed);
}

double min_embedding_rank_margin(const Chart& chart, const std::vector<Point>& pts) {
  double worst = std::numeric_limits<double>::infinity();
  for (const Point& p : pts)
    worst = std::min(worst, min_singular_value(embedding_jacobian(chart, p)));
  return worst;
}

}  // namespace gengeo
