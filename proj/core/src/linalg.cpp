#include "gengeo/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace gengeo {

std::vector<double> sym_eigenvalues(Mat<double> m) {
  if (m.rows != m.cols) throw DomainError("sym_eigenvalues needs a square matrix");
  const int n = m.rows;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += m.at(p, q) * m.at(p, q);
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        double apq = m.at(p, q);
        if (apq == 0.0) continue;
        double theta = (m.at(q, q) - m.at(p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double mkp = m.at(k, p), mkq = m.at(k, q);
          m.at(k, p) = c * mkp - s * mkq;
          m.at(k, q) = s * mkp + c * mkq;
        }
        for (int k = 0; k < n; ++k) {
          double mpk = m.at(p, k), mqk = m.at(q, k);
          m.at(p, k) = c * mpk - s * mqk;
          m.at(q, k) = s * mpk + c * mqk;
        }
      }
  }
  std::vector<double> ev(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = m.at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

double min_singular_value(const Mat<double>& m) {
  Mat<double> gram = matmul(transpose(m), m);
  std::vector<double> ev = sym_eigenvalues(gram);
  double lo = ev.empty() ? 0.0 : ev.front();
  return std::sqrt(std::max(0.0, lo));
}

double max_abs(const Mat<double>& m) {
  double best = 0.0;
  for (double x : m.a) best = std::max(best, std::abs(x));
  return best;
}

}  // namespace gengeo
