#include "gengeo/rng.hpp"

#include <cmath>

namespace gengeo {

namespace {
const int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                       41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};

double frac(double x) { return x - std::floor(x); }
}  // namespace

BoxSequence::BoxSequence(int dim, std::uint64_t seed) {
  SplitMix64 rng(seed);
  alpha_.resize(static_cast<std::size_t>(dim));
  offset_.resize(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    int prime = kPrimes[i % (sizeof(kPrimes) / sizeof(kPrimes[0]))];
    alpha_[static_cast<std::size_t>(i)] = frac(std::sqrt(static_cast<double>(prime)));
    offset_[static_cast<std::size_t>(i)] = rng.next_double();
  }
}

std::vector<double> BoxSequence::point(int k) const {
  std::vector<double> x(alpha_.size());
  for (std::size_t i = 0; i < alpha_.size(); ++i)
    x[i] = frac(offset_[i] + static_cast<double>(k + 1) * alpha_[i]);
  return x;
}

std::vector<std::array<double, 3>> fibonacci_sphere(int count, std::uint64_t seed) {
  SplitMix64 rng(seed);
  double phase = rng.next_double() * 2.0 * 3.14159265358979323846;
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<std::array<double, 3>> dirs;
  dirs.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    double z = 1.0 - 2.0 * (static_cast<double>(k) + 0.5) / static_cast<double>(count);
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double theta = phase + 2.0 * 3.14159265358979323846 * static_cast<double>(k) / golden;
    std::array<double, 3> d{r * std::cos(theta), r * std::sin(theta), z};
    double norm = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    for (double& c : d) c /= norm;
    dirs.push_back(d);
  }
  return dirs;
}

}  // namespace gengeo
