#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace gengeo {

// Deterministic 64-bit generator (splitmix64).  Used everywhere a seeded
// stream is needed so runs are reproducible across platforms.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_double(); }
};

// Low-discrepancy points in the unit cube: a Kronecker sequence with
// per-dimension irrational strides and a seeded offset.  Fills a box far
// more evenly than independent uniforms at the same count.
class BoxSequence {
 public:
  BoxSequence(int dim, std::uint64_t seed);

  // k-th point, components in (0, 1).
  std::vector<double> point(int k) const;

 private:
  std::vector<double> alpha_, offset_;
};

// count roughly even directions on the unit sphere (Fibonacci lattice),
// rotated by a seeded angle.  Every entry has unit norm.
std::vector<std::array<double, 3>> fibonacci_sphere(int count, std::uint64_t seed);

}  // namespace gengeo
