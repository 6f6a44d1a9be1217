#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

namespace gengeo {

// Forward-mode jet scalar: a value together with its partial derivatives
// along a fixed list of seed directions.  An empty partial vector means
// "all partials zero"; arithmetic preserves that compact form where it can,
// so constants stay cheap inside big contractions.  Nesting Dual<Dual<...>>
// gives second and third derivatives with the same code paths.
template <class T>
struct Dual {
  T v{};
  std::vector<T> d;

  Dual() = default;
  Dual(double c) : v(c) {}
  Dual(T value, std::vector<T> partials) : v(std::move(value)), d(std::move(partials)) {}
};

using D1 = Dual<double>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;

inline double value_of(double x) { return x; }
template <class T>
double value_of(const Dual<T>& x) {
  return value_of(x.v);
}

// Scalar type one derivative level up.  Virtual field interfaces stop at D2,
// so combinators that need to differentiate a field probe jets_available
// before instantiating a jet at the next level.
template <class S>
struct next_dual {
  using type = Dual<S>;
};
template <class S>
using next_dual_t = typename next_dual<S>::type;

template <class S>
inline constexpr bool jets_available = std::is_same_v<S, double> || std::is_same_v<S, D1>;

namespace detail {
template <class T>
void check_widths(const Dual<T>& a, const Dual<T>& b) {
  assert(a.d.empty() || b.d.empty() || a.d.size() == b.d.size());
  (void)a;
  (void)b;
}
}  // namespace detail

template <class T>
Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) {
  detail::check_widths(a, b);
  Dual<T> r;
  r.v = a.v + b.v;
  if (a.d.empty()) {
    r.d = b.d;
  } else if (b.d.empty()) {
    r.d = a.d;
  } else {
    r.d.resize(a.d.size());
    for (std::size_t i = 0; i < a.d.size(); ++i) r.d[i] = a.d[i] + b.d[i];
  }
  return r;
}

template <class T>
Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) {
  detail::check_widths(a, b);
  Dual<T> r;
  r.v = a.v - b.v;
  if (b.d.empty()) {
    r.d = a.d;
  } else if (a.d.empty()) {
    r.d.resize(b.d.size());
    for (std::size_t i = 0; i < b.d.size(); ++i) r.d[i] = -b.d[i];
  } else {
    r.d.resize(a.d.size());
    for (std::size_t i = 0; i < a.d.size(); ++i) r.d[i] = a.d[i] - b.d[i];
  }
  return r;
}

template <class T>
Dual<T> operator-(const Dual<T>& a) {
  Dual<T> r;
  r.v = -a.v;
  r.d.resize(a.d.size());
  for (std::size_t i = 0; i < a.d.size(); ++i) r.d[i] = -a.d[i];
  return r;
}

template <class T>
Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
  detail::check_widths(a, b);
  Dual<T> r;
  r.v = a.v * b.v;
  if (a.d.empty() && b.d.empty()) return r;
  if (a.d.empty()) {
    r.d.resize(b.d.size());
    for (std::size_t i = 0; i < b.d.size(); ++i) r.d[i] = a.v * b.d[i];
  } else if (b.d.empty()) {
    r.d.resize(a.d.size());
    for (std::size_t i = 0; i < a.d.size(); ++i) r.d[i] = a.d[i] * b.v;
  } else {
    r.d.resize(a.d.size());
    for (std::size_t i = 0; i < a.d.size(); ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
  }
  return r;
}

// Quotient rule in the form (a' - q b')/b with q = a/b, so the value slot is
// the one plain division and matches a double-only evaluation bit for bit.
template <class T>
Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
  detail::check_widths(a, b);
  Dual<T> r;
  r.v = a.v / b.v;
  if (a.d.empty() && b.d.empty()) return r;
  if (b.d.empty()) {
    r.d.resize(a.d.size());
    for (std::size_t i = 0; i < a.d.size(); ++i) r.d[i] = a.d[i] / b.v;
  } else if (a.d.empty()) {
    r.d.resize(b.d.size());
    for (std::size_t i = 0; i < b.d.size(); ++i) r.d[i] = -(r.v * b.d[i]) / b.v;
  } else {
    r.d.resize(a.d.size());
    for (std::size_t i = 0; i < a.d.size(); ++i) r.d[i] = (a.d[i] - r.v * b.d[i]) / b.v;
  }
  return r;
}

template <class T>
Dual<T> operator+(const Dual<T>& a, double c) {
  Dual<T> r = a;
  r.v = a.v + c;
  return r;
}
template <class T>
Dual<T> operator+(double c, const Dual<T>& a) {
  return a + c;
}
template <class T>
Dual<T> operator-(const Dual<T>& a, double c) {
  Dual<T> r = a;
  r.v = a.v - c;
  return r;
}
template <class T>
Dual<T> operator-(double c, const Dual<T>& a) {
  Dual<T> r = -a;
  r.v = c - a.v;
  return r;
}
template <class T>
Dual<T> operator*(const Dual<T>& a, double c) {
  Dual<T> r;
  r.v = a.v * c;
  r.d.resize(a.d.size());
  for (std::size_t i = 0; i < a.d.size(); ++i) r.d[i] = a.d[i] * c;
  return r;
}
template <class T>
Dual<T> operator*(double c, const Dual<T>& a) {
  return a * c;
}
template <class T>
Dual<T> operator/(const Dual<T>& a, double c) {
  Dual<T> r;
  r.v = a.v / c;
  r.d.resize(a.d.size());
  for (std::size_t i = 0; i < a.d.size(); ++i) r.d[i] = a.d[i] / c;
  return r;
}
template <class T>
Dual<T> operator/(double c, const Dual<T>& a) {
  return Dual<T>(c) / a;
}

template <class T>
Dual<T>& operator+=(Dual<T>& a, const Dual<T>& b) {
  a = a + b;
  return a;
}
template <class T>
Dual<T>& operator-=(Dual<T>& a, const Dual<T>& b) {
  a = a - b;
  return a;
}
template <class T>
Dual<T>& operator*=(Dual<T>& a, const Dual<T>& b) {
  a = a * b;
  return a;
}

template <class T>
Dual<T> sin(const Dual<T>& a) {
  using std::cos;
  using std::sin;
  Dual<T> r;
  r.v = sin(a.v);
  if (!a.d.empty()) {
    T c = cos(a.v);
    r.d.resize(a.d.size());
    for (std::size_t i = 0; i < a.d.size(); ++i) r.d[i] = c * a.d[i];
  }
  return r;
}

template <class T>
Dual<T> cos(const Dual<T>& a) {
  using std::cos;
  using std::sin;
  Dual<T> r;
  r.v = cos(a.v);
  if (!a.d.empty()) {
    T ms = -sin(a.v);
    r.d.resize(a.d.size());
    for (std::size_t i = 0; i < a.d.size(); ++i) r.d[i] = ms * a.d[i];
  }
  return r;
}

// x^e for integer e >= 1 by plain repeated multiplication.  Every scalar
// level runs the identical sequence of operations, which keeps the value
// slot of a jet evaluation bit-identical to a double evaluation.
template <class S>
S pow_int_positive(const S& base, int e) {
  assert(e >= 1);
  S r = base;
  for (int k = 1; k < e; ++k) r = r * base;
  return r;
}

}  // namespace gengeo
