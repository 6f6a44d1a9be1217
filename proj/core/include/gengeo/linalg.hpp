#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "gengeo/expr.hpp"

namespace gengeo {

// Dense row-major matrix over any scalar the jet types support.  Deliberately
// minimal: the solvers below must run on nested jets, which rules out the
// usual double-only linear algebra packages.
template <class S>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<S> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, S(0.0)) {}

  S& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const S& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

template <class S>
Mat<S> identity_mat(int n) {
  Mat<S> m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = S(1.0);
  return m;
}

template <class S>
Mat<S> matmul(const Mat<S>& x, const Mat<S>& y) {
  if (x.cols != y.rows) throw DomainError("matmul shape mismatch");
  Mat<S> r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const S& xik = x.at(i, k);
      for (int j = 0; j < y.cols; ++j) r.at(i, j) += xik * y.at(k, j);
    }
  return r;
}

template <class S>
Mat<S> transpose(const Mat<S>& x) {
  Mat<S> r(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
  return r;
}

template <class S>
Mat<S> operator+(const Mat<S>& x, const Mat<S>& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw DomainError("matrix sum shape mismatch");
  Mat<S> r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] + y.a[i];
  return r;
}

template <class S>
Mat<S> operator-(const Mat<S>& x, const Mat<S>& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw DomainError("matrix difference shape mismatch");
  Mat<S> r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] - y.a[i];
  return r;
}

// LU factorization with partial pivoting on the value magnitude of the jet,
// so the pivot choice is identical at every derivative depth.
template <class S>
struct LUFactors {
  Mat<S> lu;
  std::vector<int> perm;
};

template <class S>
LUFactors<S> lu_factor(Mat<S> m) {
  if (m.rows != m.cols) throw DomainError("lu_factor needs a square matrix");
  const int n = m.rows;
  LUFactors<S> f{std::move(m), std::vector<int>(static_cast<std::size_t>(n))};
  for (int i = 0; i < n; ++i) f.perm[static_cast<std::size_t>(i)] = i;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(value_of(f.lu.at(k, k)));
    for (int r = k + 1; r < n; ++r) {
      double cand = std::abs(value_of(f.lu.at(r, k)));
      if (cand > best) {
        best = cand;
        piv = r;
      }
    }
    if (best == 0.0) throw DomainError("singular matrix in lu_factor");
    if (piv != k) {
      for (int c = 0; c < n; ++c) std::swap(f.lu.at(k, c), f.lu.at(piv, c));
      std::swap(f.perm[static_cast<std::size_t>(k)], f.perm[static_cast<std::size_t>(piv)]);
    }
    for (int r = k + 1; r < n; ++r) {
      S mult = f.lu.at(r, k) / f.lu.at(k, k);
      f.lu.at(r, k) = mult;
      for (int c = k + 1; c < n; ++c) f.lu.at(r, c) = f.lu.at(r, c) - mult * f.lu.at(k, c);
    }
  }
  return f;
}

// Solves A X = B for all columns of B.
template <class S>
Mat<S> lu_solve(const LUFactors<S>& f, const Mat<S>& b) {
  const int n = f.lu.rows;
  if (b.rows != n) throw DomainError("lu_solve shape mismatch");
  Mat<S> x(n, b.cols);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < b.cols; ++j) x.at(i, j) = b.at(f.perm[static_cast<std::size_t>(i)], j);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < i; ++k) {
      const S& l = f.lu.at(i, k);
      for (int j = 0; j < b.cols; ++j) x.at(i, j) = x.at(i, j) - l * x.at(k, j);
    }
  for (int i = n - 1; i >= 0; --i) {
    for (int k = i + 1; k < n; ++k) {
      const S& u = f.lu.at(i, k);
      for (int j = 0; j < b.cols; ++j) x.at(i, j) = x.at(i, j) - u * x.at(k, j);
    }
    for (int j = 0; j < b.cols; ++j) x.at(i, j) = x.at(i, j) / f.lu.at(i, i);
  }
  return x;
}

template <class S>
Mat<S> lu_solve(const Mat<S>& a, const Mat<S>& b) {
  return lu_solve(lu_factor(a), b);
}

// Least squares for tall systems E X = B via the normal equations, with one
// iterative refinement sweep to recover the accuracy the squared condition
// number costs.  E must have full column rank.
template <class S>
Mat<S> lstsq(const Mat<S>& e, const Mat<S>& b) {
  if (e.rows < e.cols) throw DomainError("lstsq expects rows >= cols");
  if (b.rows != e.rows) throw DomainError("lstsq shape mismatch");
  Mat<S> et = transpose(e);
  LUFactors<S> g = lu_factor(matmul(et, e));
  Mat<S> x = lu_solve(g, matmul(et, b));
  Mat<S> resid = b - matmul(e, x);
  Mat<S> dx = lu_solve(g, matmul(et, resid));
  return x + dx;
}

// Eigenvalues of a symmetric matrix by cyclic Jacobi sweeps.  Double only;
// used for rank and signature checks, never inside jet evaluations.
std::vector<double> sym_eigenvalues(Mat<double> m);

// Smallest singular value of a (possibly tall) matrix.
double min_singular_value(const Mat<double>& m);

double max_abs(const Mat<double>& m);

}  // namespace gengeo
