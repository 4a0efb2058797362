#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include "lagmech/error.hpp"
#include "lagmech/numkernel/matrix.hpp"
#include "lagmech/numkernel/scalar.hpp"

namespace lagmech::numkernel {

// Relative eigenvalue floor below which a metric counts as singular.
inline constexpr double kSingularityThreshold = 1e-10;

template <class T>
struct SymMatrix {
  Matrix<T> entries;
  Matrix<T> inverse;
  double min_abs_eigen_estimate = 0.0;
  double max_abs_eigen = 0.0;

  double condition() const { return max_abs_eigen / min_abs_eigen_estimate; }
};

struct EigenRange {
  double min_abs = 0.0;
  double max_abs = 0.0;
};

// Smallest and largest eigenvalue magnitudes of a symmetric matrix.
EigenRange symmetric_eigen_range(const Matrix<double>& m);

template <class T>
Matrix<double> value_part(const Matrix<T>& m) {
  Matrix<double> v(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) v(i, j) = scalar_value(m(i, j));
  return v;
}

// Inverse of a symmetric matrix by Gauss-Jordan elimination with partial
// pivoting. Generic in T so that dual layers propagate through the
// factorization itself.
template <class T>
SymMatrix<T> sym_invert(const Matrix<T>& m) {
  const std::size_t n = m.dim();
  const Matrix<double> mv = value_part(m);
  const double scale = max_abs(mv);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(mv(i, j) - mv(j, i)) > 1e-12 * scale)
        throw std::invalid_argument("sym_invert: matrix is not symmetric");

  SymMatrix<T> out;
  out.entries = Matrix<T>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.entries(i, j) = 0.5 * (m(i, j) + m(j, i));

  const EigenRange range = symmetric_eigen_range(value_part(out.entries));
  out.min_abs_eigen_estimate = range.min_abs;
  out.max_abs_eigen = range.max_abs;
  if (!(range.max_abs > 0.0) || range.min_abs < kSingularityThreshold * range.max_abs)
    throw SingularMetric(range.min_abs, range.max_abs);

  Matrix<T> a = out.entries;
  Matrix<T> inv = Matrix<T>::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(scalar_value(a(col, col)));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double cand = std::abs(scalar_value(a(r, col)));
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(col, j), a(pivot, j));
        std::swap(inv(col, j), inv(pivot, j));
      }
    }
    const T p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) = a(col, j) / p;
      inv(col, j) = inv(col, j) / p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const T factor = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) = a(r, j) - factor * a(col, j);
        inv(r, j) = inv(r, j) - factor * inv(col, j);
      }
    }
  }
  out.inverse = Matrix<T>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.inverse(i, j) = 0.5 * (inv(i, j) + inv(j, i));
  return out;
}

}  // namespace lagmech::numkernel
