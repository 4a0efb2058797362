#pragma once

// Small dense square matrices and cubes over an arbitrary coefficient type.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace lagmech::numkernel {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n, T{}) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1.0);
    return m;
  }

  std::size_t dim() const noexcept { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  // Row-major entries.
  const std::vector<T>& data() const noexcept { return a_; }
  std::vector<T>& data() noexcept { return a_; }

  Matrix transposed() const {
    Matrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

 private:
  std::size_t n_{0};
  std::vector<T> a_;
};

template <class T>
class Cube {
 public:
  Cube() = default;
  explicit Cube(std::size_t n) : n_(n), a_(n * n * n, T{}) {}

  std::size_t dim() const noexcept { return n_; }
  T& operator()(std::size_t i, std::size_t j, std::size_t k) { return a_[(i * n_ + j) * n_ + k]; }
  const T& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return a_[(i * n_ + j) * n_ + k];
  }
  const std::vector<T>& data() const noexcept { return a_; }

 private:
  std::size_t n_{0};
  std::vector<T> a_;
};

template <class T>
std::vector<T> operator*(const Matrix<T>& m, const std::vector<T>& v) {
  std::vector<T> out(m.dim(), T{});
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out[i] = out[i] + m(i, j) * v[j];
  return out;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  const std::size_t n = a.dim();
  Matrix<T> c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c(i, j) = c(i, j) + a(i, k) * b(k, j);
  return c;
}

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}
inline double max_abs(const Matrix<double>& m) { return max_abs(m.data()); }
inline double max_abs(const Cube<double>& c) { return max_abs(c.data()); }

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}
inline double max_abs_diff(const Matrix<double>& a, const Matrix<double>& b) {
  return max_abs_diff(a.data(), b.data());
}

}  // namespace lagmech::numkernel
