#pragma once

// Truncated multivariate Taylor jets over the phase coordinates (x, y).
//
// A Jet3 carries the value of a scalar quantity together with
//   d_x[i]        d/dx^i                      (order >= 1)
//   d_y[i]        d/dy^i                      (order >= 1)
//   d_yy[i][j]    d^2/dy^i dy^j               (order >= 2)
//   d_xy[i][j]    d^2/dy^i dx^j, row = y      (order >= 2)
//   d_yyy[i][j][k] d^3/dy^i dy^j dy^k         (order >= 3)
//
// Nothing of order two or higher in x is tracked: none of the geometric
// objects built on top need it. Blocks above the jet's order are kept at zero.
//
// Symmetric blocks are always computed on their canonical index ordering and
// mirrored, so mirrored entries are bit-identical.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "lagmech/numkernel/dual.hpp"

namespace lagmech::numkernel {

template <class T>
class Jet3 {
 public:
  Jet3() = default;

  Jet3(std::size_t n, int order) : n_(n), order_(order), c_(storage_size(n), T{}) {
    if (order < 0 || order > 3) throw std::invalid_argument("Jet3: order must be in [0, 3]");
  }

  static Jet3 constant(const T& c, std::size_t n, int order) {
    Jet3 j(n, order);
    j.value() = c;
    return j;
  }

  // Independent coordinate x^i (resp. y^i) with value v.
  static Jet3 seed_x(const T& v, std::size_t i, std::size_t n, int order) {
    Jet3 j = constant(v, n, order);
    if (order >= 1) j.dx(i) = T(1.0);
    return j;
  }
  static Jet3 seed_y(const T& v, std::size_t i, std::size_t n, int order) {
    Jet3 j = constant(v, n, order);
    if (order >= 1) j.dy(i) = T(1.0);
    return j;
  }

  // A constant with the same shape as `like`.
  static Jet3 constant_like(const T& c, const Jet3& like) { return constant(c, like.n_, like.order_); }

  std::size_t dim() const noexcept { return n_; }
  int order() const noexcept { return order_; }

  const T& value() const { return c_[0]; }
  T& value() { return c_[0]; }

  const T& dx(std::size_t i) const { return c_[1 + i]; }
  T& dx(std::size_t i) { return c_[1 + i]; }
  const T& dy(std::size_t i) const { return c_[1 + n_ + i]; }
  T& dy(std::size_t i) { return c_[1 + n_ + i]; }
  const T& dyy(std::size_t i, std::size_t j) const { return c_[off_yy() + i * n_ + j]; }
  T& dyy(std::size_t i, std::size_t j) { return c_[off_yy() + i * n_ + j]; }
  const T& dxy(std::size_t i, std::size_t j) const { return c_[off_xy() + i * n_ + j]; }
  T& dxy(std::size_t i, std::size_t j) { return c_[off_xy() + i * n_ + j]; }
  const T& dyyy(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[off_yyy() + (i * n_ + j) * n_ + k];
  }
  T& dyyy(std::size_t i, std::size_t j, std::size_t k) { return c_[off_yyy() + (i * n_ + j) * n_ + k]; }

  // Raw coefficient storage: value, d_x, d_y, d_yy, d_xy, d_yyy.
  const std::vector<T>& coefficients() const noexcept { return c_; }

  // Assign the same value to every index permutation of (i, j, k).
  void set_dyyy_symmetric(std::size_t i, std::size_t j, std::size_t k, const T& v) {
    dyyy(i, j, k) = v;
    dyyy(i, k, j) = v;
    dyyy(j, i, k) = v;
    dyyy(j, k, i) = v;
    dyyy(k, i, j) = v;
    dyyy(k, j, i) = v;
  }

  Jet3& operator+=(const Jet3& o) {
    check_shape(o);
    for (std::size_t a = 0; a < c_.size(); ++a) c_[a] += o.c_[a];
    return *this;
  }
  Jet3& operator-=(const Jet3& o) {
    check_shape(o);
    for (std::size_t a = 0; a < c_.size(); ++a) c_[a] -= o.c_[a];
    return *this;
  }
  Jet3& operator*=(double s) {
    for (auto& v : c_) v = v * s;
    return *this;
  }
  Jet3& operator/=(double s) {
    for (auto& v : c_) v = v / s;
    return *this;
  }

  void check_shape(const Jet3& o) const {
    if (n_ != o.n_ || order_ != o.order_) throw std::logic_error("Jet3: shape mismatch");
  }

 private:
  static std::size_t storage_size(std::size_t n) { return 1 + 2 * n + 2 * n * n + n * n * n; }
  std::size_t off_yy() const { return 1 + 2 * n_; }
  std::size_t off_xy() const { return 1 + 2 * n_ + n_ * n_; }
  std::size_t off_yyy() const { return 1 + 2 * n_ + 2 * n_ * n_; }

  std::size_t n_{0};
  int order_{0};
  std::vector<T> c_;
};

// ---------------------------------------------------------------------------
// Arithmetic

template <class T>
Jet3<T> operator-(Jet3<T> a) {
  a *= -1.0;
  return a;
}
template <class T>
Jet3<T> operator+(Jet3<T> a, const Jet3<T>& b) {
  return a += b;
}
template <class T>
Jet3<T> operator-(Jet3<T> a, const Jet3<T>& b) {
  return a -= b;
}
template <class T>
Jet3<T> operator+(Jet3<T> a, double c) {
  a.value() = a.value() + c;
  return a;
}
template <class T>
Jet3<T> operator+(double c, Jet3<T> a) {
  a.value() = c + a.value();
  return a;
}
template <class T>
Jet3<T> operator-(Jet3<T> a, double c) {
  a.value() = a.value() - c;
  return a;
}
template <class T>
Jet3<T> operator-(double c, const Jet3<T>& a) {
  Jet3<T> r = -a;
  r.value() = c - a.value();
  return r;
}
template <class T>
Jet3<T> operator*(Jet3<T> a, double c) {
  return a *= c;
}
template <class T>
Jet3<T> operator*(double c, Jet3<T> a) {
  return a *= c;
}

// Leibniz rule on every tracked block.
template <class T>
Jet3<T> operator*(const Jet3<T>& f, const Jet3<T>& g) {
  f.check_shape(g);
  const std::size_t n = f.dim();
  const int order = f.order();
  Jet3<T> h(n, order);
  const T& f0 = f.value();
  const T& g0 = g.value();
  h.value() = f0 * g0;
  if (order >= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      h.dx(i) = f0 * g.dx(i) + f.dx(i) * g0;
      h.dy(i) = f0 * g.dy(i) + f.dy(i) * g0;
    }
  }
  if (order >= 2) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        const T v = f0 * g.dyy(i, j) + f.dy(i) * g.dy(j) + f.dy(j) * g.dy(i) + f.dyy(i, j) * g0;
        h.dyy(i, j) = v;
        h.dyy(j, i) = v;
      }
      for (std::size_t j = 0; j < n; ++j) {
        h.dxy(i, j) = f0 * g.dxy(i, j) + f.dy(i) * g.dx(j) + f.dx(j) * g.dy(i) + f.dxy(i, j) * g0;
      }
    }
  }
  if (order >= 3) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        for (std::size_t k = j; k < n; ++k) {
          const T v = f0 * g.dyyy(i, j, k) + f.dy(i) * g.dyy(j, k) + f.dy(j) * g.dyy(i, k) +
                      f.dy(k) * g.dyy(i, j) + f.dyy(i, j) * g.dy(k) + f.dyy(i, k) * g.dy(j) +
                      f.dyy(j, k) * g.dy(i) + f.dyyy(i, j, k) * g0;
          h.set_dyyy_symmetric(i, j, k, v);
        }
      }
    }
  }
  return h;
}

namespace detail {

// Solve f = h * g for the blocks of h, given h0 = f0 / g0 already in place.
template <class T>
void finish_quotient(Jet3<T>& h, const Jet3<T>& f, const Jet3<T>& g) {
  const std::size_t n = h.dim();
  const int order = h.order();
  const T& g0 = g.value();
  const T& h0 = h.value();
  if (order >= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      h.dx(i) = (f.dx(i) - h0 * g.dx(i)) / g0;
      h.dy(i) = (f.dy(i) - h0 * g.dy(i)) / g0;
    }
  }
  if (order >= 2) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        const T v =
            (f.dyy(i, j) - h0 * g.dyy(i, j) - h.dy(i) * g.dy(j) - h.dy(j) * g.dy(i)) / g0;
        h.dyy(i, j) = v;
        h.dyy(j, i) = v;
      }
      for (std::size_t j = 0; j < n; ++j) {
        h.dxy(i, j) =
            (f.dxy(i, j) - h0 * g.dxy(i, j) - h.dy(i) * g.dx(j) - h.dx(j) * g.dy(i)) / g0;
      }
    }
  }
  if (order >= 3) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        for (std::size_t k = j; k < n; ++k) {
          const T rest = h0 * g.dyyy(i, j, k) + h.dy(i) * g.dyy(j, k) + h.dy(j) * g.dyy(i, k) +
                         h.dy(k) * g.dyy(i, j) + h.dyy(i, j) * g.dy(k) + h.dyy(i, k) * g.dy(j) +
                         h.dyy(j, k) * g.dy(i);
          h.set_dyyy_symmetric(i, j, k, (f.dyyy(i, j, k) - rest) / g0);
        }
      }
    }
  }
}

}  // namespace detail

template <class T>
Jet3<T> operator/(const Jet3<T>& f, const Jet3<T>& g) {
  f.check_shape(g);
  Jet3<T> h(f.dim(), f.order());
  h.value() = f.value() / g.value();
  detail::finish_quotient(h, f, g);
  return h;
}

template <class T>
Jet3<T> operator/(Jet3<T> a, double c) {
  // Divide rather than multiply by 1/c so the value slot matches plain arithmetic.
  return a /= c;
}

template <class T>
Jet3<T> operator/(double c, const Jet3<T>& g) {
  Jet3<T> f = Jet3<T>::constant_like(T(c), g);
  Jet3<T> h(g.dim(), g.order());
  h.value() = c / g.value();
  detail::finish_quotient(h, f, g);
  return h;
}

// ---------------------------------------------------------------------------
// Composition with a univariate function given its derivatives at u0.

template <class T>
Jet3<T> compose(const Jet3<T>& u, const std::array<T, 4>& phi) {
  const std::size_t n = u.dim();
  const int order = u.order();
  Jet3<T> h(n, order);
  h.value() = phi[0];
  if (order >= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      h.dx(i) = phi[1] * u.dx(i);
      h.dy(i) = phi[1] * u.dy(i);
    }
  }
  if (order >= 2) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        const T v = phi[1] * u.dyy(i, j) + phi[2] * (u.dy(i) * u.dy(j));
        h.dyy(i, j) = v;
        h.dyy(j, i) = v;
      }
      for (std::size_t j = 0; j < n; ++j) {
        h.dxy(i, j) = phi[1] * u.dxy(i, j) + phi[2] * (u.dy(i) * u.dx(j));
      }
    }
  }
  if (order >= 3) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        for (std::size_t k = j; k < n; ++k) {
          const T v = phi[1] * u.dyyy(i, j, k) +
                      phi[2] * (u.dyy(i, j) * u.dy(k) + u.dyy(i, k) * u.dy(j) + u.dyy(j, k) * u.dy(i)) +
                      phi[3] * (u.dy(i) * u.dy(j) * u.dy(k));
          h.set_dyyy_symmetric(i, j, k, v);
        }
      }
    }
  }
  return h;
}

namespace detail {

template <class T>
std::array<T, 4> sin_derivatives(const T& u) {
  using std::cos;
  using std::sin;
  const T s = sin(u);
  const T c = cos(u);
  return {s, c, -s, -c};
}
template <class T>
std::array<T, 4> cos_derivatives(const T& u) {
  using std::cos;
  using std::sin;
  const T s = sin(u);
  const T c = cos(u);
  return {c, -s, -c, s};
}
template <class T>
std::array<T, 4> tan_derivatives(const T& u) {
  using std::tan;
  const T t = tan(u);
  const T t2 = t * t;
  const T sec2 = 1.0 + t2;
  return {t, sec2, 2.0 * t * sec2, sec2 * (2.0 + 6.0 * t2)};
}
template <class T>
std::array<T, 4> exp_derivatives(const T& u) {
  using std::exp;
  const T e = exp(u);
  return {e, e, e, e};
}
template <class T>
std::array<T, 4> log_derivatives(const T& u) {
  using std::log;
  const T r = 1.0 / u;
  return {log(u), r, -(r * r), 2.0 * (r * r * r)};
}
template <class T>
std::array<T, 4> sqrt_derivatives(const T& u) {
  using std::sqrt;
  const T s = sqrt(u);
  return {s, 0.5 / s, -0.25 / (s * u), 0.375 / (s * u * u)};
}
template <class T>
std::array<T, 4> pow_derivatives(const T& u, double p) {
  using std::pow;
  return {pow(u, p), p * pow(u, p - 1.0), (p * (p - 1.0)) * pow(u, p - 2.0),
          (p * (p - 1.0) * (p - 2.0)) * pow(u, p - 3.0)};
}

}  // namespace detail

template <class T>
Jet3<T> sin(const Jet3<T>& u) {
  return compose(u, detail::sin_derivatives(u.value()));
}
template <class T>
Jet3<T> cos(const Jet3<T>& u) {
  return compose(u, detail::cos_derivatives(u.value()));
}
template <class T>
Jet3<T> tan(const Jet3<T>& u) {
  return compose(u, detail::tan_derivatives(u.value()));
}
template <class T>
Jet3<T> exp(const Jet3<T>& u) {
  return compose(u, detail::exp_derivatives(u.value()));
}
template <class T>
Jet3<T> log(const Jet3<T>& u) {
  return compose(u, detail::log_derivatives(u.value()));
}
template <class T>
Jet3<T> sqrt(const Jet3<T>& u) {
  return compose(u, detail::sqrt_derivatives(u.value()));
}
template <class T>
Jet3<T> pow(const Jet3<T>& u, double p) {
  return compose(u, detail::pow_derivatives(u.value(), p));
}

}  // namespace lagmech::numkernel
