#pragma once

// The numeric tower every field must be evaluatable over, plus helpers that
// peel a tower element down to its plain double value.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "lagmech/numkernel/dual.hpp"
#include "lagmech/numkernel/jet3.hpp"

namespace lagmech::numkernel {

// 113-bit significand; only used by the finite-difference oracle.
using Quad = boost::multiprecision::cpp_bin_float_quad;
using DualD = Dual<double>;

template <class... Ts>
struct TowerList {};

using Tower = TowerList<double, DualD, Jet3<double>, Jet3<DualD>, Quad>;

inline double scalar_value(double v) { return v; }
inline double scalar_value(const Quad& v) { return static_cast<double>(v); }
template <class T>
double scalar_value(const Dual<T>& v) {
  return scalar_value(v.v);
}
template <class T>
double scalar_value(const Jet3<T>& v) {
  return scalar_value(v.value());
}

// Constant with the shape of `like` (jets need dimension and order).
inline double lift(double c, double) { return c; }
inline Quad lift(double c, const Quad&) { return Quad(c); }
template <class T>
Dual<T> lift(double c, const Dual<T>&) {
  return Dual<T>(T(c));
}
template <class T>
Jet3<T> lift(double c, const Jet3<T>& like) {
  return Jet3<T>::constant_like(T(c), like);
}

inline bool all_finite(double v) { return std::isfinite(v); }
inline bool all_finite(const Quad& v) { return boost::multiprecision::isfinite(v); }
template <class T>
bool all_finite(const Dual<T>& v) {
  return all_finite(v.v) && all_finite(v.d);
}
template <class T>
bool all_finite(const Jet3<T>& v) {
  for (const auto& c : v.coefficients())
    if (!all_finite(c)) return false;
  return true;
}

}  // namespace lagmech::numkernel
