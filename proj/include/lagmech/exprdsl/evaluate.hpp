#pragma once

// Generic evaluation of an Expr over any element of the numeric tower.
//
// State-free subtrees are folded in plain doubles and lifted, so the value
// slot of a jet evaluation is bit-identical to a double evaluation.

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <variant>

#include "lagmech/error.hpp"
#include "lagmech/exprdsl/expr.hpp"
#include "lagmech/numkernel/field.hpp"
#include "lagmech/numkernel/scalar.hpp"

namespace lagmech::exprdsl {

namespace detail {

using numkernel::Quad;

inline double real_pow(double a, double p) { return std::pow(a, p); }
inline Quad real_pow(const Quad& a, double p) { return boost::multiprecision::pow(a, Quad(p)); }
template <class T>
T real_pow(const T& a, double p) {
  using numkernel::pow;
  return pow(a, p);
}

template <class T>
T integer_power(const T& base, std::int64_t k) {
  // Exponentiation by squaring.
  std::uint64_t m = static_cast<std::uint64_t>(k < 0 ? -k : k);
  T result = numkernel::lift(1.0, base);
  T acc = base;
  bool first = true;
  while (m > 0) {
    if (m & 1U) {
      result = first ? acc : result * acc;
      first = false;
    }
    m >>= 1U;
    if (m > 0) acc = acc * acc;
  }
  if (k < 0) {
    if (numkernel::scalar_value(result) == 0.0) throw DomainError("zero raised to a negative power");
    return 1.0 / result;
  }
  return result;
}

inline bool as_integer(double p, std::int64_t& k) {
  if (!std::isfinite(p) || std::abs(p) > 1e9 || std::trunc(p) != p) return false;
  k = static_cast<std::int64_t>(p);
  return true;
}

template <class T>
T constant_power(const T& base, double p) {
  std::int64_t k = 0;
  if (as_integer(p, k)) {
    if (k == 0) return numkernel::lift(1.0, base);
    return integer_power(base, k);
  }
  const double b = numkernel::scalar_value(base);
  if (b < 0.0) throw DomainError("non-integer power of a negative number");
  if (b == 0.0 && p < 0.0) throw DomainError("zero raised to a negative power");
  return real_pow(base, p);
}

template <class T>
T checked_log(const T& a) {
  if (!(numkernel::scalar_value(a) > 0.0)) throw DomainError("log of a non-positive number");
  using std::log;
  using numkernel::log;
  return log(a);
}

template <class T>
T checked_sqrt(const T& a) {
  if (numkernel::scalar_value(a) < 0.0) throw DomainError("sqrt of a negative number");
  using std::sqrt;
  using numkernel::sqrt;
  return sqrt(a);
}

template <class T>
T checked_div(const T& a, const T& b) {
  if (numkernel::scalar_value(b) == 0.0) throw DomainError("division by zero");
  return a / b;
}

template <class T>
T general_power(const T& base, const T& exponent) {
  if (!(numkernel::scalar_value(base) > 0.0))
    throw DomainError("power with a variable exponent needs a positive base");
  using std::exp;
  using numkernel::exp;
  return exp(exponent * checked_log(base));
}

template <class T>
class Evaluation {
 public:
  Evaluation(std::span<const T> x, std::span<const T> y, const Params& params)
      : x_(x), y_(y), params_(params) {}

  T run(const Node& node) const {
    if (!node.depends_on_state) return numkernel::lift(fold(node), like());
    return std::visit([&](const auto& v) { return visit(v); }, node.v);
  }

  // Evaluation of a state-free subtree in doubles.
  double fold(const Node& node) const {
    Evaluation<double> plain({}, {}, params_);
    return plain.constant(node);
  }

  double constant(const Node& node) const {
    return std::visit([&](const auto& v) { return visit(v); }, node.v);
  }

 private:
  template <class U>
  friend class Evaluation;

  const T& like() const { return y_.empty() ? x_[0] : y_[0]; }

  T visit(const Literal& v) const { return numkernel::lift(v.value, like()); }

  T visit(const Variable& v) const { return v.is_x ? x_[v.index] : y_[v.index]; }

  T visit(const Parameter& v) const {
    const auto it = params_.find(v.name);
    if (it == params_.end()) throw UnboundParameter(v.name);
    return numkernel::lift(it->second, like());
  }

  T visit(const Negate& v) const { return -run(*v.operand); }

  T visit(const Binary& v) const {
    if (v.op == BinaryOp::Pow) return power(*v.lhs, *v.rhs);
    const T a = run(*v.lhs);
    const T b = run(*v.rhs);
    switch (v.op) {
      case BinaryOp::Add: return a + b;
      case BinaryOp::Sub: return a - b;
      case BinaryOp::Mul: return a * b;
      case BinaryOp::Div: return checked_div(a, b);
      case BinaryOp::Pow: break;
    }
    return a;
  }

  T visit(const Call& v) const {
    if (v.fn == Function::Pow) return power(*v.args[0], *v.args[1]);
    const T a = run(*v.args[0]);
    using std::cos;
    using std::exp;
    using std::sin;
    using std::tan;
    using numkernel::cos;
    using numkernel::exp;
    using numkernel::sin;
    using numkernel::tan;
    switch (v.fn) {
      case Function::Sqrt: return checked_sqrt(a);
      case Function::Sin: return sin(a);
      case Function::Cos: return cos(a);
      case Function::Tan: return tan(a);
      case Function::Exp: return exp(a);
      case Function::Log: return checked_log(a);
      case Function::Pow: break;
    }
    return a;
  }

  T power(const Node& base, const Node& exponent) const {
    if (!exponent.depends_on_state) return constant_power(run(base), fold(exponent));
    return general_power(run(base), run(exponent));
  }

  std::span<const T> x_;
  std::span<const T> y_;
  const Params& params_;
};

template <>
inline const double& Evaluation<double>::like() const {
  static const double zero = 0.0;
  return zero;
}

}  // namespace detail

// Evaluate e at (x, y) in the tower type T. Throws DomainError or
// UnboundParameter.
template <class T>
T evaluate(const Expr& e, std::span<const T> x, std::span<const T> y, const Params& params) {
  if (x.size() != e.dim() || y.size() != e.dim())
    throw IndexError("evaluation point dimension does not match expression dimension");
  if (!e.root().depends_on_state) {
    return numkernel::lift(detail::Evaluation<T>(x, y, params).fold(e.root()), x[0]);
  }
  return detail::Evaluation<T>(x, y, params).run(e.root());
}

inline double evaluate(const Expr& e, const numkernel::PhasePoint& p, const Params& params) {
  return evaluate<double>(e, std::span<const double>(p.x), std::span<const double>(p.y), params);
}

}  // namespace lagmech::exprdsl
