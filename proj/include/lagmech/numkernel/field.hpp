#pragma once

// Scalar fields L(x, y) and vertical vector fields V^i(x, y) on the tangent
// bundle, evaluatable over every element of the numeric tower.
//
// The tower is closed (see scalar.hpp), so each field exposes one virtual
// `eval` overload per tower type. Implementations derive from FieldImpl and
// provide a single member template `evaluate<T>(x, y)`.

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "lagmech/numkernel/scalar.hpp"

namespace lagmech::numkernel {

// A point u = (x, y) of the tangent bundle in an induced chart.
struct PhasePoint {
  std::vector<double> x;
  std::vector<double> y;

  std::size_t dim() const noexcept { return x.size(); }
};

template <class T>
using ScalarResult = T;
template <class T>
using VectorResult = std::vector<T>;

namespace detail {

template <template <class> class R, class T>
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual R<T> eval(std::span<const T> x, std::span<const T> y) const = 0;
};

template <template <class> class R, class L>
class FieldBase;

template <template <class> class R, class... Ts>
class FieldBase<R, TowerList<Ts...>> : public Evaluator<R, Ts>... {
 public:
  using Evaluator<R, Ts>::eval...;

  // Dimension n of the base manifold.
  virtual std::size_t dim() const = 0;
};

}  // namespace detail

using ScalarField = detail::FieldBase<ScalarResult, Tower>;
using VectorField = detail::FieldBase<VectorResult, Tower>;

namespace detail {

template <class Derived, template <class> class R, class Base, class L>
class Overrides;

template <class Derived, template <class> class R, class Base>
class Overrides<Derived, R, Base, TowerList<>> : public Base {
 public:
  using Base::eval;
};

template <class Derived, template <class> class R, class Base, class T, class... Rest>
class Overrides<Derived, R, Base, TowerList<T, Rest...>>
    : public Overrides<Derived, R, Base, TowerList<Rest...>> {
 public:
  using Overrides<Derived, R, Base, TowerList<Rest...>>::eval;
  R<T> eval(std::span<const T> x, std::span<const T> y) const override {
    return static_cast<const Derived&>(*this).template evaluate<T>(x, y);
  }
};

}  // namespace detail

// CRTP helper: Derived supplies `template <class T> R<T> evaluate(x, y) const`.
template <class Derived>
using ScalarFieldImpl = detail::Overrides<Derived, ScalarResult, ScalarField, Tower>;
template <class Derived>
using VectorFieldImpl = detail::Overrides<Derived, VectorResult, VectorField, Tower>;

// Scalar field backed by a generic callable f(x, y) -> T.
template <class F>
class LambdaScalarField final : public ScalarFieldImpl<LambdaScalarField<F>> {
 public:
  LambdaScalarField(std::size_t n, F f) : n_(n), f_(std::move(f)) {}
  std::size_t dim() const override { return n_; }

  template <class T>
  T evaluate(std::span<const T> x, std::span<const T> y) const {
    return f_(x, y);
  }

 private:
  std::size_t n_;
  F f_;
};

template <class F>
class LambdaVectorField final : public VectorFieldImpl<LambdaVectorField<F>> {
 public:
  LambdaVectorField(std::size_t n, F f) : n_(n), f_(std::move(f)) {}
  std::size_t dim() const override { return n_; }

  template <class T>
  std::vector<T> evaluate(std::span<const T> x, std::span<const T> y) const {
    return f_(x, y);
  }

 private:
  std::size_t n_;
  F f_;
};

template <class F>
std::shared_ptr<const ScalarField> make_scalar_field(std::size_t n, F f) {
  return std::make_shared<LambdaScalarField<F>>(n, std::move(f));
}
template <class F>
std::shared_ptr<const VectorField> make_vector_field(std::size_t n, F f) {
  return std::make_shared<LambdaVectorField<F>>(n, std::move(f));
}

// V = 0.
std::shared_ptr<const VectorField> zero_vector_field(std::size_t n);

}  // namespace lagmech::numkernel
