#pragma once

// Derivative suppliers: exact jets of a scalar field, directional derivatives
// of arbitrary pipelines, and a central-difference oracle for tests.

#include <cstddef>
#include <span>
#include <vector>

#include "lagmech/error.hpp"
#include "lagmech/numkernel/field.hpp"
#include "lagmech/numkernel/matrix.hpp"

namespace lagmech::numkernel {

// Evaluate f over Jet3<T> with x and y seeded as independent coordinates.
template <class T>
Jet3<T> seeded_jet(const ScalarField& f, std::span<const T> x, std::span<const T> y, int order) {
  const std::size_t n = x.size();
  std::vector<Jet3<T>> xs;
  std::vector<Jet3<T>> ys;
  xs.reserve(n);
  ys.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back(Jet3<T>::seed_x(x[i], i, n, order));
    ys.push_back(Jet3<T>::seed_y(y[i], i, n, order));
  }
  Jet3<T> out = f.eval(std::span<const Jet3<T>>(xs), std::span<const Jet3<T>>(ys));
  if (!all_finite(out)) throw DomainError("field evaluation produced a non-finite jet");
  return out;
}

// Jets of a vector field; component i carries the derivatives of V^i.
template <class T>
std::vector<Jet3<T>> seeded_jets(const VectorField& v, std::span<const T> x, std::span<const T> y,
                                 int order) {
  const std::size_t n = x.size();
  std::vector<Jet3<T>> xs;
  std::vector<Jet3<T>> ys;
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back(Jet3<T>::seed_x(x[i], i, n, order));
    ys.push_back(Jet3<T>::seed_y(y[i], i, n, order));
  }
  auto out = v.eval(std::span<const Jet3<T>>(xs), std::span<const Jet3<T>>(ys));
  for (const auto& c : out)
    if (!all_finite(c)) throw DomainError("force field evaluation produced a non-finite jet");
  return out;
}

// Value, first, second and third derivative blocks of f at p, up to `order`.
Jet3<double> eval_jet(const ScalarField& f, const PhasePoint& p, int order);

// Central-difference estimates of the same blocks as eval_jet, with step h.
// Function values are taken in quadruple precision so that third differences
// are truncation- rather than roundoff-limited; truncation error is O(h^2).
Jet3<double> fd_oracle(const ScalarField& f, const PhasePoint& p, int order, double h);

// Evaluate a pipeline (x, y) -> sequence of T in plain doubles.
template <class Pipeline>
std::vector<double> evaluate_pipeline(Pipeline&& pipeline, const PhasePoint& p) {
  return pipeline(std::span<const double>(p.x), std::span<const double>(p.y));
}

// Directional derivative of a pipeline along (dir_x, dir_y), obtained by
// running the whole pipeline once over dual numbers.
template <class Pipeline>
std::vector<double> push_direction(Pipeline&& pipeline, const PhasePoint& p,
                                   std::span<const double> dir_x, std::span<const double> dir_y) {
  const std::size_t n = p.dim();
  std::vector<DualD> xs(n);
  std::vector<DualD> ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = DualD(p.x[i], dir_x.empty() ? 0.0 : dir_x[i]);
    ys[i] = DualD(p.y[i], dir_y.empty() ? 0.0 : dir_y[i]);
  }
  const std::vector<DualD> out = pipeline(std::span<const DualD>(xs), std::span<const DualD>(ys));
  std::vector<double> tangent(out.size());
  for (std::size_t a = 0; a < out.size(); ++a) {
    if (!all_finite(out[a])) throw DomainError("pipeline produced a non-finite derivative");
    tangent[a] = out[a].d;
  }
  return tangent;
}

// y-directional derivative.
template <class Pipeline>
std::vector<double> push_direction(Pipeline&& pipeline, const PhasePoint& p,
                                   std::span<const double> dir_y) {
  return push_direction(pipeline, p, std::span<const double>{}, dir_y);
}

// Columns j = d(pipeline)/dy^j for an n-component pipeline.
template <class Pipeline>
Matrix<double> jacobian_y(Pipeline&& pipeline, const PhasePoint& p) {
  const std::size_t n = p.dim();
  Matrix<double> jac(n);
  std::vector<double> e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e.assign(n, 0.0);
    e[j] = 1.0;
    const auto col = push_direction(pipeline, p, std::span<const double>(e));
    for (std::size_t i = 0; i < n; ++i) jac(i, j) = col[i];
  }
  return jac;
}

// Partial derivatives d(pipeline)/dx^k, one push per k. Entry [k] has the
// same layout as the pipeline output.
template <class Pipeline>
std::vector<std::vector<double>> partials_x(Pipeline&& pipeline, const PhasePoint& p) {
  const std::size_t n = p.dim();
  std::vector<std::vector<double>> out;
  std::vector<double> e(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    e.assign(n, 0.0);
    e[k] = 1.0;
    out.push_back(push_direction(pipeline, p, std::span<const double>(e), std::span<const double>{}));
  }
  return out;
}

}  // namespace lagmech::numkernel
