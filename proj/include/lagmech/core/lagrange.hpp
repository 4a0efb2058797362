#pragma once

// Pointwise geometry of a Lagrange space (M, L): metric, energy, Cartan
// forms, canonical semispray and connection, Cartan tensor, and the
// dynamical derivative of the metric.
//
// Tangent vectors on TM are flat sequences of length 2n in the natural basis:
// entries [0, n) are dx-components, [n, 2n) are dy-components.

#include <cstddef>
#include <span>
#include <vector>

#include "lagmech/numkernel/diff.hpp"
#include "lagmech/numkernel/linalg.hpp"

namespace lagmech::core {

using numkernel::Cube;
using numkernel::Jet3;
using numkernel::Matrix;
using numkernel::PhasePoint;
using numkernel::ScalarField;
using numkernel::SymMatrix;

// Jet of L together with g = Hess_y(L)/2 and its inverse, all over T.
template <class T>
struct LocalFrame {
  Jet3<T> jet;
  SymMatrix<T> metric;
};

template <class T>
LocalFrame<T> local_frame(const ScalarField& L, std::span<const T> x, std::span<const T> y,
                          int order = 2) {
  const std::size_t n = x.size();
  LocalFrame<T> f{numkernel::seeded_jet<T>(L, x, y, order), {}};
  Matrix<T> g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = 0.5 * f.jet.dyy(i, j);
  f.metric = numkernel::sym_invert(g);
  return f;
}

// G̊^i = 1/4 g^{ik} (d^2L/dy^k dx^h y^h - dL/dx^k), given an order >= 2 frame.
template <class T>
std::vector<T> canonical_spray_from(const LocalFrame<T>& f, std::span<const T> y) {
  const std::size_t n = y.size();
  std::vector<T> rhs(n);
  for (std::size_t k = 0; k < n; ++k) {
    T acc = -f.jet.dx(k);
    for (std::size_t h = 0; h < n; ++h) acc = acc + f.jet.dxy(k, h) * y[h];
    rhs[k] = acc;
  }
  std::vector<T> spray = f.metric.inverse * rhs;
  for (auto& s : spray) s = 0.25 * s;
  return spray;
}

template <class T>
std::vector<T> canonical_spray(const ScalarField& L, std::span<const T> x, std::span<const T> y) {
  return canonical_spray_from(local_frame<T>(L, x, y), y);
}

// Row-major entries of g_ij.
template <class T>
std::vector<T> metric_entries(const ScalarField& L, std::span<const T> x, std::span<const T> y) {
  const auto j = numkernel::seeded_jet<T>(L, x, y, 2);
  const std::size_t n = x.size();
  std::vector<T> out(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) out[a * n + b] = 0.5 * j.dyy(a, b);
  return out;
}

// dL/dy^i.
template <class T>
std::vector<T> lagrangian_gradient_y(const ScalarField& L, std::span<const T> x, std::span<const T> y) {
  const auto j = numkernel::seeded_jet<T>(L, x, y, 1);
  std::vector<T> out;
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(j.dy(i));
  return out;
}

// E = y^i dL/dy^i - L.
template <class T>
T energy(const ScalarField& L, std::span<const T> x, std::span<const T> y) {
  const auto j = numkernel::seeded_jet<T>(L, x, y, 1);
  T e = -j.value();
  for (std::size_t i = 0; i < x.size(); ++i) e = e + y[i] * j.dy(i);
  return e;
}

// dF/dy^i of a one-output pipeline.
template <class Pipeline>
std::vector<double> gradient_y(Pipeline&& pipeline, const PhasePoint& p) {
  const std::size_t n = p.dim();
  std::vector<double> out(n);
  std::vector<double> e(n);
  for (std::size_t i = 0; i < n; ++i) {
    e.assign(n, 0.0);
    e[i] = 1.0;
    out[i] = numkernel::push_direction(pipeline, p, std::span<const double>(e))[0];
  }
  return out;
}

struct Energy {
  double E = 0.0;
  std::vector<double> dE;  // (dE/dx^i, dE/dy^i)
};

struct LagrangeGeometry {
  Jet3<double> jet;  // order 3
  SymMatrix<double> g;
  double E = 0.0;
  std::vector<double> dE;
  std::vector<double> theta;   // dL/dy^i
  std::vector<double> spray0;  // G̊^i
  Matrix<double> conn0;        // N̊^i_j, row i
  Cube<double> cartan;         // C_ijk
};

SymMatrix<double> metric_at(const ScalarField& L, const PhasePoint& p);
Energy energy_at(const ScalarField& L, const PhasePoint& p);
std::vector<double> canonical_spray_at(const ScalarField& L, const PhasePoint& p);
Matrix<double> canonical_connection_at(const ScalarField& L, const PhasePoint& p);
Cube<double> cartan_tensor_at(const ScalarField& L, const PhasePoint& p);
LagrangeGeometry geometry_at(const ScalarField& L, const PhasePoint& p);

// omega_L(X, Y) from the coordinate expression of the Cartan 2-form, with
// (a^b)(X, Y) = a(X) b(Y) - a(Y) b(X).
double two_form_eval(const Jet3<double>& jet, std::span<const double> X, std::span<const double> Y);
double two_form_eval(const ScalarField& L, const PhasePoint& p, std::span<const double> X,
                     std::span<const double> Y);

// 2 g_ij δy^j ^ dx^i in the frame adapted to `conn` (δy^j = dy^j + N^j_k dx^k).
double adapted_two_form_eval(const Matrix<double>& g, const Matrix<double>& conn, std::span<const double> X,
                             std::span<const double> Y);

// Horizontal basis vector δ/δx^i = d/dx^i - N^j_i d/dy^j.
std::vector<double> horizontal_basis(const Matrix<double>& conn, std::size_t i);
// Natural basis vector k of T(TM), k < 2n.
std::vector<double> natural_basis(std::size_t n, std::size_t k);

// max_B |omega_L(S̊, B) + dE(B)| over the natural basis.
double spray_equation_residual(const ScalarField& L, const PhasePoint& p);

// S(g_ij) - g_im N^m_j - g_mj N^m_i for the semispray with coefficients
// `spray` (S = y^k d/dx^k - 2 G^k d/dy^k) and connection `conn`.
Matrix<double> dyn_cov_deriv_g(const ScalarField& L, const PhasePoint& p, std::span<const double> spray,
                               const Matrix<double>& conn);

// d g_ij / d x^k, entry (i, j, k).
Cube<double> metric_partials_x(const ScalarField& L, const PhasePoint& p);

// max_{i<j} |omega_L(δ_i, δ_j)| for the horizontal basis of `conn`.
double horizontal_isotropy_defect(const Jet3<double>& jet, const Matrix<double>& conn);

}  // namespace lagmech::core
