#include "lagmech/core/lagrange.hpp"

#include <algorithm>
#include <cmath>

namespace lagmech::core {

namespace {

std::span<const double> xs(const PhasePoint& p) { return p.x; }
std::span<const double> ys(const PhasePoint& p) { return p.y; }

}  // namespace

SymMatrix<double> metric_at(const ScalarField& L, const PhasePoint& p) {
  return local_frame<double>(L, xs(p), ys(p)).metric;
}

Energy energy_at(const ScalarField& L, const PhasePoint& p) {
  const std::size_t n = p.dim();
  auto pipeline = [&L]<class T>(std::span<const T> x, std::span<const T> y) {
    return std::vector<T>{energy<T>(L, x, y)};
  };
  Energy out;
  out.E = energy<double>(L, xs(p), ys(p));
  out.dE.resize(2 * n);
  for (std::size_t k = 0; k < 2 * n; ++k) {
    const auto b = natural_basis(n, k);
    const std::span<const double> bs(b);
    out.dE[k] = numkernel::push_direction(pipeline, p, bs.first(n), bs.subspan(n))[0];
  }
  return out;
}

std::vector<double> canonical_spray_at(const ScalarField& L, const PhasePoint& p) {
  return canonical_spray<double>(L, xs(p), ys(p));
}

Matrix<double> canonical_connection_at(const ScalarField& L, const PhasePoint& p) {
  auto pipeline = [&L]<class T>(std::span<const T> x, std::span<const T> y) { return canonical_spray<T>(L, x, y); };
  return numkernel::jacobian_y(pipeline, p);
}

Cube<double> cartan_tensor_at(const ScalarField& L, const PhasePoint& p) {
  const std::size_t n = p.dim();
  const auto jet = numkernel::eval_jet(L, p, 3);
  Cube<double> c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) c(i, j, k) = 0.25 * jet.dyyy(i, j, k);
  return c;
}

LagrangeGeometry geometry_at(const ScalarField& L, const PhasePoint& p) {
  const std::size_t n = p.dim();
  LagrangeGeometry geo;
  auto frame = local_frame<double>(L, xs(p), ys(p), 3);
  geo.jet = frame.jet;
  geo.g = frame.metric;
  const Energy e = energy_at(L, p);
  geo.E = e.E;
  geo.dE = e.dE;
  for (std::size_t i = 0; i < n; ++i) geo.theta.push_back(geo.jet.dy(i));
  geo.spray0 = canonical_spray_from(frame, ys(p));
  geo.conn0 = canonical_connection_at(L, p);
  geo.cartan = Cube<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) geo.cartan(i, j, k) = 0.25 * geo.jet.dyyy(i, j, k);
  return geo;
}

double two_form_eval(const Jet3<double>& jet, std::span<const double> X, std::span<const double> Y) {
  const std::size_t n = jet.dim();
  const auto Xx = X.first(n), Xy = X.subspan(n), Yx = Y.first(n), Yy = Y.subspan(n);
  double acc = 0.0;
  // 2 g_ij dy^j ^ dx^i, with 2 g_ij = d^2L/dy^i dy^j
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) acc += jet.dyy(i, j) * (Xy[j] * Yx[i] - Yy[j] * Xx[i]);
  // 1/2 (A_ij - A_ji) dx^j ^ dx^i, A_ij = d^2L/dy^i dx^j
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      acc += 0.5 * (jet.dxy(i, j) - jet.dxy(j, i)) * (Xx[j] * Yx[i] - Yx[j] * Xx[i]);
  return acc;
}

double two_form_eval(const ScalarField& L, const PhasePoint& p, std::span<const double> X,
                     std::span<const double> Y) {
  return two_form_eval(numkernel::eval_jet(L, p, 2), X, Y);
}

double adapted_two_form_eval(const Matrix<double>& g, const Matrix<double>& conn, std::span<const double> X,
                             std::span<const double> Y) {
  const std::size_t n = g.dim();
  const auto Xx = X.first(n), Xy = X.subspan(n), Yx = Y.first(n), Yy = Y.subspan(n);
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double dyX = Xy[j];
    double dyY = Yy[j];
    for (std::size_t k = 0; k < n; ++k) {
      dyX += conn(j, k) * Xx[k];
      dyY += conn(j, k) * Yx[k];
    }
    for (std::size_t i = 0; i < n; ++i) acc += 2.0 * g(i, j) * (dyX * Yx[i] - dyY * Xx[i]);
  }
  return acc;
}

std::vector<double> horizontal_basis(const Matrix<double>& conn, std::size_t i) {
  const std::size_t n = conn.dim();
  std::vector<double> v(2 * n, 0.0);
  v[i] = 1.0;
  for (std::size_t j = 0; j < n; ++j) v[n + j] = -conn(j, i);
  return v;
}

std::vector<double> natural_basis(std::size_t n, std::size_t k) {
  std::vector<double> v(2 * n, 0.0);
  v[k] = 1.0;
  return v;
}

double spray_equation_residual(const ScalarField& L, const PhasePoint& p) {
  const std::size_t n = p.dim();
  const auto jet = numkernel::eval_jet(L, p, 2);
  const auto spray = canonical_spray_at(L, p);
  const Energy e = energy_at(L, p);
  std::vector<double> S(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    S[i] = p.y[i];
    S[n + i] = -2.0 * spray[i];
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < 2 * n; ++k) {
    const auto b = natural_basis(n, k);
    worst = std::max(worst, std::abs(two_form_eval(jet, S, b) + e.dE[k]));
  }
  return worst;
}

Matrix<double> dyn_cov_deriv_g(const ScalarField& L, const PhasePoint& p, std::span<const double> spray,
                               const Matrix<double>& conn) {
  const std::size_t n = p.dim();
  auto pipeline = [&L]<class T>(std::span<const T> x, std::span<const T> y) { return metric_entries<T>(L, x, y); };
  std::vector<double> dir_y(n);
  for (std::size_t k = 0; k < n; ++k) dir_y[k] = -2.0 * spray[k];
  const auto Sg = numkernel::push_direction(pipeline, p, std::span<const double>(p.y), std::span<const double>(dir_y));
  const auto g = metric_at(L, p).entries;
  Matrix<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double v = Sg[i * n + j];
      for (std::size_t m = 0; m < n; ++m) v -= g(i, m) * conn(m, j) + g(m, j) * conn(m, i);
      out(i, j) = v;
    }
  return out;
}

Cube<double> metric_partials_x(const ScalarField& L, const PhasePoint& p) {
  const std::size_t n = p.dim();
  auto pipeline = [&L]<class T>(std::span<const T> x, std::span<const T> y) { return metric_entries<T>(L, x, y); };
  const auto parts = numkernel::partials_x(pipeline, p);
  Cube<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out(i, j, k) = parts[k][i * n + j];
  return out;
}

double horizontal_isotropy_defect(const Jet3<double>& jet, const Matrix<double>& conn) {
  const std::size_t n = conn.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      worst = std::max(worst, std::abs(two_form_eval(jet, horizontal_basis(conn, i), horizontal_basis(conn, j))));
  return worst;
}

}  // namespace lagmech::core
