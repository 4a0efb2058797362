#include "lagmech/mechanics/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "lagmech/error.hpp"

namespace lagmech::mechanics {

namespace {

std::span<const double> xs(const PhasePoint& p) { return p.x; }
std::span<const double> ys(const PhasePoint& p) { return p.y; }

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  return numkernel::max_abs_diff(a, b);
}

// S(L) = y^k dL/dx^k - 2 G^k dL/dy^k for a spray pipeline G.
template <class T, class Spray>
T semispray_of_lagrangian(const MechanicalSystem& sys, std::span<const T> x, std::span<const T> y, Spray spray) {
  const auto jet = numkernel::seeded_jet<T>(sys.L(), x, y, 1);
  const auto G = spray(x, y);
  T acc = numkernel::lift(0.0, x[0]);
  for (std::size_t k = 0; k < x.size(); ++k) acc = acc + y[k] * jet.dx(k) - 2.0 * G[k] * jet.dy(k);
  return acc;
}

// The tangent vector (y, -2G) of a semispray with coefficients G.
void semispray_direction(const PhasePoint& p, const std::vector<double>& spray, std::vector<double>& dir_y) {
  dir_y.resize(p.dim());
  for (std::size_t k = 0; k < p.dim(); ++k) dir_y[k] = -2.0 * spray[k];
}

}  // namespace

void validate(const MechanicalSystem& sys) {
  if (!sys.lagrangian || !sys.force) throw ConfigError("system needs both a Lagrangian and a force field");
  if (sys.n == 0) throw ConfigError("system dimension must be positive");
  if (sys.L().dim() != sys.n)
    throw ConfigError("Lagrangian dimension " + std::to_string(sys.L().dim()) + " does not match n = " +
                      std::to_string(sys.n));
  if (sys.V().dim() != sys.n)
    throw ConfigError("force dimension " + std::to_string(sys.V().dim()) + " does not match n = " +
                      std::to_string(sys.n));
}

std::vector<double> sigma_at(const MechanicalSystem& sys, const PhasePoint& p) {
  core::metric_at(sys.L(), p);  // regularity gate
  return sigma<double>(sys, xs(p), ys(p));
}

std::vector<double> force_at(const MechanicalSystem& sys, const PhasePoint& p) {
  return force_values<double>(sys, xs(p), ys(p));
}

Matrix<double> force_jacobian_y(const MechanicalSystem& sys, const PhasePoint& p) {
  auto pipeline = [&sys]<class T>(std::span<const T> x, std::span<const T> y) { return force_values<T>(sys, x, y); };
  return numkernel::jacobian_y(pipeline, p);
}

std::vector<double> evolution_spray_at(const MechanicalSystem& sys, const PhasePoint& p) {
  return evolution_spray<double>(sys, xs(p), ys(p));
}

ConnectionRoutes evolution_connection_routes(const MechanicalSystem& sys, const PhasePoint& p) {
  auto pipeline = [&sys]<class T>(std::span<const T> x, std::span<const T> y) { return evolution_spray<T>(sys, x, y); };
  ConnectionRoutes r;
  r.conn = numkernel::jacobian_y(pipeline, p);
  const auto conn0 = core::canonical_connection_at(sys.L(), p);
  const auto dV = force_jacobian_y(sys, p);
  const std::size_t n = p.dim();
  r.from_parts = Matrix<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r.from_parts(i, j) = conn0(i, j) - 0.25 * dV(i, j);
  r.gap = numkernel::max_abs_diff(r.conn, r.from_parts);
  return r;
}

Matrix<double> evolution_connection_at(const MechanicalSystem& sys, const PhasePoint& p) {
  auto pipeline = [&sys]<class T>(std::span<const T> x, std::span<const T> y) { return evolution_spray<T>(sys, x, y); };
  return numkernel::jacobian_y(pipeline, p);
}

double evolution_equation_residual(const MechanicalSystem& sys, const PhasePoint& p) {
  const std::size_t n = p.dim();
  const auto jet = numkernel::eval_jet(sys.L(), p, 2);
  const auto spray = evolution_spray_at(sys, p);
  const auto sig = sigma_at(sys, p);
  const auto e = core::energy_at(sys.L(), p);
  std::vector<double> S(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    S[i] = p.y[i];
    S[n + i] = -2.0 * spray[i];
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < 2 * n; ++k) {
    const auto b = core::natural_basis(n, k);
    const double sigma_b = k < n ? sig[k] : 0.0;
    worst = std::max(worst, std::abs(core::two_form_eval(jet, S, b) + e.dE[k] - sigma_b));
  }
  return worst;
}

double dissipation_power(const MechanicalSystem& sys, const PhasePoint& p) {
  const auto sig = sigma_at(sys, p);
  double acc = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) acc += sig[i] * p.y[i];
  return acc;
}

double dissipation_power_via_metric(const MechanicalSystem& sys, const PhasePoint& p) {
  const auto g = core::metric_at(sys.L(), p).entries;
  const auto v = force_at(sys, p);
  double acc = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i)
    for (std::size_t j = 0; j < p.dim(); ++j) acc += g(i, j) * p.y[i] * v[j];
  return acc;
}

EvolutionBundle evolution_bundle_at(const MechanicalSystem& sys, const PhasePoint& p) {
  const std::size_t n = p.dim();
  EvolutionBundle b;
  b.sigma = sigma_at(sys, p);
  b.spray = evolution_spray_at(sys, p);
  b.conn = evolution_connection_at(sys, p);
  auto sigma_pipeline = [&sys]<class T>(std::span<const T> x, std::span<const T> y) { return sigma<T>(sys, x, y); };
  b.dsigma_dy = numkernel::jacobian_y(sigma_pipeline, p);
  b.helicoidal = Matrix<double>(n);
  b.gbar = Matrix<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      b.helicoidal(i, j) = 0.5 * (b.dsigma_dy(i, j) - b.dsigma_dy(j, i));
      b.gbar(i, j) = 0.25 * (b.dsigma_dy(i, j) + b.dsigma_dy(j, i));
    }
  for (std::size_t i = 0; i < n; ++i) b.power += b.sigma[i] * p.y[i];
  b.gbar_direct = core::dyn_cov_deriv_g(sys.L(), p, b.spray, b.conn);
  b.gbar_route_gap = numkernel::max_abs_diff(b.gbar, b.gbar_direct);
  return b;
}

SymplecticCheck symplectic_check(const MechanicalSystem& sys, const PhasePoint& p) {
  const std::size_t n = p.dim();
  const auto jet = numkernel::eval_jet(sys.L(), p, 2);
  const auto bundle = evolution_bundle_at(sys, p);
  SymplecticCheck c;
  c.omega_horizontal = Matrix<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double w = core::two_form_eval(jet, core::horizontal_basis(bundle.conn, i),
                                           core::horizontal_basis(bundle.conn, j));
      c.omega_horizontal(i, j) = w;
      if (i < j) c.defect = std::max(c.defect, std::abs(w));
      c.helicoidal_gap = std::max(c.helicoidal_gap, std::abs(w + bundle.helicoidal(i, j)));
    }
  return c;
}

double symplectic_defect(const MechanicalSystem& sys, const PhasePoint& p) { return symplectic_check(sys, p).defect; }

HorizontalRoutes horizontal_dL_routes(const MechanicalSystem& sys, const PhasePoint& p) {
  const std::size_t n = p.dim();
  const auto jet = numkernel::eval_jet(sys.L(), p, 1);
  const auto conn = evolution_connection_at(sys, p);
  HorizontalRoutes r;
  r.direct.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = jet.dx(i);
    for (std::size_t j = 0; j < n; ++j) v -= conn(j, i) * jet.dy(j);
    r.direct[i] = v;
  }
  auto sl = [&sys]<class T>(std::span<const T> x, std::span<const T> y) {
    return std::vector<T>{semispray_of_lagrangian<T>(
        sys, x, y, [&sys](std::span<const T> a, std::span<const T> b) { return evolution_spray<T>(sys, a, b); })};
  };
  const auto dsl = core::gradient_y(sl, p);
  const auto sig = sigma_at(sys, p);
  r.oracle.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.oracle[i] = 0.5 * (dsl[i] - sig[i]);
  r.gap = max_abs_diff(r.direct, r.oracle);
  return r;
}

std::vector<double> horizontal_dL(const MechanicalSystem& sys, const PhasePoint& p) {
  return horizontal_dL_routes(sys, p).direct;
}

HorizontalRoutes horizontal_dE_routes(const MechanicalSystem& sys, const PhasePoint& p) {
  const std::size_t n = p.dim();
  const auto e = core::energy_at(sys.L(), p);
  const auto conn = evolution_connection_at(sys, p);
  HorizontalRoutes r;
  r.direct.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = e.dE[i];
    for (std::size_t j = 0; j < n; ++j) v -= conn(j, i) * e.dE[n + j];
    r.direct[i] = v;
  }
  const auto g = core::metric_at(sys.L(), p).entries;
  const auto spray0 = core::canonical_spray_at(sys.L(), p);
  const auto conn0 = core::canonical_connection_at(sys.L(), p);
  const auto dV = force_jacobian_y(sys, p);
  std::vector<double> defect(n);  // 2G̊^j - N̊^j_k y^k
  for (std::size_t j = 0; j < n; ++j) {
    double v = 2.0 * spray0[j];
    for (std::size_t k = 0; k < n; ++k) v -= conn0(j, k) * p.y[k];
    defect[j] = v;
  }
  r.oracle.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double v = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      v += 2.0 * g(i, j) * defect[j];
      for (std::size_t k = 0; k < n; ++k) v += 0.5 * g(j, k) * dV(j, i) * p.y[k];
    }
    r.oracle[i] = v;
  }
  r.gap = max_abs_diff(r.direct, r.oracle);
  return r;
}

std::vector<double> horizontal_dE(const MechanicalSystem& sys, const PhasePoint& p) {
  return horizontal_dE_routes(sys, p).direct;
}

FirstIntegralResiduals first_integral_conditions(const MechanicalSystem& sys, const PhasePoint& p) {
  const std::size_t n = p.dim();
  const auto jet = numkernel::eval_jet(sys.L(), p, 1);
  const auto dV = force_jacobian_y(sys, p);
  auto sl0 = [&sys]<class T>(std::span<const T> x, std::span<const T> y) {
    return std::vector<T>{semispray_of_lagrangian<T>(
        sys, x, y, [&sys](std::span<const T> a, std::span<const T> b) { return core::canonical_spray<T>(sys.L(), a, b); })};
  };
  const double liouville_sl0 = numkernel::push_direction(sl0, p, std::span<const double>(p.y))[0];

  FirstIntegralResiduals r;
  double lhs = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) lhs += dV(k, i) * p.y[i] * jet.dy(k);
  r.lagrangian_condition_residual = lhs + 2.0 * liouville_sl0;

  const auto g = core::metric_at(sys.L(), p).entries;
  const auto spray0 = core::canonical_spray_at(sys.L(), p);
  const auto conn0 = core::canonical_connection_at(sys.L(), p);
  double force_term = 0.0;
  double spray_term = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) force_term += g(j, k) * dV(j, i) * p.y[k] * p.y[i];
      double d = 2.0 * spray0[j];
      for (std::size_t k = 0; k < n; ++k) d -= conn0(j, k) * p.y[k];
      spray_term += 4.0 * g(i, j) * d * p.y[i];
    }
  r.energy_condition_residual = force_term + spray_term;
  return r;
}

std::vector<double> lagrange_equation_residual(const MechanicalSystem& sys, const PhasePoint& p) {
  const std::size_t n = p.dim();
  const auto spray = evolution_spray_at(sys, p);
  std::vector<double> dir_y;
  semispray_direction(p, spray, dir_y);
  auto theta = [&sys]<class T>(std::span<const T> x, std::span<const T> y) {
    return core::lagrangian_gradient_y<T>(sys.L(), x, y);
  };
  const auto s_theta = numkernel::push_direction(theta, p, std::span<const double>(p.y), std::span<const double>(dir_y));
  const auto jet = numkernel::eval_jet(sys.L(), p, 1);
  const auto sig = sigma_at(sys, p);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = s_theta[i] - jet.dx(i) - sig[i];
  return out;
}

double lie_theta_residual(const MechanicalSystem& sys, const PhasePoint& p) {
  const std::size_t n = p.dim();
  const auto spray = evolution_spray_at(sys, p);
  std::vector<double> dir_y;
  semispray_direction(p, spray, dir_y);
  auto theta = [&sys]<class T>(std::span<const T> x, std::span<const T> y) {
    return core::lagrangian_gradient_y<T>(sys.L(), x, y);
  };
  const auto s_theta = numkernel::push_direction(theta, p, std::span<const double>(p.y), std::span<const double>(dir_y));
  const auto jet = numkernel::eval_jet(sys.L(), p, 1);
  const auto sig = sigma_at(sys, p);
  double worst = 0.0;
  for (std::size_t k = 0; k < 2 * n; ++k) {
    const auto B = core::natural_basis(n, k);
    double s_theta_b = 0.0;    // S(θ(B)) = S(dL/dy^i) B^i_x
    double theta_bracket = 0.0;  // θ([S, B]) = -dL/dy^i B^i_y for constant B
    double dl = 0.0;
    double sig_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s_theta_b += s_theta[i] * B[i];
      theta_bracket -= jet.dy(i) * B[n + i];
      dl += jet.dx(i) * B[i] + jet.dy(i) * B[n + i];
      sig_b += sig[i] * B[i];
    }
    worst = std::max(worst, std::abs(s_theta_b - theta_bracket - dl - sig_b));
  }
  return worst;
}

}  // namespace lagmech::mechanics
