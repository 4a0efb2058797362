#pragma once

// Evolution structures of a mechanical system: σ, the evolution semispray
// and connection, the helicoidal tensor, the dynamical derivative of the
// metric, horizontal derivatives, and the residuals of the defining
// identities.

#include <span>
#include <vector>

#include "lagmech/core/lagrange.hpp"
#include "lagmech/mechanics/system.hpp"

namespace lagmech::mechanics {

using numkernel::Cube;
using numkernel::Matrix;

template <class T>
std::vector<T> force_values(const MechanicalSystem& sys, std::span<const T> x, std::span<const T> y) {
  auto v = sys.V().eval(x, y);
  for (const auto& c : v)
    if (!numkernel::all_finite(c)) throw DomainError("force field produced a non-finite value");
  return v;
}

// σ_i = g_ij V^j.
template <class T>
std::vector<T> sigma(const MechanicalSystem& sys, std::span<const T> x, std::span<const T> y) {
  const auto g = core::metric_entries<T>(sys.L(), x, y);
  const auto v = force_values<T>(sys, x, y);
  const std::size_t n = x.size();
  std::vector<T> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    T acc = numkernel::lift(0.0, x[0]);
    for (std::size_t j = 0; j < n; ++j) acc = acc + g[i * n + j] * v[j];
    out[i] = acc;
  }
  return out;
}

// G^i = G̊^i - V^i / 4.
template <class T>
std::vector<T> evolution_spray(const MechanicalSystem& sys, std::span<const T> x, std::span<const T> y) {
  auto spray = core::canonical_spray<T>(sys.L(), x, y);
  const auto v = force_values<T>(sys, x, y);
  for (std::size_t i = 0; i < spray.size(); ++i) spray[i] = spray[i] - 0.25 * v[i];
  return spray;
}

std::vector<double> sigma_at(const MechanicalSystem& sys, const PhasePoint& p);
std::vector<double> force_at(const MechanicalSystem& sys, const PhasePoint& p);
// dV^i/dy^j, row i.
Matrix<double> force_jacobian_y(const MechanicalSystem& sys, const PhasePoint& p);
std::vector<double> evolution_spray_at(const MechanicalSystem& sys, const PhasePoint& p);

struct ConnectionRoutes {
  Matrix<double> conn;        // y-Jacobian of the evolution spray
  Matrix<double> from_parts;  // N̊ - dV/dy / 4
  double gap = 0.0;
};
ConnectionRoutes evolution_connection_routes(const MechanicalSystem& sys, const PhasePoint& p);
Matrix<double> evolution_connection_at(const MechanicalSystem& sys, const PhasePoint& p);

// max_B |omega_L(S, B) + dE(B) - σ(B)|, σ extended by zero on vertical slots.
double evolution_equation_residual(const MechanicalSystem& sys, const PhasePoint& p);

// σ_i y^i.
double dissipation_power(const MechanicalSystem& sys, const PhasePoint& p);
// g_ij y^i V^j, the same quantity without passing through σ.
double dissipation_power_via_metric(const MechanicalSystem& sys, const PhasePoint& p);

struct EvolutionBundle {
  std::vector<double> sigma;
  std::vector<double> spray;
  Matrix<double> conn;
  Matrix<double> dsigma_dy;   // J_ij = dσ_i/dy^j
  Matrix<double> helicoidal;  // (J - J^T) / 2
  Matrix<double> gbar;        // (J + J^T) / 4
  double power = 0.0;
  // gbar against S(g_ij) - g_im N^m_j - g_mj N^m_i with the evolution pair.
  Matrix<double> gbar_direct;
  double gbar_route_gap = 0.0;
};
EvolutionBundle evolution_bundle_at(const MechanicalSystem& sys, const PhasePoint& p);

struct SymplecticCheck {
  double defect = 0.0;                // max_{i<j} |omega_L(δ_i, δ_j)|
  Matrix<double> omega_horizontal;    // omega_L(δ_i, δ_j)
  double helicoidal_gap = 0.0;        // vs -F_ij
};
SymplecticCheck symplectic_check(const MechanicalSystem& sys, const PhasePoint& p);
double symplectic_defect(const MechanicalSystem& sys, const PhasePoint& p);

struct HorizontalRoutes {
  std::vector<double> direct;  // δ/δx^i with the evolution connection
  std::vector<double> oracle;  // closed-form alternative
  double gap = 0.0;
};
// L_|i: direct δL/δx^i versus (d S(L)/dy^i - σ_i) / 2.
HorizontalRoutes horizontal_dL_routes(const MechanicalSystem& sys, const PhasePoint& p);
std::vector<double> horizontal_dL(const MechanicalSystem& sys, const PhasePoint& p);
// E_|i: direct δE/δx^i versus 2 g_ij (2G̊^j - N̊^j_k y^k) + g_jk (dV^j/dy^i) y^k / 2.
HorizontalRoutes horizontal_dE_routes(const MechanicalSystem& sys, const PhasePoint& p);
std::vector<double> horizontal_dE(const MechanicalSystem& sys, const PhasePoint& p);

struct FirstIntegralResiduals {
  // (dV^k/dy^i) y^i dL/dy^k + 2 C(S̊(L))
  double lagrangian_condition_residual = 0.0;
  // g_jk (dV^j/dy^i) y^k y^i + 4 g_ij (2G̊^j - N̊^j_k y^k) y^i
  double energy_condition_residual = 0.0;
};
FirstIntegralResiduals first_integral_conditions(const MechanicalSystem& sys, const PhasePoint& p);

// S(dL/dy^i) - dL/dx^i - σ_i: the forced Lagrange equations with the
// acceleration supplied by the evolution semispray.
std::vector<double> lagrange_equation_residual(const MechanicalSystem& sys, const PhasePoint& p);

// max_B |S(θ(B)) - θ([S, B]) - dL(B) - σ(B)| over constant natural basis B.
double lie_theta_residual(const MechanicalSystem& sys, const PhasePoint& p);

}  // namespace lagmech::mechanics
