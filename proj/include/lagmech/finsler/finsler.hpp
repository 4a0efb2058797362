#pragma once

// Diagnostics for Lagrangians that are 2-homogeneous in y (L = F^2).

#include <cstddef>
#include <vector>

#include "lagmech/mechanics/classify.hpp"
#include "lagmech/mechanics/evolution.hpp"

namespace lagmech::finsler {

using mechanics::MechanicalSystem;
using mechanics::PointFailure;
using numkernel::Cube;
using numkernel::PhasePoint;

// Euler-test residuals, maximized over the samples.
struct HomogeneityReport {
  double lagrangian_residual = 0.0;  // |C(F^2) - 2 F^2|
  double metric_residual = 0.0;      // |(dg_ij/dy^k) y^k|
  double force_residual = 0.0;       // |(dV^i/dy^j) y^j|
  std::size_t points_tested = 0;
  // Every sample passed |C(F^2) - 2 F^2| <= 1e-8 (1 + |F^2|).
  bool finsler_mode = false;
};

HomogeneityReport homogeneity_report(const MechanicalSystem& sys, const std::vector<PhasePoint>& samples);

// Formal Christoffel symbols of the second kind of g(x, y), entry (i, j, k) = γ^i_jk.
Cube<double> christoffel_at(const MechanicalSystem& sys, const PhasePoint& p);

struct FinslerIdentities {
  double energy_residual = 0.0;          // |E - F^2| / |F^2|
  double spray_homogeneity = 0.0;        // |2G̊^i - N̊^i_k y^k|
  double christoffel_residual = 0.0;     // |γ^i_jk y^j y^k - 2G̊^i|
  double horizontal_energy_residual = 0.0;  // |F^2_|i - g_jk (dV^j/dy^i) y^k / 2|
  double horizontal_energy = 0.0;        // |F^2_|i|
  double geodesic_coincidence = 0.0;     // |N^i_j y^j - N̊^i_j y^j|
  std::size_t points_tested = 0;
  std::vector<PointFailure> failures;
};

FinslerIdentities finsler_identities(const MechanicalSystem& sys, const std::vector<PhasePoint>& samples);

// max_i |N^i_j y^j - N̊^i_j y^j| at p; zero for a zero-homogeneous force.
double geodesic_coincidence_defect(const MechanicalSystem& sys, const PhasePoint& p);

}  // namespace lagmech::finsler
