#include "lagmech/finsler/finsler.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "lagmech/error.hpp"
#include "lagmech/mechanics/parallel.hpp"

namespace lagmech::finsler {

namespace {

std::vector<double> contract_y(const numkernel::Matrix<double>& m, const std::vector<double>& y) { return m * y; }

}  // namespace

HomogeneityReport homogeneity_report(const MechanicalSystem& sys, const std::vector<PhasePoint>& samples) {
  HomogeneityReport rep;
  rep.finsler_mode = !samples.empty();
  for (const auto& p : samples) {
    const std::size_t n = p.dim();
    const auto jet = numkernel::eval_jet(sys.L(), p, 3);
    double euler = -2.0 * jet.value();
    for (std::size_t i = 0; i < n; ++i) euler += jet.dy(i) * p.y[i];
    rep.lagrangian_residual = std::max(rep.lagrangian_residual, std::abs(euler));
    if (std::abs(euler) > 1e-8 * (1.0 + std::abs(jet.value()))) rep.finsler_mode = false;

    // dg_ij/dy^k = d^3L/dy^i dy^j dy^k / 2
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double v = 0.0;
        for (std::size_t k = 0; k < n; ++k) v += 0.5 * jet.dyyy(i, j, k) * p.y[k];
        rep.metric_residual = std::max(rep.metric_residual, std::abs(v));
      }

    const auto dV = mechanics::force_jacobian_y(sys, p);
    rep.force_residual = std::max(rep.force_residual, numkernel::max_abs(contract_y(dV, p.y)));
    ++rep.points_tested;
  }
  return rep;
}

Cube<double> christoffel_at(const MechanicalSystem& sys, const PhasePoint& p) {
  const std::size_t n = p.dim();
  const auto g = core::metric_at(sys.L(), p);
  const auto dg = core::metric_partials_x(sys.L(), p);  // (i, j, k) = dg_ij/dx^k
  Cube<double> gamma(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        double v = 0.0;
        for (std::size_t h = 0; h < n; ++h) v += g.inverse(i, h) * (dg(h, j, k) + dg(h, k, j) - dg(j, k, h));
        gamma(i, j, k) = 0.5 * v;
      }
  return gamma;
}

double geodesic_coincidence_defect(const MechanicalSystem& sys, const PhasePoint& p) {
  const auto n = mechanics::evolution_connection_at(sys, p);
  const auto n0 = core::canonical_connection_at(sys.L(), p);
  return numkernel::max_abs_diff(contract_y(n, p.y), contract_y(n0, p.y));
}

namespace {

struct PointIdentities {
  std::optional<std::string> failure;
  double energy = 0, spray = 0, christoffel = 0, horizontal_gap = 0, horizontal = 0, coincidence = 0;
};

PointIdentities point_identities(const MechanicalSystem& sys, const PhasePoint& p) {
  PointIdentities r;
  try {
    const std::size_t n = p.dim();
    const auto geo = core::geometry_at(sys.L(), p);
    const double f2 = geo.jet.value();
    r.energy = std::abs(geo.E - f2) / (f2 != 0.0 ? std::abs(f2) : 1.0);

    const auto n0y = contract_y(geo.conn0, p.y);
    const auto gamma = christoffel_at(sys, p);
    for (std::size_t i = 0; i < n; ++i) {
      r.spray = std::max(r.spray, std::abs(2.0 * geo.spray0[i] - n0y[i]));
      double c = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) c += gamma(i, j, k) * p.y[j] * p.y[k];
      r.christoffel = std::max(r.christoffel, std::abs(c - 2.0 * geo.spray0[i]));
    }

    const auto dE = mechanics::horizontal_dE(sys, p);
    const auto dV = mechanics::force_jacobian_y(sys, p);
    for (std::size_t i = 0; i < n; ++i) {
      double rhs = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) rhs += 0.5 * geo.g.entries(j, k) * dV(j, i) * p.y[k];
      r.horizontal_gap = std::max(r.horizontal_gap, std::abs(dE[i] - rhs));
      r.horizontal = std::max(r.horizontal, std::abs(dE[i]));
    }
    r.coincidence = geodesic_coincidence_defect(sys, p);
  } catch (const Error& e) {
    r.failure = e.what();
  }
  return r;
}

}  // namespace

FinslerIdentities finsler_identities(const MechanicalSystem& sys, const std::vector<PhasePoint>& samples) {
  const auto results = mechanics::parallel_map<PointIdentities>(
      samples.size(), [&](std::size_t i) { return point_identities(sys, samples[i]); });
  FinslerIdentities rep;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    if (r.failure) {
      rep.failures.push_back({i, samples[i], *r.failure});
      continue;
    }
    ++rep.points_tested;
    rep.energy_residual = std::max(rep.energy_residual, r.energy);
    rep.spray_homogeneity = std::max(rep.spray_homogeneity, r.spray);
    rep.christoffel_residual = std::max(rep.christoffel_residual, r.christoffel);
    rep.horizontal_energy_residual = std::max(rep.horizontal_energy_residual, r.horizontal_gap);
    rep.horizontal_energy = std::max(rep.horizontal_energy, r.horizontal);
    rep.geodesic_coincidence = std::max(rep.geodesic_coincidence, r.coincidence);
  }
  return rep;
}

}  // namespace lagmech::finsler
