#include <algorithm>
#include <cmath>
#include <optional>

#include "lagmech/cli/app.hpp"
#include "lagmech/error.hpp"
#include "lagmech/finsler/finsler.hpp"
#include "lagmech/mechanics/parallel.hpp"

namespace lagmech::cli {

namespace {

using numkernel::Matrix;
using numkernel::PhasePoint;

const std::vector<std::string> kCoreNames = {
    "canonical_spray_equation", "canonical_metricity",   "canonical_isotropy", "two_form_adapted",
    "evolution_equation",       "connection_routes",     "metric_derivative_routes",
    "helicoidal_vs_two_form",   "power_routes",          "horizontal_dL_routes",
    "horizontal_dE_routes",     "lagrange_equation",     "lie_theta"};

const std::vector<std::string> kFinslerNames = {"finsler_energy", "spray_homogeneity", "christoffel_contraction",
                                                "finsler_horizontal_energy"};

struct PointResult {
  std::optional<std::string> failure;
  std::vector<double> core;
  std::vector<double> finsler;
  double coincidence = 0.0;
};

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double c : v) m = std::max(m, std::abs(c));
  return m;
}

std::vector<double> core_residuals(const mechanics::MechanicalSystem& sys, const PhasePoint& p,
                                   const core::LagrangeGeometry& geo) {
  const std::size_t n = p.dim();
  const auto& L = sys.L();
  double adapted = 0.0;
  for (std::size_t a = 0; a < 2 * n; ++a)
    for (std::size_t b = a + 1; b < 2 * n; ++b) {
      const auto X = core::natural_basis(n, a);
      const auto Y = core::natural_basis(n, b);
      adapted = std::max(adapted, std::abs(core::two_form_eval(geo.jet, X, Y) -
                                           core::adapted_two_form_eval(geo.g.entries, geo.conn0, X, Y)));
    }
  const auto bundle = mechanics::evolution_bundle_at(sys, p);
  return {
      core::spray_equation_residual(L, p),
      numkernel::max_abs(core::dyn_cov_deriv_g(L, p, geo.spray0, geo.conn0)),
      core::horizontal_isotropy_defect(geo.jet, geo.conn0),
      adapted,
      mechanics::evolution_equation_residual(sys, p),
      mechanics::evolution_connection_routes(sys, p).gap,
      bundle.gbar_route_gap,
      mechanics::symplectic_check(sys, p).helicoidal_gap,
      std::abs(mechanics::dissipation_power(sys, p) - mechanics::dissipation_power_via_metric(sys, p)),
      mechanics::horizontal_dL_routes(sys, p).gap,
      mechanics::horizontal_dE_routes(sys, p).gap,
      max_abs(mechanics::lagrange_equation_residual(sys, p)),
      mechanics::lie_theta_residual(sys, p),
  };
}

PointResult evaluate_point(const mechanics::MechanicalSystem& sys, const PhasePoint& p) {
  PointResult r;
  try {
    const auto geo = core::geometry_at(sys.L(), p);
    const double scale = 1.0 + numkernel::max_abs(geo.g.entries);
    r.core = core_residuals(sys, p, geo);
    for (auto& v : r.core) v /= scale;

    const auto ids = finsler::finsler_identities(sys, {p});
    if (!ids.failures.empty()) throw DomainError(ids.failures.front().reason);
    r.finsler = {ids.energy_residual, ids.spray_homogeneity / scale, ids.christoffel_residual / scale,
                 ids.horizontal_energy_residual / scale};
    r.coincidence = ids.geodesic_coincidence / scale;
  } catch (const Error& e) {
    r.failure = e.what();
  }
  return r;
}

}  // namespace

VerifyReport verify_identities(const mechanics::MechanicalSystem& sys, const std::vector<PhasePoint>& samples,
                               double tol) {
  const auto results = mechanics::parallel_map<PointResult>(samples.size(),
                                                           [&](std::size_t i) { return evaluate_point(sys, samples[i]); });
  VerifyReport rep;
  rep.tolerance = tol;
  std::vector<double> core(kCoreNames.size(), 0.0);
  std::vector<double> fins(kFinslerNames.size(), 0.0);
  double coincidence = 0.0;
  std::vector<PhasePoint> good;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    if (r.failure) {
      rep.failures.push_back({i, samples[i], *r.failure});
      continue;
    }
    good.push_back(samples[i]);
    for (std::size_t k = 0; k < core.size(); ++k) core[k] = std::max(core[k], r.core[k]);
    for (std::size_t k = 0; k < fins.size(); ++k) fins[k] = std::max(fins[k], r.finsler[k]);
    coincidence = std::max(coincidence, r.coincidence);
  }
  rep.points_tested = good.size();

  for (std::size_t k = 0; k < core.size(); ++k) rep.residuals.emplace_back(kCoreNames[k], core[k]);
  if (!good.empty()) {
    const auto hom = finsler::homogeneity_report(sys, good);
    rep.finsler_mode = hom.finsler_mode;
    if (hom.finsler_mode)
      for (std::size_t k = 0; k < fins.size(); ++k) rep.residuals.emplace_back(kFinslerNames[k], fins[k]);
    if (hom.force_residual <= 1e-8) rep.residuals.emplace_back("geodesic_coincidence", coincidence);
  }
  for (const auto& [name, value] : rep.residuals)
    if (!(value <= tol)) rep.offenders.push_back(name);
  return rep;
}

}  // namespace lagmech::cli
