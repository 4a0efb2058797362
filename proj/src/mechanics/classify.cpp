#include "lagmech/mechanics/classify.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "lagmech/error.hpp"
#include "lagmech/mechanics/parallel.hpp"

namespace lagmech::mechanics {

namespace {

struct PointResult {
  std::optional<std::string> failure;
  double power = 0.0;
  double metric = 0.0;
  double symplectic = 0.0;
};

PointResult examine(const MechanicalSystem& sys, const PhasePoint& p) {
  PointResult r;
  try {
    const auto b = evolution_bundle_at(sys, p);
    const double scale = 1.0 + numkernel::max_abs(core::metric_at(sys.L(), p).entries);
    r.power = b.power;
    r.metric = numkernel::max_abs(b.gbar) / scale;
    r.symplectic = numkernel::max_abs(b.helicoidal) / scale;
  } catch (const Error& e) {
    r.failure = e.what();
  }
  return r;
}

}  // namespace

ClassificationReport classify(const MechanicalSystem& sys, const std::vector<PhasePoint>& samples, double tol) {
  const auto results =
      parallel_map<PointResult>(samples.size(), [&](std::size_t i) { return examine(sys, samples[i]); });

  ClassificationReport rep;
  rep.tolerance = tol;
  bool first = true;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    if (r.failure) {
      rep.failures.push_back({i, samples[i], *r.failure});
      continue;
    }
    ++rep.points_tested;
    auto& d = rep.dissipative_at_samples;
    d.worst_power = first ? r.power : std::max(d.worst_power, r.power);
    first = false;
    d.weak = d.weak && r.power <= 0.0;
    d.strict = d.strict && r.power < 0.0;
    rep.metric_defect = std::max(rep.metric_defect, r.metric);
    rep.symplectic_defect = std::max(rep.symplectic_defect, r.symplectic);
  }
  if (rep.points_tested == 0) {
    rep.dissipative_at_samples.weak = false;
    rep.dissipative_at_samples.strict = false;
  }
  rep.is_metric = rep.points_tested > 0 && rep.metric_defect <= tol;
  rep.is_symplectic = rep.points_tested > 0 && rep.symplectic_defect <= tol;
  return rep;
}

}  // namespace lagmech::mechanics
