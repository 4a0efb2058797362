#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lagmech/mechanics/evolution.hpp"

namespace lagmech::mechanics {

struct DissipativityVerdict {
  bool weak = true;     // σ_i y^i <= 0 at every sample
  bool strict = true;   // σ_i y^i < 0 at every sample
  double worst_power = 0.0;  // largest σ_i y^i seen
};

struct PointFailure {
  std::size_t index = 0;
  PhasePoint point;
  std::string reason;
};

struct ClassificationReport {
  DissipativityVerdict dissipative_at_samples;
  double metric_defect = 0.0;      // max |gbar_ij| / (1 + |g|)
  double symplectic_defect = 0.0;  // max |F_ij| / (1 + |g|)
  bool is_metric = true;
  bool is_symplectic = true;
  double tolerance = 1e-8;
  std::size_t points_tested = 0;
  std::vector<PointFailure> failures;
};

ClassificationReport classify(const MechanicalSystem& sys, const std::vector<PhasePoint>& samples,
                              double tol = 1e-8);

}  // namespace lagmech::mechanics
