#pragma once

// Deterministic sample sets over a box in (x, y).

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lagmech/numkernel/field.hpp"

namespace lagmech::mechanics {

using numkernel::PhasePoint;

struct SampleBox {
  std::vector<double> x_lo, x_hi;
  std::vector<double> y_lo, y_hi;

  std::size_t dim() const noexcept { return x_lo.size(); }
};

enum class SampleKind { Halton, Random, Grid };

struct SampleSpec {
  SampleBox box;
  std::size_t count = 200;
  SampleKind kind = SampleKind::Halton;
  std::uint64_t seed = 0;
  // Halton and random sets are preceded by the box corners, so that a box
  // reaching a singular boundary always probes it.
  bool include_corners = true;
  // Points with |y| below this are dropped (slit systems use 0.1).
  double min_y_norm = 0.0;
};

SampleKind parse_sample_kind(const std::string& s);
std::string to_string(SampleKind k);

// Halton sequence in `dims` dimensions, points index .. index+count-1 (index >= 1).
std::vector<std::vector<double>> halton(std::size_t dims, std::size_t count, std::size_t index = 1);

std::vector<PhasePoint> generate_samples(const SampleSpec& spec);

}  // namespace lagmech::mechanics
