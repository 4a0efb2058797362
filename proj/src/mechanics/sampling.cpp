#include "lagmech/mechanics/sampling.hpp"

#include <cmath>
#include <random>

#include "lagmech/error.hpp"

namespace lagmech::mechanics {

namespace {

constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

double radical_inverse(std::size_t i, unsigned base) {
  double f = 1.0;
  double r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

PhasePoint map_unit(const SampleBox& box, const std::vector<double>& u) {
  const std::size_t n = box.dim();
  PhasePoint p{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    p.x[i] = box.x_lo[i] + u[i] * (box.x_hi[i] - box.x_lo[i]);
    p.y[i] = box.y_lo[i] + u[n + i] * (box.y_hi[i] - box.y_lo[i]);
  }
  return p;
}

double y_norm(const PhasePoint& p) {
  double s = 0.0;
  for (double v : p.y) s += v * v;
  return std::sqrt(s);
}

void check_box(const SampleBox& box) {
  const std::size_t n = box.dim();
  if (n == 0 || box.x_hi.size() != n || box.y_lo.size() != n || box.y_hi.size() != n)
    throw ConfigError("sample box bounds must all have length n >= 1");
  for (std::size_t i = 0; i < n; ++i)
    if (box.x_lo[i] > box.x_hi[i] || box.y_lo[i] > box.y_hi[i])
      throw ConfigError("sample box has a lower bound above its upper bound");
}

}  // namespace

SampleKind parse_sample_kind(const std::string& s) {
  if (s == "halton") return SampleKind::Halton;
  if (s == "random") return SampleKind::Random;
  if (s == "grid") return SampleKind::Grid;
  throw ConfigError("unknown sample kind '" + s + "' (expected halton, random or grid)");
}

std::string to_string(SampleKind k) {
  switch (k) {
    case SampleKind::Halton: return "halton";
    case SampleKind::Random: return "random";
    case SampleKind::Grid: return "grid";
  }
  return "?";
}

std::vector<std::vector<double>> halton(std::size_t dims, std::size_t count, std::size_t index) {
  if (dims > std::size(kPrimes)) throw ConfigError("halton sampling supports at most 16 dimensions");
  std::vector<std::vector<double>> out(count, std::vector<double>(dims));
  for (std::size_t k = 0; k < count; ++k)
    for (std::size_t d = 0; d < dims; ++d) out[k][d] = radical_inverse(index + k, kPrimes[d]);
  return out;
}

std::vector<PhasePoint> generate_samples(const SampleSpec& spec) {
  check_box(spec.box);
  const std::size_t dims = 2 * spec.box.dim();
  std::vector<std::vector<double>> unit;

  if (spec.kind == SampleKind::Grid) {
    std::size_t per_axis = 2;
    while (std::pow(static_cast<double>(per_axis + 1), static_cast<double>(dims)) <= static_cast<double>(spec.count))
      ++per_axis;
    std::vector<std::size_t> idx(dims, 0);
    for (;;) {
      std::vector<double> u(dims);
      for (std::size_t d = 0; d < dims; ++d) u[d] = static_cast<double>(idx[d]) / static_cast<double>(per_axis - 1);
      unit.push_back(std::move(u));
      std::size_t d = 0;
      while (d < dims && ++idx[d] == per_axis) idx[d++] = 0;
      if (d == dims) break;
    }
  } else {
    if (spec.include_corners && dims <= 8) {
      for (std::size_t mask = 0; mask < (std::size_t{1} << dims); ++mask) {
        std::vector<double> u(dims);
        for (std::size_t d = 0; d < dims; ++d) u[d] = (mask >> d) & 1U ? 1.0 : 0.0;
        unit.push_back(std::move(u));
      }
    }
    if (spec.kind == SampleKind::Halton) {
      auto h = halton(dims, spec.count, 1 + spec.seed);
      unit.insert(unit.end(), h.begin(), h.end());
    } else {
      std::mt19937_64 rng(spec.seed);
      std::uniform_real_distribution<double> u01(0.0, 1.0);
      for (std::size_t k = 0; k < spec.count; ++k) {
        std::vector<double> u(dims);
        for (auto& v : u) v = u01(rng);
        unit.push_back(std::move(u));
      }
    }
  }

  std::vector<PhasePoint> out;
  out.reserve(unit.size());
  for (const auto& u : unit) {
    PhasePoint p = map_unit(spec.box, u);
    if (y_norm(p) < spec.min_y_norm) continue;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace lagmech::mechanics
