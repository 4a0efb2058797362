#pragma once

#include <random>
#include <string>
#include <vector>

#include "lagmech/builtins/catalog.hpp"

namespace testing_support {

using lagmech::exprdsl::Params;
using lagmech::mechanics::MechanicalSystem;
using lagmech::numkernel::PhasePoint;

struct Variant {
  std::string id;
  Params params;
  std::string base;

  std::string label() const { return base.empty() ? id : id + "/" + base; }
};

// Every catalog entry with its default parameters, plus the force families
// over other bases.
inline std::vector<Variant> builtin_variants() {
  std::vector<Variant> out;
  for (const auto& e : lagmech::builtins::catalog()) out.push_back({e.id, e.default_params, ""});
  out.push_back({"SYS-E", {{"e", -1.0}}, "EUCLID"});
  out.push_back({"SYS-E", {{"e", 0.7}, {"c", 0.1}}, "SYS-A"});
  out.push_back({"SYS-E", {{"e", -0.3}}, "SYS-B"});
  out.push_back({"SYS-E", {{"e", -0.5}}, "SYS-F"});
  out.push_back({"SYS-D", {{"e", -0.5}}, "SYS-F"});
  out.push_back({"SYS-D", {{"e", 0.4}}, "SYS-B"});
  return out;
}

inline MechanicalSystem make(const Variant& v) { return lagmech::builtins::instantiate(v.id, v.params, v.base); }

inline std::vector<PhasePoint> samples(const Variant& v, std::size_t count = 200) {
  const auto src = lagmech::builtins::sources_of(v.id, v.params, v.base);
  return lagmech::mechanics::generate_samples(lagmech::builtins::default_sample_spec(src, count));
}

inline PhasePoint pt(std::vector<double> x, std::vector<double> y) { return {std::move(x), std::move(y)}; }

inline std::vector<double> random_vector(std::mt19937& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace testing_support
