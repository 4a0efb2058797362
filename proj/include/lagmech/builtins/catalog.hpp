#pragma once

// Named systems. Every entry is expressed in the expression language, so
// the same sources can be printed, re-parsed and overridden from the CLI.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lagmech/exprdsl/expr.hpp"
#include "lagmech/mechanics/sampling.hpp"
#include "lagmech/mechanics/system.hpp"

namespace lagmech::builtins {

using exprdsl::Params;

struct SystemSources {
  std::size_t n = 0;
  std::string lagrangian;
  std::vector<std::string> force;
  bool slit = false;
  mechanics::SampleBox default_box;
};

struct BuiltinEntry {
  std::string id;
  std::string description;
  std::size_t n = 0;  // dimension with default parameters
  Params default_params;
  std::string default_base;  // base system id for force-on-base families
  std::string notes;
  // Sources for the given parameters and base id (empty base = default_base).
  std::function<SystemSources(const Params&, const std::string&)> sources;
};

const std::vector<BuiltinEntry>& catalog();

// Absent for an unknown id.
std::optional<BuiltinEntry> lookup(const std::string& id);

// Resolve sources without binding parameters. Throws UnknownBuiltin.
SystemSources sources_of(const std::string& id, const Params& params, const std::string& base = "");

// Fully bound system. Throws UnknownBuiltin, UnboundParameter.
mechanics::MechanicalSystem instantiate(const std::string& id, const Params& params, const std::string& base = "");

// Halton sample set over the default box; slit systems drop |y| < 0.1.
mechanics::SampleSpec default_sample_spec(const SystemSources& src, std::size_t count = 200);

// Build a system from expression sources.
mechanics::MechanicalSystem from_sources(const std::string& name, const SystemSources& src, const Params& params);

}  // namespace lagmech::builtins
