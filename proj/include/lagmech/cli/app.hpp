#pragma once

// The lagmech command line: config loading, the five subcommands and the
// identity suite behind `verify`. Commands return their output instead of
// printing so they can be driven in-process.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lagmech/builtins/catalog.hpp"
#include "lagmech/io/json_io.hpp"
#include "lagmech/trajectories/trajectory.hpp"

namespace lagmech::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kConfigFailure = 2, kDomainFailure = 3, kIdentityFailure = 4 };

struct CommandResult {
  int code = kOk;
  std::string out;
  std::string err;
};

struct SystemConfig {
  std::string builtin;  // empty for a custom system
  std::string base;
  exprdsl::Params params;
  std::optional<builtins::SystemSources> custom;
  std::string name = "custom";
};

struct SampleConfig {
  std::optional<mechanics::SampleBox> box;  // default: the builtin's box
  std::size_t count = 200;
  mechanics::SampleKind kind = mechanics::SampleKind::Halton;
  std::optional<double> min_y_norm;
  std::vector<numkernel::PhasePoint> points;  // explicit points replace the box
};

struct RunConfig {
  SystemConfig system;
  SampleConfig samples;
  trajectories::IntegratorConfig integrator;
  std::optional<numkernel::PhasePoint> initial;
  trajectories::Curve curve = trajectories::Curve::Evolution;
  std::string format;  // json | csv; empty picks the command's default
  std::string out_path;
  std::uint64_t seed = 0;
  double tolerance = 1e-8;
};

// Throws ConfigError on an unknown key or a value of the wrong shape.
RunConfig parse_config(const io::Json& j);
RunConfig load_config_file(const std::string& path);

struct ResolvedSystem {
  mechanics::MechanicalSystem sys;
  builtins::SystemSources sources;
};
// Builtin defaults, then config params. Throws UnknownBuiltin, UnboundParameter, ConfigError.
ResolvedSystem resolve_system(const SystemConfig& cfg);
// Explicit points, or the sample box; slit systems always drop |y| < 0.1.
std::vector<numkernel::PhasePoint> resolve_samples(const RunConfig& cfg, const ResolvedSystem& rs);

struct VerifyReport {
  std::vector<std::pair<std::string, double>> residuals;  // name -> max over samples
  std::vector<std::string> offenders;
  std::vector<mechanics::PointFailure> failures;
  std::size_t points_tested = 0;
  bool finsler_mode = false;
  double tolerance = 1e-8;
};
// Every residual is scaled by 1 / (1 + max|g|) at its point.
VerifyReport verify_identities(const mechanics::MechanicalSystem& sys, const std::vector<numkernel::PhasePoint>& samples,
                               double tol = 1e-8);

CommandResult cmd_catalog();
CommandResult cmd_inspect(const RunConfig& cfg);
CommandResult cmd_classify(const RunConfig& cfg);
CommandResult cmd_simulate(const RunConfig& cfg);
CommandResult cmd_verify(const RunConfig& cfg);

// Full command line without the program name. Never throws.
CommandResult run(const std::vector<std::string>& args);

}  // namespace lagmech::cli
