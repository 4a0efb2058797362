#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "lagmech/cli/app.hpp"
#include "lagmech/error.hpp"
#include "lagmech/finsler/finsler.hpp"
#include "lagmech/mechanics/classify.hpp"

namespace lagmech::cli {

namespace {

using io::Json;

Json point_json(std::size_t index, const numkernel::PhasePoint& p) {
  return Json{{"index", index}, {"x", p.x}, {"y", p.y}};
}

Json failures_json(const std::vector<mechanics::PointFailure>& fs) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back(io::to_json(f));
  return out;
}

Json inspect_point(const mechanics::MechanicalSystem& sys, const numkernel::PhasePoint& p) {
  const auto geo = core::geometry_at(sys.L(), p);
  const auto bundle = mechanics::evolution_bundle_at(sys, p);
  return Json{{"metric", io::to_json(geo.g.entries)},
              {"metric_inverse", io::to_json(geo.g.inverse)},
              {"energy", geo.E},
              {"canonical_spray", geo.spray0},
              {"canonical_connection", io::to_json(geo.conn0)},
              {"cartan", io::to_json(geo.cartan)},
              {"sigma", bundle.sigma},
              {"evolution_spray", bundle.spray},
              {"evolution_connection", io::to_json(bundle.conn)},
              {"helicoidal", io::to_json(bundle.helicoidal)},
              {"metric_derivative", io::to_json(bundle.gbar)},
              {"power", bundle.power}};
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const SingularMetric*>(&e)) return "singular_metric";
  return "domain";
}

}  // namespace

CommandResult cmd_catalog() {
  Json out = Json::array();
  for (const auto& e : builtins::catalog()) out.push_back(io::to_json(e));
  return {kOk, io::dump(out), ""};
}

CommandResult cmd_inspect(const RunConfig& cfg) {
  const auto rs = resolve_system(cfg.system);
  std::vector<numkernel::PhasePoint> pts = cfg.samples.points;
  if (pts.empty() && cfg.initial) pts.push_back(*cfg.initial);
  if (pts.empty()) throw ConfigError("inspect needs points (samples.points, initial, or --x/--y)");
  CommandResult res;
  Json points = Json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].dim() != rs.sys.n) throw ConfigError("point dimension does not match the system");
    Json entry = point_json(i, pts[i]);
    try {
      entry.update(inspect_point(rs.sys, pts[i]));
    } catch (const Error& e) {
      entry["error"] = error_kind(e);
      entry["reason"] = e.what();
      res.code = kDomainFailure;
      res.err += "point " + std::to_string(i) + ": " + e.what() + "\n";
    }
    points.push_back(std::move(entry));
  }
  res.out = io::dump(Json{{"system", rs.sys.name}, {"points", points}});
  return res;
}

CommandResult cmd_classify(const RunConfig& cfg) {
  const auto rs = resolve_system(cfg.system);
  const auto pts = resolve_samples(cfg, rs);
  const auto rep = mechanics::classify(rs.sys, pts, cfg.tolerance);
  Json out{{"system", rs.sys.name}};
  out.update(io::to_json(rep));
  std::vector<numkernel::PhasePoint> good;
  std::size_t f = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (f < rep.failures.size() && rep.failures[f].index == i) {
      ++f;
      continue;
    }
    good.push_back(pts[i]);
  }
  if (!good.empty()) out["homogeneity"] = io::to_json(finsler::homogeneity_report(rs.sys, good));
  return {kOk, io::dump(out), ""};
}

CommandResult cmd_simulate(const RunConfig& cfg) {
  const auto rs = resolve_system(cfg.system);
  if (!cfg.initial) throw ConfigError("simulate needs an initial point (initial, or --x/--y)");
  const std::string format = cfg.format.empty() ? "csv" : cfg.format;
  if (format != "csv" && format != "json") throw ConfigError("output format must be csv or json");
  const auto traj = trajectories::integrate(rs.sys, *cfg.initial, cfg.integrator, cfg.curve);
  const auto audit = trajectories::energy_audit(traj);

  CommandResult res;
  if (format == "csv") {
    std::ostringstream os;
    trajectories::write_csv(os, traj);
    res.out = os.str();
  } else {
    Json out{{"system", rs.sys.name}};
    out.update(io::to_json(traj));
    res.out = io::dump(out);
  }
  Json summary{{"system", rs.sys.name},
               {"curve", trajectories::to_string(traj.curve)},
               {"status", trajectories::to_string(traj.status)},
               {"samples", traj.size()},
               {"t_final", traj.t.back()},
               {"initial_energy", traj.energy.front()},
               {"final_energy", traj.energy.back()},
               {"energy_audit", io::to_json(audit)}};
  if (!traj.stop_reason.empty()) summary["stop_reason"] = traj.stop_reason;
  res.err = io::dump(summary);
  return res;
}

CommandResult cmd_verify(const RunConfig& cfg) {
  const auto rs = resolve_system(cfg.system);
  const auto pts = resolve_samples(cfg, rs);
  const auto rep = verify_identities(rs.sys, pts, cfg.tolerance);
  Json residuals = Json::object();
  for (const auto& [name, v] : rep.residuals) residuals[name] = v;
  Json out{{"system", rs.sys.name},
           {"tolerance", rep.tolerance},
           {"points_tested", rep.points_tested},
           {"finsler_mode", rep.finsler_mode},
           {"residuals", residuals},
           {"offenders", rep.offenders},
           {"failures", failures_json(rep.failures)}};
  CommandResult res{kOk, io::dump(out), ""};
  if (!rep.failures.empty()) {
    res.code = kDomainFailure;
    res.err = std::to_string(rep.failures.size()) + " sample point(s) are singular or outside the domain:\n";
    for (const auto& f : rep.failures) {
      std::ostringstream os;
      os.precision(17);
      os << "  #" << f.index << " x=(";
      for (std::size_t i = 0; i < f.point.dim(); ++i) os << (i ? ", " : "") << f.point.x[i];
      os << ") y=(";
      for (std::size_t i = 0; i < f.point.dim(); ++i) os << (i ? ", " : "") << f.point.y[i];
      os << "): " << f.reason << "\n";
      res.err += os.str();
    }
  } else if (!rep.offenders.empty()) {
    res.code = kIdentityFailure;
    for (const auto& name : rep.offenders) res.err += "identity residual above tolerance: " + name + "\n";
  }
  return res;
}

namespace {

struct Overrides {
  std::string config;
  std::string builtin;
  std::string base;
  std::vector<std::string> params;
  std::optional<double> t_end, step, tolerance;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> count, record_every;
  std::string out, curve, format, method, kind;
  std::vector<double> x, y;
};

void add_options(CLI::App* sub, Overrides& o, bool integration) {
  sub->add_option("--config", o.config, "JSON run configuration");
  sub->add_option("--builtin", o.builtin, "catalog system id (overrides the config system)");
  sub->add_option("--base", o.base, "base system for force families");
  sub->add_option("--param", o.params, "parameter override name=value (repeatable)");
  sub->add_option("--seed", o.seed, "sample-set seed");
  sub->add_option("--out", o.out, "write output to this file instead of standard output");
  sub->add_option("--x", o.x, "point position, comma separated")->delimiter(',');
  sub->add_option("--y", o.y, "point velocity, comma separated")->delimiter(',');
  sub->add_option("--count", o.count, "number of sample points");
  sub->add_option("--sample-kind", o.kind, "halton, random or grid");
  sub->add_option("--tolerance", o.tolerance, "residual tolerance");
  if (integration) {
    sub->add_option("--t-end", o.t_end, "integration end time");
    sub->add_option("--step", o.step, "fixed step, or first trial step for rk45");
    sub->add_option("--curve", o.curve, "evolution, horizontal or geodesic");
    sub->add_option("--method", o.method, "rk4_fixed or rk45_adaptive");
    sub->add_option("--record-every", o.record_every, "record every k-th accepted step");
    sub->add_option("--format", o.format, "csv or json");
  }
}

RunConfig build_config(const Overrides& o) {
  RunConfig cfg = o.config.empty() ? RunConfig{} : load_config_file(o.config);
  if (!o.builtin.empty()) {
    cfg.system.custom.reset();
    cfg.system.builtin = o.builtin;
  }
  if (!o.base.empty()) cfg.system.base = o.base;
  for (const auto& kv : o.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--param expects name=value, got '" + kv + "'");
    const std::string value = kv.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) throw ConfigError("--param value is not a number: '" + kv + "'");
    cfg.system.params[kv.substr(0, eq)] = v;
  }
  if (o.seed) cfg.seed = *o.seed;
  if (!o.out.empty()) cfg.out_path = o.out;
  if (o.count) {
    if (*o.count < 1) throw ConfigError("--count must be >= 1");
    cfg.samples.count = *o.count;
  }
  if (!o.kind.empty()) cfg.samples.kind = mechanics::parse_sample_kind(o.kind);
  if (o.tolerance) {
    if (!(*o.tolerance > 0.0)) throw ConfigError("--tolerance must be > 0");
    cfg.tolerance = *o.tolerance;
  }
  if (!o.x.empty() || !o.y.empty()) {
    if (o.x.size() != o.y.size()) throw ConfigError("--x and --y must have the same length");
    cfg.initial = numkernel::PhasePoint{o.x, o.y};
  }
  if (o.t_end) cfg.integrator.t_end = *o.t_end;
  if (o.step) cfg.integrator.step = *o.step;
  if (!o.curve.empty()) cfg.curve = trajectories::parse_curve(o.curve);
  if (!o.method.empty()) cfg.integrator.method = trajectories::parse_method(o.method);
  if (o.record_every) cfg.integrator.record_every = *o.record_every;
  if (!o.format.empty()) cfg.format = o.format;
  return cfg;
}

CommandResult write_out(CommandResult res, const std::string& path) {
  if (path.empty() || res.out.empty()) return res;
  std::ofstream f(path, std::ios::binary);
  if (!f) return {kConfigFailure, "", "cannot write " + path + "\n"};
  f << res.out;
  res.out.clear();
  return res;
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"lagmech: Lagrange mechanical systems, their evolution structures and trajectories"};
  app.require_subcommand(1);
  Overrides o;
  auto* inspect = app.add_subcommand("inspect", "dump the geometry at given points");
  auto* classify = app.add_subcommand("classify", "metric / symplectic / dissipative verdicts over a sample set");
  auto* simulate = app.add_subcommand("simulate", "integrate an evolution, horizontal or geodesic curve");
  auto* verify = app.add_subcommand("verify", "check every identity over a sample set");
  app.add_subcommand("catalog", "list the builtin systems");
  add_options(inspect, o, false);
  add_options(classify, o, false);
  add_options(simulate, o, true);
  add_options(verify, o, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    return {code == 0 ? kOk : kConfigFailure, out.str(), err.str()};
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "catalog") return cmd_catalog();
    const RunConfig cfg = build_config(o);
    CommandResult res;
    if (name == "inspect") res = cmd_inspect(cfg);
    else if (name == "classify") res = cmd_classify(cfg);
    else if (name == "simulate") res = cmd_simulate(cfg);
    else res = cmd_verify(cfg);
    return write_out(std::move(res), cfg.out_path);
  } catch (const SingularMetric& e) {
    return {kDomainFailure, "", std::string("error: ") + e.what() + "\n"};
  } catch (const DomainError& e) {
    return {kDomainFailure, "", std::string("error: ") + e.what() + "\n"};
  } catch (const Error& e) {
    return {kConfigFailure, "", std::string("error: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {kInternal, "", std::string("internal error: ") + e.what() + "\n"};
  }
}

}  // namespace lagmech::cli
