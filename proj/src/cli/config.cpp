#include <fstream>
#include <set>
#include <sstream>

#include "lagmech/cli/app.hpp"
#include "lagmech/error.hpp"

namespace lagmech::cli {

namespace {

using io::Json;

void only_keys(const Json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

template <class T>
T get(const Json& j, const char* key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(where + "." + key + " has the wrong type");
  }
}

std::vector<double> vec(const Json& j, const char* key, const std::string& where) {
  return get<std::vector<double>>(j, key, where);
}

numkernel::PhasePoint point(const Json& j, const std::string& where) {
  only_keys(j, where, {"x", "y"});
  if (!j.contains("x") || !j.contains("y")) throw ConfigError(where + " needs both x and y");
  numkernel::PhasePoint p{vec(j, "x", where), vec(j, "y", where)};
  if (p.x.size() != p.y.size() || p.x.empty()) throw ConfigError(where + ": x and y must have the same nonzero length");
  return p;
}

mechanics::SampleBox box(const Json& j, const std::string& where) {
  only_keys(j, where, {"x_lo", "x_hi", "y_lo", "y_hi"});
  for (const char* k : {"x_lo", "x_hi", "y_lo", "y_hi"})
    if (!j.contains(k)) throw ConfigError(where + " is missing " + k);
  return {vec(j, "x_lo", where), vec(j, "x_hi", where), vec(j, "y_lo", where), vec(j, "y_hi", where)};
}

exprdsl::Params params(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object of numbers");
  exprdsl::Params out;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number()) throw ConfigError(where + "." + k + " must be a number");
    out[k] = v.get<double>();
  }
  return out;
}

SystemConfig system(const Json& j) {
  SystemConfig s;
  if (j.contains("builtin")) {
    only_keys(j, "system", {"builtin", "base", "params"});
    s.builtin = get<std::string>(j, "builtin", "system");
    if (j.contains("base")) s.base = get<std::string>(j, "base", "system");
  } else {
    only_keys(j, "system", {"name", "n", "lagrangian", "force", "params", "slit", "box"});
    builtins::SystemSources src;
    if (!j.contains("n") || !j.contains("lagrangian")) throw ConfigError("custom system needs n and lagrangian");
    const auto n = get<int>(j, "n", "system");
    if (n < 1 || n > 16) throw ConfigError("system.n must lie in [1, 16]");
    src.n = static_cast<std::size_t>(n);
    src.lagrangian = get<std::string>(j, "lagrangian", "system");
    src.force = j.contains("force") ? get<std::vector<std::string>>(j, "force", "system")
                                    : std::vector<std::string>(src.n, "0");
    src.slit = j.contains("slit") && get<bool>(j, "slit", "system");
    if (j.contains("box")) src.default_box = box(j.at("box"), "system.box");
    if (j.contains("name")) s.name = get<std::string>(j, "name", "system");
    s.custom = std::move(src);
  }
  if (j.contains("params")) s.params = params(j.at("params"), "system.params");
  return s;
}

SampleConfig samples(const Json& j) {
  only_keys(j, "samples", {"box", "count", "kind", "min_y_norm", "points"});
  SampleConfig s;
  if (j.contains("box")) s.box = box(j.at("box"), "samples.box");
  if (j.contains("count")) {
    const auto c = get<long long>(j, "count", "samples");
    if (c < 1) throw ConfigError("samples.count must be >= 1");
    s.count = static_cast<std::size_t>(c);
  }
  if (j.contains("kind")) s.kind = mechanics::parse_sample_kind(get<std::string>(j, "kind", "samples"));
  if (j.contains("min_y_norm")) s.min_y_norm = get<double>(j, "min_y_norm", "samples");
  if (j.contains("points")) {
    const auto& pts = j.at("points");
    if (!pts.is_array()) throw ConfigError("samples.points must be an array");
    for (std::size_t i = 0; i < pts.size(); ++i) s.points.push_back(point(pts[i], "samples.points[" + std::to_string(i) + "]"));
  }
  return s;
}

trajectories::IntegratorConfig integrator(const Json& j) {
  only_keys(j, "integrator", {"method", "step", "t_end", "record_every", "rel_tol", "abs_tol", "max_step"});
  trajectories::IntegratorConfig c;
  if (j.contains("method")) c.method = trajectories::parse_method(get<std::string>(j, "method", "integrator"));
  if (j.contains("step")) c.step = get<double>(j, "step", "integrator");
  if (j.contains("t_end")) c.t_end = get<double>(j, "t_end", "integrator");
  if (j.contains("record_every")) {
    const auto r = get<long long>(j, "record_every", "integrator");
    if (r < 1) throw ConfigError("integrator.record_every must be >= 1");
    c.record_every = static_cast<std::size_t>(r);
  }
  if (j.contains("rel_tol")) c.rel_tol = get<double>(j, "rel_tol", "integrator");
  if (j.contains("abs_tol")) c.abs_tol = get<double>(j, "abs_tol", "integrator");
  if (j.contains("max_step")) c.max_step = get<double>(j, "max_step", "integrator");
  return c;
}

}  // namespace

RunConfig parse_config(const Json& j) {
  only_keys(j, "config", {"system", "samples", "integrator", "initial", "curve", "output", "seed", "tolerance"});
  RunConfig c;
  if (j.contains("system")) c.system = system(j.at("system"));
  if (j.contains("samples")) c.samples = samples(j.at("samples"));
  if (j.contains("integrator")) c.integrator = integrator(j.at("integrator"));
  if (j.contains("initial")) c.initial = point(j.at("initial"), "initial");
  if (j.contains("curve")) c.curve = trajectories::parse_curve(get<std::string>(j, "curve", "config"));
  if (j.contains("output")) {
    const auto& o = j.at("output");
    only_keys(o, "output", {"format", "path"});
    if (o.contains("format")) c.format = get<std::string>(o, "format", "output");
    if (o.contains("path")) c.out_path = get<std::string>(o, "path", "output");
  }
  if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed", "config");
  if (j.contains("tolerance")) c.tolerance = get<double>(j, "tolerance", "config");
  if (!(c.tolerance > 0.0)) throw ConfigError("tolerance must be > 0");
  return c;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  return parse_config(j);
}

ResolvedSystem resolve_system(const SystemConfig& cfg) {
  ResolvedSystem rs;
  if (cfg.custom) {
    rs.sources = *cfg.custom;
    rs.sys = builtins::from_sources(cfg.name, rs.sources, cfg.params);
    return rs;
  }
  if (cfg.builtin.empty()) throw ConfigError("no system given (use --builtin or a config with a system section)");
  const auto entry = builtins::lookup(cfg.builtin);
  if (!entry) throw UnknownBuiltin(cfg.builtin);
  exprdsl::Params merged = entry->default_params;
  for (const auto& [k, v] : cfg.params) merged[k] = v;
  if (!cfg.base.empty() && entry->default_base.empty())
    throw ConfigError(cfg.builtin + " does not take a base system");
  if (!cfg.base.empty())
    if (const auto base = builtins::lookup(cfg.base))
      for (const auto& [k, v] : base->default_params) merged.try_emplace(k, v);
  if (cfg.base.empty() && !entry->default_base.empty())
    if (const auto base = builtins::lookup(entry->default_base))
      for (const auto& [k, v] : base->default_params) merged.try_emplace(k, v);
  rs.sources = builtins::sources_of(cfg.builtin, merged, cfg.base);
  rs.sys = builtins::instantiate(cfg.builtin, merged, cfg.base);
  return rs;
}

std::vector<numkernel::PhasePoint> resolve_samples(const RunConfig& cfg, const ResolvedSystem& rs) {
  const std::size_t n = rs.sys.n;
  const double floor = std::max(cfg.samples.min_y_norm.value_or(0.0), rs.sys.slit ? 0.1 : 0.0);
  if (!cfg.samples.points.empty()) {
    std::vector<numkernel::PhasePoint> out;
    for (const auto& p : cfg.samples.points) {
      if (p.dim() != n) throw ConfigError("sample point dimension does not match the system");
      out.push_back(p);
    }
    return out;
  }
  mechanics::SampleSpec spec;
  spec.box = cfg.samples.box ? *cfg.samples.box : rs.sources.default_box;
  if (spec.box.dim() == 0) throw ConfigError("custom systems need samples.box or samples.points");
  if (spec.box.dim() != n) throw ConfigError("sample box dimension does not match the system");
  spec.count = cfg.samples.count;
  spec.kind = cfg.samples.kind;
  spec.seed = cfg.seed;
  spec.min_y_norm = floor;
  auto out = mechanics::generate_samples(spec);
  if (out.empty()) throw ConfigError("sample set is empty after dropping |y| < " + std::to_string(floor));
  return out;
}

}  // namespace lagmech::cli
