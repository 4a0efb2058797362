#include "lagmech/io/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "lagmech/error.hpp"

namespace lagmech::io {

namespace {

void write_number(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void write(std::string& out, const Json& j, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(k).dump() + ": ";
        write(out, v, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
      out += flat ? "[" : "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += flat ? ", " : ",\n";
        if (!flat) out += pad;
        write(out, j[i], depth + 1);
      }
      out += flat ? "]" : "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float:
      write_number(out, j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

std::vector<double> doubles(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw ConfigError(std::string("trajectory json: missing array '") + key + "'");
  std::vector<double> out;
  for (const auto& v : j.at(key)) out.push_back(v.is_null() ? std::nan("") : v.get<double>());
  return out;
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  write(out, j, 0);
  out += '\n';
  return out;
}

Json to_json(const std::vector<double>& v) { return Json(v); }

Json to_json(const numkernel::Matrix<double>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const numkernel::Cube<double>& c) {
  Json out = Json::array();
  for (std::size_t i = 0; i < c.dim(); ++i) {
    Json slab = Json::array();
    for (std::size_t j = 0; j < c.dim(); ++j) {
      Json row = Json::array();
      for (std::size_t k = 0; k < c.dim(); ++k) row.push_back(c(i, j, k));
      slab.push_back(std::move(row));
    }
    out.push_back(std::move(slab));
  }
  return out;
}

Json to_json(const numkernel::PhasePoint& p) { return Json{{"x", p.x}, {"y", p.y}}; }

Json to_json(const mechanics::SampleBox& box) {
  return Json{{"x_lo", box.x_lo}, {"x_hi", box.x_hi}, {"y_lo", box.y_lo}, {"y_hi", box.y_hi}};
}

Json to_json(const mechanics::PointFailure& f) {
  return Json{{"index", f.index}, {"x", f.point.x}, {"y", f.point.y}, {"reason", f.reason}};
}

Json to_json(const mechanics::ClassificationReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) failures.push_back(to_json(f));
  return Json{{"is_metric", r.is_metric},
              {"is_symplectic", r.is_symplectic},
              {"dissipative", r.dissipative_at_samples.strict},
              {"weakly_dissipative", r.dissipative_at_samples.weak},
              {"worst_power", r.dissipative_at_samples.worst_power},
              {"metric_defect", r.metric_defect},
              {"symplectic_defect", r.symplectic_defect},
              {"tolerance", r.tolerance},
              {"points_tested", r.points_tested},
              {"failures", failures}};
}

Json to_json(const finsler::HomogeneityReport& r) {
  return Json{{"lagrangian_residual", r.lagrangian_residual},
              {"metric_residual", r.metric_residual},
              {"force_residual", r.force_residual},
              {"points_tested", r.points_tested},
              {"finsler_mode", r.finsler_mode}};
}

Json to_json(const finsler::FinslerIdentities& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) failures.push_back(to_json(f));
  return Json{{"energy_residual", r.energy_residual},
              {"spray_homogeneity", r.spray_homogeneity},
              {"christoffel_residual", r.christoffel_residual},
              {"horizontal_energy_residual", r.horizontal_energy_residual},
              {"horizontal_energy", r.horizontal_energy},
              {"geodesic_coincidence", r.geodesic_coincidence},
              {"points_tested", r.points_tested},
              {"failures", failures}};
}

Json to_json(const trajectories::EnergyAudit& a) {
  return Json{{"max_balance_error", a.max_balance_error}, {"monotone_nonincreasing", a.monotone_nonincreasing}};
}

Json to_json(const trajectories::Trajectory& t) {
  Json states = Json::array();
  for (const auto& p : t.state) states.push_back(to_json(p));
  return Json{{"curve", trajectories::to_string(t.curve)},
              {"status", trajectories::to_string(t.status)},
              {"stop_reason", t.stop_reason},
              {"t", t.t},
              {"state", states},
              {"energy", t.energy},
              {"lagrangian", t.lagrangian},
              {"power", t.power},
              {"el_residual", t.el_residual}};
}

Json to_json(const builtins::BuiltinEntry& e) {
  const auto src = e.sources(e.default_params, e.default_base);
  Json params = Json::object();
  for (const auto& [k, v] : e.default_params) params[k] = v;
  return Json{{"id", e.id},
              {"description", e.description},
              {"n", e.n},
              {"default_params", params},
              {"default_base", e.default_base},
              {"notes", e.notes},
              {"lagrangian", src.lagrangian},
              {"force", src.force},
              {"slit", src.slit},
              {"default_box", to_json(src.default_box)}};
}

trajectories::Trajectory trajectory_from_json(const Json& j) {
  trajectories::Trajectory t;
  try {
    t.curve = trajectories::parse_curve(j.at("curve").get<std::string>());
    t.status = trajectories::parse_status(j.at("status").get<std::string>());
    t.stop_reason = j.value("stop_reason", "");
    t.t = doubles(j, "t");
    for (const auto& s : j.at("state")) t.state.push_back({s.at("x").get<std::vector<double>>(), s.at("y").get<std::vector<double>>()});
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("trajectory json: ") + e.what());
  }
  t.energy = doubles(j, "energy");
  t.lagrangian = doubles(j, "lagrangian");
  t.power = doubles(j, "power");
  t.el_residual = doubles(j, "el_residual");
  for (std::size_t n : {t.state.size(), t.energy.size(), t.lagrangian.size(), t.power.size(), t.el_residual.size()})
    if (n != t.t.size()) throw ConfigError("trajectory json: traces differ in length");
  return t;
}

}  // namespace lagmech::io
