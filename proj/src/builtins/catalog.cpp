#include "lagmech/builtins/catalog.hpp"

#include <cmath>

#include "lagmech/error.hpp"
#include "lagmech/exprdsl/dsl_field.hpp"

namespace lagmech::builtins {

namespace {

std::string var(char kind, std::size_t i) { return std::string(1, kind) + std::to_string(i + 1); }

mechanics::SampleBox uniform_box(std::size_t n, double xl, double xh, double yl, double yh) {
  return {std::vector<double>(n, xl), std::vector<double>(n, xh), std::vector<double>(n, yl),
          std::vector<double>(n, yh)};
}

std::vector<std::string> zero_force(std::size_t n) { return std::vector<std::string>(n, "0"); }

std::size_t euclid_dimension(const Params& params) {
  const auto it = params.find("n");
  if (it == params.end()) return 2;
  const double v = it->second;
  if (!(v >= 1.0) || v > 16.0 || std::trunc(v) != v)
    throw ConfigError("EUCLID dimension n must be an integer in [1, 16]");
  return static_cast<std::size_t>(v);
}

SystemSources euclid(const Params& params, const std::string&) {
  SystemSources s;
  s.n = euclid_dimension(params);
  for (std::size_t i = 0; i < s.n; ++i) s.lagrangian += (i ? " + " : "") + var('y', i) + "^2";
  s.force = zero_force(s.n);
  s.default_box = uniform_box(s.n, -1.0, 1.0, -2.0, 2.0);
  return s;
}

SystemSources sys_a(const Params&, const std::string&) {
  return {1, "y1^2 - x1^2", {"(-2*c)*y1"}, false, uniform_box(1, -2.0, 2.0, -2.0, 2.0)};
}

SystemSources sys_b(const Params&, const std::string&) {
  return {2, "(1 + x1^2)*y1^2 + y2^2", zero_force(2), false, uniform_box(2, -1.5, 1.5, -2.0, 2.0)};
}

SystemSources sys_c(const Params&, const std::string&) {
  return {2, "(y1^4 + y2^4)^(1/2)", zero_force(2), true, uniform_box(2, -1.0, 1.0, 0.3, 2.0)};
}

SystemSources sys_f(const Params&, const std::string&) {
  return {2, "(1 + 0.5*(x1^2 + x2^2))*(y1^4 + y2^4)^(1/2)", zero_force(2), true,
          uniform_box(2, -1.0, 1.0, 0.3, 2.0)};
}

SystemSources base_sources(const std::string& self, const std::string& base, const Params& params) {
  if (base == self || base == "SYS-D" || base == "SYS-E")
    throw ConfigError(self + " needs a base without its own force family, got " + base);
  return sources_of(base, params);
}

SystemSources sys_e(const Params& params, const std::string& base) {
  SystemSources s = base_sources("SYS-E", base, params);
  s.force.clear();
  for (std::size_t i = 0; i < s.n; ++i) s.force.push_back("e*" + var('y', i));
  return s;
}

SystemSources sys_d(const Params& params, const std::string& base) {
  SystemSources s = base_sources("SYS-D", base, params);
  s.force.clear();
  for (std::size_t i = 0; i < s.n; ++i) s.force.push_back("e*" + var('y', i) + "/(" + s.lagrangian + ")^(1/2)");
  s.slit = true;
  return s;
}

std::vector<BuiltinEntry> build_catalog() {
  std::vector<BuiltinEntry> c;
  c.push_back({"EUCLID", "flat kinetic Lagrangian sum of y_i^2 in n dimensions (param n, default 2), no force", 2,
               {}, "", "Riemannian, x-independent; every structure is trivial", euclid});
  c.push_back({"SYS-A", "damped oscillator L = y1^2 - x1^2 with force -2c y1 (c = 0 undamped)", 1, {{"c", 0.1}},
               "", "Liouville force V = e y with e = -2c on a quadratic base", sys_a});
  c.push_back({"SYS-B", "Riemannian-type L = (1 + x1^2) y1^2 + y2^2, no force", 2, {}, "",
               "quadratic in y, position-dependent metric diag(1 + x1^2, 1)", sys_b});
  c.push_back({"SYS-C", "quartic Finsler metric F^2 = (y1^4 + y2^4)^(1/2), no force", 2, {}, "",
               "genuinely Finsler (nonzero Cartan tensor); singular on the coordinate axes of y", sys_c});
  c.push_back({"SYS-F", "conformally scaled quartic F^2 = (1 + (x1^2 + x2^2)/2) (y1^4 + y2^4)^(1/2), no force", 2,
               {}, "", "position-dependent Finsler metric with nonzero Christoffel symbols", sys_f});
  c.push_back({"SYS-E", "Liouville force V = e y on a base system (param base, default SYS-C)", 2, {{"e", -0.5}},
               "SYS-C", "dissipative iff e < 0; evolution connection shifted by -(e/4) identity", sys_e});
  c.push_back({"SYS-D", "normalized Liouville force V = (e/F) y on a base system (default SYS-C)", 2,
               {{"e", -0.5}}, "SYS-C",
               "zero-homogeneous force: helicoidal tensor vanishes and horizontal curves are geodesics", sys_d});
  return c;
}

}  // namespace

const std::vector<BuiltinEntry>& catalog() {
  static const std::vector<BuiltinEntry> entries = build_catalog();
  return entries;
}

std::optional<BuiltinEntry> lookup(const std::string& id) {
  for (const auto& e : catalog())
    if (e.id == id) return e;
  return std::nullopt;
}

SystemSources sources_of(const std::string& id, const Params& params, const std::string& base) {
  const auto entry = lookup(id);
  if (!entry) throw UnknownBuiltin(id);
  return entry->sources(params, base.empty() ? entry->default_base : base);
}

mechanics::SampleSpec default_sample_spec(const SystemSources& src, std::size_t count) {
  mechanics::SampleSpec spec;
  spec.box = src.default_box;
  spec.count = count;
  spec.min_y_norm = src.slit ? 0.1 : 0.0;
  return spec;
}

mechanics::MechanicalSystem from_sources(const std::string& name, const SystemSources& src, const Params& params) {
  mechanics::MechanicalSystem sys;
  sys.name = name;
  sys.n = src.n;
  sys.params = params;
  sys.slit = src.slit;
  sys.lagrangian = exprdsl::make_scalar_field(src.lagrangian, src.n, params);
  sys.force = exprdsl::make_vector_field(src.force, src.n, params);
  mechanics::validate(sys);
  return sys;
}

mechanics::MechanicalSystem instantiate(const std::string& id, const Params& params, const std::string& base) {
  const SystemSources src = sources_of(id, params, base);
  std::string name = id;
  if (const auto entry = lookup(id); entry && !entry->default_base.empty())
    name += "/" + (base.empty() ? entry->default_base : base);
  return from_sources(name, src, params);
}

}  // namespace lagmech::builtins
