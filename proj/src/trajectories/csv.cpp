#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "lagmech/error.hpp"
#include "lagmech/trajectories/trajectory.hpp"

namespace lagmech::trajectories {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::vector<std::string> header_for(std::size_t n) {
  std::vector<std::string> h{"t"};
  for (std::size_t i = 1; i <= n; ++i) h.push_back("x" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) h.push_back("y" + std::to_string(i));
  for (const char* c : {"E", "L", "power", "el_residual"}) h.emplace_back(c);
  return h;
}

double to_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError("csv line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

}  // namespace

void write_csv(std::ostream& os, const Trajectory& traj) {
  const std::size_t n = traj.state.empty() ? 0 : traj.state.front().dim();
  const auto h = header_for(n);
  for (std::size_t i = 0; i < h.size(); ++i) os << (i ? "," : "") << h[i];
  os << '\n';
  for (std::size_t k = 0; k < traj.size(); ++k) {
    os << fmt(traj.t[k]);
    for (double v : traj.state[k].x) os << ',' << fmt(v);
    for (double v : traj.state[k].y) os << ',' << fmt(v);
    os << ',' << fmt(traj.energy[k]) << ',' << fmt(traj.lagrangian[k]) << ',' << fmt(traj.power[k]) << ','
       << fmt(traj.el_residual[k]) << '\n';
  }
}

Trajectory read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("csv: missing header");
  const auto head = split(line);
  if (head.size() < 7 || (head.size() - 5) % 2 != 0) throw ConfigError("csv: unexpected header width");
  const std::size_t n = (head.size() - 5) / 2;
  if (head != header_for(n)) throw ConfigError("csv: header does not match t,x1..xn,y1..yn,E,L,power,el_residual");

  Trajectory tr;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != head.size()) throw ConfigError("csv line " + std::to_string(lineno) + ": wrong column count");
    std::vector<double> v(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) v[i] = to_double(cells[i], lineno);
    tr.t.push_back(v[0]);
    tr.state.push_back({std::vector<double>(v.begin() + 1, v.begin() + 1 + n),
                        std::vector<double>(v.begin() + 1 + n, v.begin() + 1 + 2 * n)});
    tr.energy.push_back(v[2 * n + 1]);
    tr.lagrangian.push_back(v[2 * n + 2]);
    tr.power.push_back(v[2 * n + 3]);
    tr.el_residual.push_back(v[2 * n + 4]);
  }
  return tr;
}

}  // namespace lagmech::trajectories
