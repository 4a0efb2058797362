#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "lagmech/error.hpp"
#include "lagmech/finsler/finsler.hpp"
#include "lagmech/mechanics/evolution.hpp"
#include "lagmech/trajectories/trajectory.hpp"
#include "support.hpp"

using namespace lagmech;
using namespace lagmech::trajectories;
using namespace testing_support;

namespace {

MechanicalSystem custom(const std::string& L, std::vector<std::string> V, std::size_t n) {
  builtins::SystemSources src;
  src.n = n;
  src.lagrangian = L;
  src.force = std::move(V);
  return builtins::from_sources("custom", src, {});
}

IntegratorConfig rk4(double h, double t_end, std::size_t every = 1) {
  IntegratorConfig cfg;
  cfg.step = h;
  cfg.t_end = t_end;
  cfg.record_every = every;
  return cfg;
}

double max_rel_drift(const std::vector<double>& v) {
  double d = 0.0;
  for (double e : v) d = std::max(d, std::abs(e - v.front()) / std::abs(v.front()));
  return d;
}

void expect_well_formed(const Trajectory& tr) {
  const std::size_t n = tr.size();
  ASSERT_GT(n, 0u);
  EXPECT_EQ(tr.state.size(), n);
  EXPECT_EQ(tr.energy.size(), n);
  EXPECT_EQ(tr.lagrangian.size(), n);
  EXPECT_EQ(tr.power.size(), n);
  EXPECT_EQ(tr.el_residual.size(), n);
  for (std::size_t k = 1; k < n; ++k) EXPECT_GT(tr.t[k], tr.t[k - 1]);
}

}  // namespace

TEST(Evolution, UndampedOscillatorReturnsAfterOnePeriod) {
  const auto sys = builtins::instantiate("SYS-A", {{"c", 0.0}});
  const auto tr = integrate_evolution(sys, pt({1}, {0}), rk4(1e-3, 2 * std::numbers::pi, 100));
  expect_well_formed(tr);
  EXPECT_EQ(tr.status, Status::Completed);
  EXPECT_DOUBLE_EQ(tr.t.back(), 2 * std::numbers::pi);
  EXPECT_NEAR(tr.state.back().x[0], 1.0, 1e-6);
  EXPECT_NEAR(tr.state.back().y[0], 0.0, 1e-6);
}

TEST(Evolution, DampedOscillatorEnergyStrictlyDecreases) {
  const auto sys = builtins::instantiate("SYS-A", {{"c", 0.1}});
  const auto tr = integrate_evolution(sys, pt({1}, {0}), rk4(1e-3, 10, 10));
  expect_well_formed(tr);
  for (std::size_t k = 1; k < tr.size(); ++k) EXPECT_LT(tr.energy[k], tr.energy[k - 1]) << "t=" << tr.t[k];
  for (double p : tr.power) EXPECT_LE(p, 0.0);
}

TEST(Evolution, ZeroDurationGivesSingleSample) {
  for (const auto& v : builtin_variants()) {
    const auto p0 = samples(v, 5).back();
    const auto tr = integrate_evolution(make(v), p0, rk4(1e-3, 0.0));
    ASSERT_EQ(tr.size(), 1u) << v.label();
    EXPECT_EQ(tr.t[0], 0.0);
    EXPECT_EQ(tr.state[0].x, p0.x);
    EXPECT_EQ(tr.state[0].y, p0.y);
  }
}

TEST(Evolution, RecordsInitialTraces) {
  const auto sys = builtins::instantiate("SYS-A", {{"c", 0.1}});
  const auto tr = integrate_evolution(sys, pt({1}, {2}), rk4(1e-3, 0.0));
  // E = y^2 + x^2, L = y^2 - x^2, power = -2c y^2
  EXPECT_DOUBLE_EQ(tr.energy[0], 5.0);
  EXPECT_DOUBLE_EQ(tr.lagrangian[0], 3.0);
  EXPECT_NEAR(tr.power[0], -0.8, 1e-15);
}

TEST(Evolution, LagrangeResidualSmallAlongSolutions) {
  for (const auto& v : builtin_variants()) {
    const auto sys = make(v);
    const auto pts = samples(v, 3);
    const auto tr = integrate_evolution(sys, pts.back(), rk4(1e-3, 1.0, 50));
    for (std::size_t k = 0; k < tr.size(); ++k) {
      const auto sigma = mechanics::sigma_at(sys, tr.state[k]);
      double s = 0.0;
      for (double c : sigma) s = std::max(s, std::abs(c));
      EXPECT_LE(tr.el_residual[k], 1e-6 * (1.0 + s)) << v.label() << " t=" << tr.t[k];
    }
  }
}

TEST(Evolution, RecordEveryThinsTraces) {
  const auto sys = builtins::instantiate("SYS-A", {{"c", 0.1}});
  const auto dense = integrate_evolution(sys, pt({1}, {0}), rk4(0.01, 1.0));
  const auto sparse = integrate_evolution(sys, pt({1}, {0}), rk4(0.01, 1.0, 7));
  EXPECT_EQ(dense.size(), 101u);
  // 0, 7, 14, ..., 98 and the final step at t = 1
  EXPECT_EQ(sparse.size(), 16u);
  EXPECT_DOUBLE_EQ(sparse.t.back(), 1.0);
  EXPECT_EQ(sparse.state.back().x, dense.state.back().x);
}

TEST(Evolution, FourthOrderConvergence) {
  const auto sys = builtins::instantiate("SYS-A", {{"c", 0.1}});
  const double h = 0.1;
  const auto coarse = integrate_evolution(sys, pt({1}, {0}), rk4(h, 10));
  const auto half = integrate_evolution(sys, pt({1}, {0}), rk4(h / 2, 10));
  const auto ref = integrate_evolution(sys, pt({1}, {0}), rk4(h / 4, 10));
  const double ratio = max_state_deviation(coarse, ref, 1, 4) / max_state_deviation(half, ref, 2, 4);
  EXPECT_GE(ratio, 12.0);
  EXPECT_LE(ratio, 20.0);
}

TEST(Evolution, AdaptiveMatchesFixedStep) {
  const auto sys = builtins::instantiate("SYS-A", {{"c", 0.1}});
  IntegratorConfig cfg;
  cfg.method = Method::Rk45Adaptive;
  cfg.t_end = 10;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-12;
  const auto adaptive = integrate_evolution(sys, pt({1}, {0}), cfg);
  const auto fixed = integrate_evolution(sys, pt({1}, {0}), rk4(1e-3, 10));
  expect_well_formed(adaptive);
  EXPECT_DOUBLE_EQ(adaptive.t.back(), 10.0);
  EXPECT_NEAR(adaptive.state.back().x[0], fixed.state.back().x[0], 1e-9);
  EXPECT_NEAR(adaptive.state.back().y[0], fixed.state.back().y[0], 1e-9);
}

TEST(Evolution, SingularMetricTruncates) {
  // g11 = exp(-x1) decays below the regularity gate in finite time.
  const auto sys = custom("exp(-x1)*y1^2 + y2^2", {"0", "0"}, 2);
  for (auto method : {Method::Rk4Fixed, Method::Rk45Adaptive}) {
    auto cfg = rk4(1e-3, 3.0);
    cfg.method = method;
    const auto tr = integrate_evolution(sys, pt({0, 0}, {1, 0}), cfg);
    expect_well_formed(tr);
    EXPECT_EQ(tr.status, Status::SingularMetricStop);
    EXPECT_LT(tr.t.back(), 2.0 + 1e-9);
    for (const auto& p : tr.state)
      for (double c : p.y) EXPECT_TRUE(std::isfinite(c));
  }
}

TEST(Evolution, DomainErrorTruncates) {
  const auto sys = custom("y1^2 - log(x1) + y2^2", {"0", "0"}, 2);
  const auto tr = integrate_evolution(sys, pt({1, 0}, {0, 0}), rk4(1e-3, 5.0));
  expect_well_formed(tr);
  EXPECT_EQ(tr.status, Status::DomainStop);
  EXPECT_GT(tr.state.back().x[0], 0.0);
  EXPECT_FALSE(tr.stop_reason.empty());
}

TEST(Evolution, SlitFloorStopsAtZeroSection) {
  // Constant deceleration on a slit line: y = 1 - t reaches the zero section at t = 1.
  builtins::SystemSources src;
  src.n = 1;
  src.lagrangian = "y1^2";
  src.force = {"-2*y1/(y1^2)^(1/2)"};
  src.slit = true;
  const auto sys = builtins::from_sources("brake", src, {});
  const auto tr = integrate_evolution(sys, pt({0}, {1}), rk4(1.0 / 1024, 2.0));
  expect_well_formed(tr);
  EXPECT_EQ(tr.status, Status::DomainStop);
  EXPECT_LT(tr.t.back(), 1.0);
  EXPECT_GT(tr.state.back().y[0], 0.0);
}

TEST(Evolution, SingularInitialPointThrows) {
  const auto sys = builtins::instantiate("SYS-C", {});
  EXPECT_THROW(integrate_evolution(sys, pt({0, 0}, {1, 0}), rk4(1e-3, 1.0)), SingularMetric);
}

TEST(Evolution, InvalidConfigRejected) {
  const auto sys = builtins::instantiate("SYS-A", {{"c", 0.1}});
  EXPECT_THROW(integrate_evolution(sys, pt({1}, {0}), rk4(0.0, 1.0)), ConfigError);
  EXPECT_THROW(integrate_evolution(sys, pt({1}, {0}), rk4(1e-3, -1.0)), ConfigError);
  EXPECT_THROW(integrate_evolution(sys, pt({1}, {0}), rk4(1e-3, 1.0, 0)), ConfigError);
  EXPECT_THROW(integrate_evolution(sys, pt({1, 2}, {0, 0}), rk4(1e-3, 1.0)), ConfigError);
  auto cfg = rk4(1e-3, 1.0);
  cfg.method = Method::Rk45Adaptive;
  cfg.rel_tol = 1e-16;
  EXPECT_THROW(integrate_evolution(sys, pt({1}, {0}), cfg), ConfigError);
  cfg.rel_tol = 0.1;
  EXPECT_THROW(integrate_evolution(sys, pt({1}, {0}), cfg), ConfigError);
}

TEST(Horizontal, UnforcedQuarticKeepsSquaredNorm) {
  const auto sys = builtins::instantiate("SYS-C", {});
  const auto tr = integrate_horizontal(sys, pt({0, 0}, {1, 0.5}), rk4(1e-3, 10, 10));
  expect_well_formed(tr);
  EXPECT_EQ(tr.status, Status::Completed);
  EXPECT_LE(max_rel_drift(tr.lagrangian), 1e-6);
}

TEST(Horizontal, NormalizedLiouvilleFollowsGeodesic) {
  for (const char* base : {"SYS-C", "SYS-F"}) {
    const auto forced = builtins::instantiate("SYS-D", {{"e", -0.5}}, base);
    const auto free = builtins::instantiate(base, {});
    const auto p0 = pt({0, 0}, {1, 0.5});
    const auto h = integrate_horizontal(forced, p0, rk4(1e-3, 10, 10));
    const auto g = integrate_evolution(free, p0, rk4(1e-3, 10, 10));
    ASSERT_EQ(h.size(), g.size());
    EXPECT_LE(max_state_deviation(h, g), 1e-6) << base;
    EXPECT_LE(max_rel_drift(h.lagrangian), 1e-6) << base;
  }
}

TEST(Horizontal, EuclideanStraightLine) {
  const auto sys = builtins::instantiate("EUCLID", {});
  const auto tr = integrate_horizontal(sys, pt({0, 0}, {0.3, -1.2}), rk4(0.01, 2, 10));
  for (std::size_t k = 0; k < tr.size(); ++k) {
    EXPECT_NEAR(tr.state[k].x[0], 0.3 * tr.t[k], 1e-12);
    EXPECT_NEAR(tr.state[k].x[1], -1.2 * tr.t[k], 1e-12);
  }
}

TEST(Geodesic, MatchesUnforcedEvolutionOnFinslerBuiltins) {
  std::mt19937 rng(11);
  for (const char* id : {"SYS-C", "SYS-F", "SYS-B"}) {
    const auto sys = builtins::instantiate(id, {});
    for (int k = 0; k < 3; ++k) {
      const auto p0 = pt(random_vector(rng, 2, -0.5, 0.5), random_vector(rng, 2, 0.4, 1.5));
      const auto geo = integrate_geodesic(sys, p0, rk4(1e-3, 2, 20));
      const auto evo = integrate_evolution(sys, p0, rk4(1e-3, 2, 20));
      ASSERT_EQ(geo.size(), evo.size());
      EXPECT_LE(max_state_deviation(geo, evo), 1e-8) << id;
    }
  }
}

TEST(Geodesic, FlatMetricStraightLines) {
  const auto sys = builtins::instantiate("EUCLID", {{"n", 3}});
  const auto tr = integrate_geodesic(sys, pt({1, 0, -1}, {0.5, 0.25, 2}), rk4(0.01, 1, 10));
  const auto& end = tr.state.back();
  EXPECT_NEAR(end.x[0], 1.5, 1e-12);
  EXPECT_NEAR(end.x[1], 0.25, 1e-12);
  EXPECT_NEAR(end.x[2], 1.0, 1e-12);
}

TEST(Geodesic, RiemannianEnergyConstant) {
  const auto sys = builtins::instantiate("SYS-B", {});
  const auto tr = integrate_geodesic(sys, pt({1, 0}, {1, 0}), rk4(1e-3, 10, 10));
  EXPECT_EQ(tr.status, Status::Completed);
  EXPECT_LE(max_rel_drift(tr.energy), 1e-6);
}

TEST(Geodesic, RejectsNonHomogeneousLagrangian) {
  const auto sys = custom("y1^2 + y1", {"0"}, 1);
  EXPECT_THROW(integrate_geodesic(sys, pt({0}, {1}), rk4(1e-3, 1)), ConfigError);
}

TEST(EnergyAudit, UnforcedBalances) {
  for (const char* id : {"SYS-B", "SYS-C", "EUCLID"}) {
    const auto sys = builtins::instantiate(id, {});
    const auto tr = integrate_evolution(sys, pt({0.2, 0.1}, {1, 0.5}), rk4(1e-3, 5, 10));
    const auto audit = energy_audit(tr);
    EXPECT_LE(audit.max_balance_error, 1e-6) << id;
    for (double p : tr.power) EXPECT_EQ(p, 0.0);
    EXPECT_LE(max_rel_drift(tr.energy), 1e-9) << id;
  }
}

TEST(EnergyAudit, DampedOscillator) {
  const auto sys = builtins::instantiate("SYS-A", {{"c", 0.1}});
  const auto audit = energy_audit(integrate_evolution(sys, pt({1}, {0}), rk4(1e-3, 10)));
  EXPECT_LE(audit.max_balance_error, 1e-5);
  EXPECT_TRUE(audit.monotone_nonincreasing);
}

TEST(EnergyAudit, PositiveLiouvilleGainsEnergy) {
  const auto sys = builtins::instantiate("SYS-E", {{"e", 0.3}}, "SYS-C");
  const auto tr = integrate_evolution(sys, pt({0, 0}, {1, 0.5}), rk4(1e-3, 2, 10));
  const auto audit = energy_audit(tr);
  EXPECT_FALSE(audit.monotone_nonincreasing);
  EXPECT_GT(tr.energy.back(), tr.energy.front());
  EXPECT_LE(audit.max_balance_error, 1e-5);
}

TEST(EnergyAudit, NonUniformGrid) {
  Trajectory tr;
  for (double t : {0.0, 0.1, 0.35, 0.4, 1.0}) {
    tr.t.push_back(t);
    tr.energy.push_back(3 * t * t - t);  // exact for quadratics
    tr.power.push_back(6 * t - 1);
  }
  EXPECT_LE(energy_audit(tr).max_balance_error, 1e-12);
  EXPECT_FALSE(energy_audit(tr).monotone_nonincreasing);
}

TEST(Csv, RoundTripFullPrecision) {
  const auto sys = builtins::instantiate("SYS-D", {{"e", -0.5}});
  const auto tr = integrate_evolution(sys, pt({0.1, -0.2}, {1, 0.5}), rk4(1e-2, 1, 3));
  std::stringstream ss;
  write_csv(ss, tr);
  const std::string text = ss.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "t,x1,x2,y1,y2,E,L,power,el_residual");
  const auto back = read_csv(ss);
  ASSERT_EQ(back.size(), tr.size());
  for (std::size_t k = 0; k < tr.size(); ++k) {
    EXPECT_EQ(back.t[k], tr.t[k]);
    EXPECT_EQ(back.state[k].x, tr.state[k].x);
    EXPECT_EQ(back.state[k].y, tr.state[k].y);
    EXPECT_EQ(back.energy[k], tr.energy[k]);
    EXPECT_EQ(back.lagrangian[k], tr.lagrangian[k]);
    EXPECT_EQ(back.power[k], tr.power[k]);
    EXPECT_EQ(back.el_residual[k], tr.el_residual[k]);
  }
  std::stringstream again;
  write_csv(again, back);
  EXPECT_EQ(again.str(), text);
}

TEST(Csv, MalformedInputRejected) {
  std::stringstream bad_header("t,x1,y1,E,L,power\n");
  EXPECT_THROW(read_csv(bad_header), ConfigError);
  std::stringstream bad_cell("t,x1,y1,E,L,power,el_residual\n0,1,2,3,4,5,abc\n");
  EXPECT_THROW(read_csv(bad_cell), ConfigError);
  std::stringstream short_row("t,x1,y1,E,L,power,el_residual\n0,1,2\n");
  EXPECT_THROW(read_csv(short_row), ConfigError);
}

TEST(Names, RoundTrip) {
  for (auto c : {Curve::Evolution, Curve::Horizontal, Curve::Geodesic}) EXPECT_EQ(parse_curve(to_string(c)), c);
  for (auto m : {Method::Rk4Fixed, Method::Rk45Adaptive}) EXPECT_EQ(parse_method(to_string(m)), m);
  for (auto s : {Status::Completed, Status::SingularMetricStop, Status::DomainStop}) EXPECT_EQ(parse_status(to_string(s)), s);
  EXPECT_THROW(parse_curve("spiral"), ConfigError);
}
