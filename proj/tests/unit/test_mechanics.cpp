#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lagmech/error.hpp"
#include "lagmech/mechanics/classify.hpp"
#include "lagmech/mechanics/evolution.hpp"
#include "support.hpp"

using namespace lagmech;
using namespace lagmech::mechanics;
using namespace testing_support;

namespace {

MechanicalSystem custom(const std::string& L, std::vector<std::string> V, std::size_t n, Params params = {}) {
  builtins::SystemSources src;
  src.n = n;
  src.lagrangian = L;
  src.force = std::move(V);
  return builtins::from_sources("custom", src, params);
}

// SYS-B base with a polynomial, non-symmetric force.
MechanicalSystem forced_b() {
  return custom("(1 + x1^2)*y1^2 + y2^2", {"x2*y2 - y1^3 + 0.5*y1*y2", "sin(x1)*y1*y2 - 0.3*y1"}, 2);
}

// Gyroscopic force V = b (y2, -y1) on the Euclidean plane (g = I, σ = V):
// its y-Jacobian is antisymmetric.
MechanicalSystem gyroscopic() { return custom("y1^2 + y2^2", {"b*y2", "-b*y1"}, 2, {{"b", 1.5}}); }

std::vector<PhasePoint> random_points(std::mt19937& rng, std::size_t n, int count, double ylo = -2, double yhi = 2) {
  std::vector<PhasePoint> out;
  for (int k = 0; k < count; ++k) out.push_back(pt(random_vector(rng, n, -1.5, 1.5), random_vector(rng, n, ylo, yhi)));
  return out;
}

std::vector<PhasePoint> slit_points(std::mt19937& rng, int count) {
  std::vector<PhasePoint> out;
  while (static_cast<int>(out.size()) < count) {
    auto p = pt(random_vector(rng, 2), random_vector(rng, 2, 0.3, 2.0));
    out.push_back(p);
  }
  return out;
}

}  // namespace

TEST(Sigma, Examples) {
  const auto euclid = builtins::instantiate("EUCLID", {});
  for (double s : sigma_at(euclid, pt({0.5, 0.5}, {1, 2}))) EXPECT_EQ(s, 0.0);

  const auto liouville = builtins::instantiate("SYS-E", {{"e", -0.5}}, "EUCLID");
  const auto s = sigma_at(liouville, pt({0, 0}, {1, 2}));
  EXPECT_EQ(s[0], -0.5);
  EXPECT_EQ(s[1], -1.0);

  // (e/F) g y at y = (1, 1): g y = (1/sqrt2, 1/sqrt2), F = 2^(1/4)
  const auto sysd = builtins::instantiate("SYS-D", {{"e", -0.5}});
  const auto sd = sigma_at(sysd, pt({0, 0}, {1, 1}));
  const double expect = -0.5 * std::pow(2.0, -0.75);
  EXPECT_NEAR(sd[0], expect, 1e-10);
  EXPECT_NEAR(sd[1], expect, 1e-10);
}

TEST(EvolutionSpray, Examples) {
  const auto b = builtins::instantiate("SYS-B", {});
  const auto p = pt({1, 0}, {1, 1});
  EXPECT_EQ(evolution_spray_at(b, p), core::canonical_spray_at(b.L(), p));
  const auto a = builtins::instantiate("SYS-A", {{"c", 0.1}});
  EXPECT_NEAR(evolution_spray_at(a, pt({1}, {2}))[0], 0.6, 1e-15);
}

TEST(EvolutionConnection, LiouvilleShift) {
  for (const char* base : {"SYS-C", "EUCLID", "SYS-B", "SYS-F"}) {
    const auto sys = builtins::instantiate("SYS-E", {{"e", -1.0}}, base);
    for (const auto& p : samples({"SYS-E", {{"e", -1.0}}, base}, 30)) {
      const auto n = evolution_connection_at(sys, p);
      const auto n0 = core::canonical_connection_at(sys.L(), p);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(n(i, j) - n0(i, j), i == j ? 0.25 : 0.0, 1e-10) << base;
    }
  }
}

TEST(EvolutionConnection, RoutesAgree) {
  const auto sys = forced_b();
  std::mt19937 rng(31);
  for (const auto& p : random_points(rng, 2, 50)) EXPECT_LE(evolution_connection_routes(sys, p).gap, 1e-10);
  const auto v0 = builtins::instantiate("SYS-B", {});
  const auto p = pt({0.3, 0.2}, {1, -1});
  EXPECT_EQ(numkernel::max_abs_diff(evolution_connection_at(v0, p), core::canonical_connection_at(v0.L(), p)), 0.0);
}

TEST(EvolutionEquation, ResidualVanishes) {
  const auto b0 = builtins::instantiate("SYS-B", {});
  const auto p = pt({0.4, -0.1}, {1.2, 0.3});
  EXPECT_NEAR(evolution_equation_residual(b0, p), core::spray_equation_residual(b0.L(), p), 1e-14);

  const auto a = builtins::instantiate("SYS-A", {{"c", 0.1}});
  EXPECT_LE(evolution_equation_residual(a, pt({1}, {2})), 1e-9);

  const auto d = builtins::instantiate("SYS-D", {{"e", -0.5}});
  std::mt19937 rng(37);
  for (const auto& q : slit_points(rng, 100)) EXPECT_LE(evolution_equation_residual(d, q), 1e-8);
  for (const auto& q : random_points(rng, 2, 50)) EXPECT_LE(evolution_equation_residual(forced_b(), q), 1e-8);
}

TEST(Power, Examples) {
  const auto b0 = builtins::instantiate("SYS-B", {});
  EXPECT_EQ(dissipation_power(b0, pt({1, 1}, {1, 1})), 0.0);
  const auto a = builtins::instantiate("SYS-A", {{"c", 0.1}});
  EXPECT_NEAR(dissipation_power(a, pt({1}, {2})), -0.8, 1e-15);
  const auto e = builtins::instantiate("SYS-E", {{"e", -1.0}}, "EUCLID");
  EXPECT_EQ(dissipation_power(e, pt({0, 0}, {1, 2})), -5.0);
  const auto v = force_at(e, pt({0, 0}, {1, 2}));
  EXPECT_EQ(v[0], -1.0);
  EXPECT_EQ(v[1], -2.0);
}

TEST(Power, LiouvilleOnFinslerBaseIsEF2) {
  for (double ev : {-0.7, 0.0, 0.4}) {
    const auto sys = builtins::instantiate("SYS-E", {{"e", ev}});
    for (const auto& p : samples({"SYS-E", {{"e", ev}}, ""}, 30)) {
      const double F2 = numkernel::eval_jet(sys.L(), p, 0).value();
      EXPECT_NEAR(dissipation_power(sys, p), ev * F2, 1e-12 * (1 + F2));
    }
  }
}

TEST(Power, TwoRoutesAgreeEverywhere) {
  for (const auto& v : builtin_variants()) {
    const auto sys = make(v);
    for (const auto& p : samples(v, 40))
      EXPECT_NEAR(dissipation_power(sys, p), dissipation_power_via_metric(sys, p), 1e-10) << v.label();
  }
}

TEST(Bundle, ZeroForce) {
  const auto b = evolution_bundle_at(builtins::instantiate("SYS-B", {}), pt({0.3, 0}, {1, 2}));
  EXPECT_EQ(numkernel::max_abs(b.sigma), 0.0);
  EXPECT_EQ(numkernel::max_abs(b.helicoidal), 0.0);
  EXPECT_EQ(numkernel::max_abs(b.gbar), 0.0);
  EXPECT_EQ(b.power, 0.0);
}

TEST(Bundle, LiouvilleOnLagrangeBase) {
  // gbar = (e/2)(2 C_ijk y^k + g_ij); SYS-F is a Lagrangian with nonzero C.
  const double e = 0.6;
  const auto sys = custom("y1^4 + y1^2*y2^2 + 2*y2^2 + x1*y1", {"e*y1", "e*y2"}, 2, {{"e", e}});
  std::mt19937 rng(41);
  for (const auto& p : slit_points(rng, 40)) {
    const auto b = evolution_bundle_at(sys, p);
    const auto g = core::metric_at(sys.L(), p).entries;
    const auto C = core::cartan_tensor_at(sys.L(), p);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        double cy = 0.0;
        for (std::size_t k = 0; k < 2; ++k) cy += C(i, j, k) * p.y[k];
        EXPECT_NEAR(b.gbar(i, j), 0.5 * e * (2 * cy + g(i, j)), 1e-8);
      }
    EXPECT_LE(numkernel::max_abs(b.helicoidal), 1e-10);
  }
}

TEST(Bundle, NormalizedLiouvilleHasNoHelicoidalPart) {
  for (const char* base : {"SYS-C", "SYS-F"}) {
    const auto sys = builtins::instantiate("SYS-D", {{"e", -0.5}}, base);
    for (const auto& p : samples({"SYS-D", {{"e", -0.5}}, base}, 60))
      EXPECT_LE(numkernel::max_abs(evolution_bundle_at(sys, p).helicoidal), 1e-10) << base;
  }
}

TEST(Bundle, DecompositionAndRouteAgreement) {
  std::vector<MechanicalSystem> systems{forced_b(), gyroscopic()};
  for (const auto& v : builtin_variants()) systems.push_back(make(v));
  std::mt19937 rng(43);
  for (const auto& sys : systems) {
    const auto pts = sys.slit ? slit_points(rng, 30) : random_points(rng, sys.n, 30);
    for (const auto& p : pts) {
      EvolutionBundle b;
      try {
        b = evolution_bundle_at(sys, p);
      } catch (const SingularMetric&) {
        continue;
      }
      const std::size_t n = p.dim();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          EXPECT_NEAR(4 * b.gbar(i, j), b.dsigma_dy(i, j) + b.dsigma_dy(j, i), 1e-12);
          EXPECT_NEAR(2 * b.helicoidal(i, j), b.dsigma_dy(i, j) - b.dsigma_dy(j, i), 1e-12);
          EXPECT_EQ(b.helicoidal(i, j), -b.helicoidal(j, i));
          EXPECT_EQ(b.gbar(i, j), b.gbar(j, i));
        }
      EXPECT_LE(b.gbar_route_gap, 1e-8 * (1 + numkernel::max_abs(b.gbar_direct))) << sys.name;
    }
  }
}

TEST(Symplectic, Examples) {
  const auto b0 = builtins::instantiate("SYS-B", {});
  const auto e = builtins::instantiate("SYS-E", {{"e", -0.5}});
  for (const auto& p : samples({"SYS-E", {{"e", -0.5}}, ""}, 40)) {
    EXPECT_LE(symplectic_defect(e, p), 1e-8);
    EXPECT_LE(symplectic_defect(b0, pt(p.x, p.y)), 1e-8);
  }
}

TEST(Symplectic, HorizontalTwoFormIsMinusHelicoidal) {
  std::mt19937 rng(47);
  for (const auto& sys : {gyroscopic(), forced_b()}) {
    for (const auto& p : random_points(rng, 2, 30)) {
      const auto c = symplectic_check(sys, p);
      EXPECT_LE(c.helicoidal_gap, 1e-8);
      EXPECT_EQ(c.omega_horizontal(0, 1), -c.omega_horizontal(1, 0));
      EXPECT_NEAR(std::abs(c.omega_horizontal(1, 0)), c.defect, 0.0);
    }
  }
  // J = [[0, b], [-b, 0]], F_12 = b
  const auto c = symplectic_check(gyroscopic(), pt({0, 0}, {1, 1}));
  EXPECT_NEAR(c.defect, 1.5, 1e-12);
}

TEST(HorizontalL, Examples) {
  for (double v : horizontal_dL(builtins::instantiate("EUCLID", {}), pt({1, 2}, {3, 4}))) EXPECT_EQ(v, 0.0);
  const auto d = builtins::instantiate("SYS-D", {{"e", -0.5}});
  for (const auto& p : samples({"SYS-D", {{"e", -0.5}}, ""}, 40)) {
    const auto l = horizontal_dL(d, p);
    EXPECT_NEAR(l[0] * p.y[0] + l[1] * p.y[1], 0.0, 1e-8);
  }
  std::mt19937 rng(53);
  for (const auto& p : random_points(rng, 2, 50)) EXPECT_LE(horizontal_dL_routes(forced_b(), p).gap, 1e-8);
  EXPECT_NEAR(horizontal_dL(builtins::instantiate("SYS-A", {{"c", 0.1}}), pt({1}, {2}))[0], -2.2, 1e-13);
}

TEST(HorizontalE, Examples) {
  for (double v : horizontal_dE(builtins::instantiate("EUCLID", {}), pt({1, 2}, {3, 4}))) EXPECT_EQ(v, 0.0);
  const auto d = builtins::instantiate("SYS-D", {{"e", -0.5}});
  for (const auto& p : samples({"SYS-D", {{"e", -0.5}}, ""}, 40))
    for (double v : horizontal_dE(d, p)) EXPECT_LE(std::abs(v), 1e-8);

  // Finsler base, any force: only the force term survives.
  const auto f = custom("(1 + 0.5*(x1^2 + x2^2))*(y1^4 + y2^4)^(1/2)", {"x1*y2 + y1^2", "y1*y2 - x2"}, 2);
  std::mt19937 rng(59);
  for (const auto& p : slit_points(rng, 30)) {
    const auto r = horizontal_dE_routes(f, p);
    EXPECT_LE(r.gap, 1e-8);
    const auto g = core::metric_at(f.L(), p).entries;
    const auto dV = force_jacobian_y(f, p);
    for (std::size_t i = 0; i < 2; ++i) {
      double expect = 0.0;
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k) expect += 0.5 * g(j, k) * dV(j, i) * p.y[k];
      EXPECT_NEAR(r.direct[i], expect, 1e-8);
    }
  }
  EXPECT_NEAR(horizontal_dE(builtins::instantiate("SYS-A", {{"c", 0.1}}), pt({1}, {2}))[0], 1.8, 1e-13);
  for (const auto& p : random_points(rng, 2, 40)) EXPECT_LE(horizontal_dE_routes(forced_b(), p).gap, 1e-8);
}

TEST(FirstIntegrals, Examples) {
  const auto d = builtins::instantiate("SYS-D", {{"e", -0.5}});
  for (const auto& p : samples({"SYS-D", {{"e", -0.5}}, ""}, 40)) {
    const auto r = first_integral_conditions(d, p);
    EXPECT_LE(std::abs(r.lagrangian_condition_residual), 1e-8);
    EXPECT_LE(std::abs(r.energy_condition_residual), 1e-8);
  }
  const auto z = first_integral_conditions(builtins::instantiate("EUCLID", {}), pt({0.5, 1}, {1, -1}));
  EXPECT_EQ(z.lagrangian_condition_residual, 0.0);
  EXPECT_EQ(z.energy_condition_residual, 0.0);

  // L = y^2 - x^2, V = -0.2 y at (1, 2): force term -0.8, spray term 4 (2G̊ - N̊ y) y = 8.
  const auto a = first_integral_conditions(builtins::instantiate("SYS-A", {{"c", 0.1}}), pt({1}, {2}));
  EXPECT_NEAR(a.energy_condition_residual, 7.2, 1e-13);
  EXPECT_NEAR(a.lagrangian_condition_residual, -17.6, 1e-13);
}

TEST(FirstIntegrals, EnergyResidualIsTwiceContractedHorizontalDerivative) {
  std::mt19937 rng(61);
  for (const auto& p : random_points(rng, 2, 30)) {
    const auto sys = forced_b();
    const auto dE = horizontal_dE(sys, p);
    const double contracted = 2 * (dE[0] * p.y[0] + dE[1] * p.y[1]);
    EXPECT_NEAR(first_integral_conditions(sys, p).energy_condition_residual, contracted, 1e-8 * (1 + std::abs(contracted)));
  }
}

TEST(LieTheta, Examples) {
  EXPECT_LE(lie_theta_residual(builtins::instantiate("EUCLID", {}), pt({0.1, 0.2}, {3, -1})), 1e-12);
  std::mt19937 rng(67);
  const auto a = builtins::instantiate("SYS-A", {{"c", 0.1}});
  for (const auto& p : random_points(rng, 1, 100)) EXPECT_LE(lie_theta_residual(a, p), 1e-8);
  const auto d = builtins::instantiate("SYS-D", {{"e", -0.5}});
  for (const auto& p : slit_points(rng, 100)) EXPECT_LE(lie_theta_residual(d, p), 1e-7);
}

TEST(Classify, ZeroForceIsMetricAndSymplectic) {
  for (const char* id : {"EUCLID", "SYS-B", "SYS-C", "SYS-F"}) {
    const auto rep = classify(builtins::instantiate(id, {}), samples({id, {}, ""}));
    EXPECT_TRUE(rep.is_metric) << id;
    EXPECT_TRUE(rep.is_symplectic) << id;
    EXPECT_EQ(rep.dissipative_at_samples.worst_power, 0.0);
    EXPECT_TRUE(rep.dissipative_at_samples.weak);
    EXPECT_FALSE(rep.dissipative_at_samples.strict);
    EXPECT_TRUE(rep.failures.empty());
  }
}

TEST(Classify, NormalizedLiouville) {
  for (double e : {-0.5, 0.0, 0.5}) {
    const Variant v{"SYS-D", {{"e", e}}, ""};
    const auto rep = classify(make(v), samples(v));
    EXPECT_TRUE(rep.is_symplectic);
    EXPECT_EQ(rep.dissipative_at_samples.strict, e < 0);
    EXPECT_EQ(rep.dissipative_at_samples.weak, e <= 0);
  }
}

TEST(Classify, LiouvilleOnZeroHomogeneousMetricIsNotMetric) {
  const Variant v{"SYS-E", {{"e", -0.5}}, "EUCLID"};
  const auto rep = classify(make(v), samples(v));
  EXPECT_FALSE(rep.is_metric);
  EXPECT_TRUE(rep.is_symplectic);
  EXPECT_TRUE(rep.dissipative_at_samples.weak);
}

TEST(Classify, ReportsSingularPointsWithoutAborting) {
  std::vector<PhasePoint> pts{pt({0, 0}, {1, 1}), pt({0, 0}, {0, 1}), pt({0, 0}, {1, 0.5})};
  const auto rep = classify(builtins::instantiate("SYS-C", {}), pts);
  EXPECT_EQ(rep.points_tested, 2u);
  ASSERT_EQ(rep.failures.size(), 1u);
  EXPECT_EQ(rep.failures[0].index, 1u);
}

TEST(Classify, DeterministicAcrossRuns) {
  const Variant v{"SYS-E", {{"e", 0.3}}, "SYS-F"};
  const auto sys = make(v);
  const auto pts = samples(v);
  const auto a = classify(sys, pts);
  for (int k = 0; k < 3; ++k) {
    const auto b = classify(sys, pts);
    EXPECT_EQ(a.metric_defect, b.metric_defect);
    EXPECT_EQ(a.symplectic_defect, b.symplectic_defect);
    EXPECT_EQ(a.dissipative_at_samples.worst_power, b.dissipative_at_samples.worst_power);
  }
}

TEST(Sampling, HaltonLeadingPoints) {
  const auto h = halton(2, 3);
  EXPECT_EQ(h[0][0], 0.5);
  EXPECT_DOUBLE_EQ(h[0][1], 1.0 / 3);
  EXPECT_EQ(h[1][0], 0.25);
  EXPECT_DOUBLE_EQ(h[1][1], 2.0 / 3);
  EXPECT_EQ(h[2][0], 0.75);
}

TEST(Sampling, SlitExclusionAndCorners) {
  SampleSpec spec;
  spec.box = {{-1}, {1}, {-1}, {1}};
  spec.count = 50;
  spec.min_y_norm = 0.1;
  const auto pts = generate_samples(spec);
  for (const auto& p : pts) EXPECT_GE(std::abs(p.y[0]), 0.1);
  EXPECT_EQ(pts[0].x[0], -1.0);
  EXPECT_EQ(pts[0].y[0], -1.0);
  EXPECT_EQ(pts[3].x[0], 1.0);
  EXPECT_EQ(pts[3].y[0], 1.0);
}

TEST(Sampling, GridIncludesEndpoints) {
  SampleSpec spec;
  spec.box = {{0, 0}, {1, 1}, {0, 0}, {2, 2}};
  spec.count = 81;
  spec.kind = SampleKind::Grid;
  const auto pts = generate_samples(spec);
  EXPECT_EQ(pts.size(), 81u);
  bool axis = false;
  for (const auto& p : pts) axis = axis || (p.y[0] == 0 && p.y[1] == 2);
  EXPECT_TRUE(axis);
}

TEST(Sampling, RandomIsSeeded) {
  SampleSpec spec;
  spec.box = {{0}, {1}, {0}, {1}};
  spec.kind = SampleKind::Random;
  spec.seed = 9;
  const auto a = generate_samples(spec);
  const auto b = generate_samples(spec);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].x, b[i].x);
  spec.seed = 10;
  EXPECT_NE(generate_samples(spec)[10].x, a[10].x);
}

TEST(Sampling, RejectsBadBoxes) {
  SampleSpec spec;
  spec.box = {{1}, {0}, {0}, {1}};
  EXPECT_THROW(generate_samples(spec), ConfigError);
  EXPECT_THROW(parse_sample_kind("sobol"), ConfigError);
}
