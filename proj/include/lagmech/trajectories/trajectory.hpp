#pragma once

// Integration of the three second-order families: evolution curves
// (acceleration -2G), horizontal curves (-N y) and geodesics (-γ y y).

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "lagmech/mechanics/system.hpp"

namespace lagmech::trajectories {

using mechanics::MechanicalSystem;
using numkernel::PhasePoint;

enum class Method { Rk4Fixed, Rk45Adaptive };
enum class Curve { Evolution, Horizontal, Geodesic };
enum class Status { Completed, SingularMetricStop, DomainStop };

struct IntegratorConfig {
  Method method = Method::Rk4Fixed;
  double step = 1e-3;  // fixed step, or the first trial step for rk45
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.1;
  double t_end = 10.0;
  std::size_t record_every = 1;
};

// Throws ConfigError.
void validate(const IntegratorConfig& cfg);

struct Trajectory {
  Curve curve = Curve::Evolution;
  std::vector<double> t;
  std::vector<PhasePoint> state;
  std::vector<double> energy;
  std::vector<double> lagrangian;
  std::vector<double> power;        // σ_i y^i
  std::vector<double> el_residual;  // max_i |d/dt(dL/dy^i) - dL/dx^i - σ_i|
  Status status = Status::Completed;
  std::string stop_reason;

  std::size_t size() const noexcept { return t.size(); }
};

// A failure at p0 itself throws (SingularMetric, DomainError); later failures
// end the trajectory at the last good state with the matching status.
Trajectory integrate(const MechanicalSystem& sys, const PhasePoint& p0, const IntegratorConfig& cfg, Curve curve);
Trajectory integrate_evolution(const MechanicalSystem& sys, const PhasePoint& p0, const IntegratorConfig& cfg);
Trajectory integrate_horizontal(const MechanicalSystem& sys, const PhasePoint& p0, const IntegratorConfig& cfg);
// Requires a Lagrangian that passes the 2-homogeneity gate at p0 (ConfigError otherwise).
Trajectory integrate_geodesic(const MechanicalSystem& sys, const PhasePoint& p0, const IntegratorConfig& cfg);

// Acceleration d^2x/dt^2 of the given family at p.
std::vector<double> acceleration(const MechanicalSystem& sys, const PhasePoint& p, Curve curve);

struct EnergyAudit {
  double max_balance_error = 0.0;  // |dE/dt - power| at interior samples
  bool monotone_nonincreasing = true;
};
// dE/dt by three-point centered differences on a possibly non-uniform grid.
EnergyAudit energy_audit(const Trajectory& traj);

// max over shared sample indices of the state max-norm difference.
double max_state_deviation(const Trajectory& a, const Trajectory& b, std::size_t stride_a = 1, std::size_t stride_b = 1);

Method parse_method(const std::string& s);
Curve parse_curve(const std::string& s);
std::string to_string(Method m);
std::string to_string(Curve c);
std::string to_string(Status s);
Status parse_status(const std::string& s);

// Header t,x1..xn,y1..yn,E,L,power,el_residual; values printed with %.17g.
void write_csv(std::ostream& os, const Trajectory& traj);
// Throws ConfigError on malformed input. Status and curve are not stored in CSV.
Trajectory read_csv(std::istream& is);

}  // namespace lagmech::trajectories
