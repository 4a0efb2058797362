#include "lagmech/trajectories/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "lagmech/error.hpp"
#include "lagmech/finsler/finsler.hpp"
#include "lagmech/mechanics/evolution.hpp"

namespace lagmech::trajectories {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::vector<double>;

constexpr double kSlitFloor = 1e-8;

State pack(const PhasePoint& p) {
  State s(p.x);
  s.insert(s.end(), p.y.begin(), p.y.end());
  return s;
}

PhasePoint unpack(const State& s) {
  const std::size_t n = s.size() / 2;
  return {State(s.begin(), s.begin() + n), State(s.begin() + n, s.end())};
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

void check_state(const MechanicalSystem& sys, const PhasePoint& p) {
  for (const auto* v : {&p.x, &p.y})
    for (double c : *v)
      if (!std::isfinite(c)) throw DomainError("state became non-finite");
  if (sys.slit && norm(p.y) < kSlitFloor) throw DomainError("|y| fell below 1e-8 on a slit system");
}

class Recorder {
 public:
  Recorder(const MechanicalSystem& sys, Trajectory& tr) : sys_(sys), tr_(tr) {}

  void record(double t, const PhasePoint& p) {
    check_state(sys_, p);
    const std::size_t n = p.dim();
    const auto jet = numkernel::eval_jet(sys_.L(), p, 2);
    const auto sigma = mechanics::sigma_at(sys_, p);
    const auto a = acceleration(sys_, p, tr_.curve);
    double energy = -jet.value();
    double power = 0.0;
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      energy += p.y[i] * jet.dy(i);
      power += sigma[i] * p.y[i];
      double r = -jet.dx(i) - sigma[i];
      for (std::size_t j = 0; j < n; ++j) r += jet.dxy(i, j) * p.y[j] + jet.dyy(i, j) * a[j];
      residual = std::max(residual, std::abs(r));
    }
    tr_.t.push_back(t);
    tr_.state.push_back(p);
    tr_.energy.push_back(energy);
    tr_.lagrangian.push_back(jet.value());
    tr_.power.push_back(power);
    tr_.el_residual.push_back(residual);
  }

 private:
  const MechanicalSystem& sys_;
  Trajectory& tr_;
};

}  // namespace

void validate(const IntegratorConfig& cfg) {
  if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end)) throw ConfigError("t_end must be finite and >= 0");
  if (!(cfg.step > 0.0) || !std::isfinite(cfg.step)) throw ConfigError("step must be finite and > 0");
  if (cfg.record_every < 1) throw ConfigError("record_every must be >= 1");
  if (cfg.method == Method::Rk45Adaptive) {
    for (double tol : {cfg.rel_tol, cfg.abs_tol})
      if (!(tol >= 1e-14 && tol <= 1e-2)) throw ConfigError("rk45 tolerances must lie in [1e-14, 1e-2]");
    if (!(cfg.max_step > 0.0)) throw ConfigError("max_step must be > 0");
  }
}

std::vector<double> acceleration(const MechanicalSystem& sys, const PhasePoint& p, Curve curve) {
  const std::size_t n = p.dim();
  std::vector<double> a(n, 0.0);
  switch (curve) {
    case Curve::Evolution: {
      const auto spray = mechanics::evolution_spray_at(sys, p);
      for (std::size_t i = 0; i < n; ++i) a[i] = -2.0 * spray[i];
      break;
    }
    case Curve::Horizontal: {
      const auto ny = mechanics::evolution_connection_at(sys, p) * p.y;
      for (std::size_t i = 0; i < n; ++i) a[i] = -ny[i];
      break;
    }
    case Curve::Geodesic: {
      const auto gamma = finsler::christoffel_at(sys, p);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k) a[i] -= gamma(i, j, k) * p.y[j] * p.y[k];
      break;
    }
  }
  for (double c : a)
    if (!std::isfinite(c)) throw DomainError("acceleration is non-finite");
  return a;
}

Trajectory integrate(const MechanicalSystem& sys, const PhasePoint& p0, const IntegratorConfig& cfg, Curve curve) {
  validate(cfg);
  if (p0.x.size() != sys.n || p0.y.size() != sys.n) throw ConfigError("initial point dimension does not match the system");
  if (curve == Curve::Geodesic && !finsler::homogeneity_report(sys, {p0}).finsler_mode)
    throw ConfigError("geodesic curves need a Lagrangian that is 2-homogeneous in y");

  Trajectory tr;
  tr.curve = curve;
  Recorder rec(sys, tr);
  rec.record(0.0, p0);

  auto rhs = [&](const State& s, State& ds, double) {
    const PhasePoint p = unpack(s);
    check_state(sys, p);
    const auto a = acceleration(sys, p, curve);
    const std::size_t n = p.dim();
    ds.resize(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      ds[i] = p.y[i];
      ds[n + i] = a[i];
    }
  };

  State s = pack(p0);
  double t = 0.0;
  std::size_t accepted = 0;
  bool last_recorded = true;

  odeint::runge_kutta4<State> rk4;
  auto rk45 = odeint::make_controlled(cfg.abs_tol, cfg.rel_tol, cfg.max_step, odeint::runge_kutta_dopri5<State>());
  double dt = std::min(cfg.step, cfg.max_step);

  while (t < cfg.t_end) {
    try {
      State next;
      double t_next;
      if (cfg.method == Method::Rk4Fixed) {
        t_next = std::min(static_cast<double>(accepted + 1) * cfg.step, cfg.t_end);
        if (cfg.t_end - t_next < 1e-9 * cfg.step) t_next = cfg.t_end;
        next = s;
        rk4.do_step(rhs, s, t, next, t_next - t);
      } else {
        next = s;
        t_next = t;
        dt = std::min(dt, cfg.t_end - t);
        while (rk45.try_step(rhs, next, t_next, dt) == odeint::fail) {
          if (dt < 1e-14 * std::max(1.0, std::abs(t))) throw DomainError("adaptive step size underflow");
        }
        if (cfg.t_end - t_next < 1e-12 * std::max(1.0, cfg.t_end)) t_next = cfg.t_end;
      }
      check_state(sys, unpack(next));
      s = std::move(next);
      t = t_next;
      ++accepted;
      last_recorded = false;
      if (accepted % cfg.record_every == 0 || t >= cfg.t_end) {
        rec.record(t, unpack(s));
        last_recorded = true;
      }
    } catch (const SingularMetric& e) {
      tr.status = Status::SingularMetricStop;
      tr.stop_reason = e.what();
    } catch (const DomainError& e) {
      tr.status = Status::DomainStop;
      tr.stop_reason = e.what();
    }
    if (tr.status != Status::Completed) {
      if (!last_recorded) {
        try {
          rec.record(t, unpack(s));
        } catch (const Error&) {
        }
      }
      break;
    }
  }
  return tr;
}

Trajectory integrate_evolution(const MechanicalSystem& sys, const PhasePoint& p0, const IntegratorConfig& cfg) {
  return integrate(sys, p0, cfg, Curve::Evolution);
}

Trajectory integrate_horizontal(const MechanicalSystem& sys, const PhasePoint& p0, const IntegratorConfig& cfg) {
  return integrate(sys, p0, cfg, Curve::Horizontal);
}

Trajectory integrate_geodesic(const MechanicalSystem& sys, const PhasePoint& p0, const IntegratorConfig& cfg) {
  return integrate(sys, p0, cfg, Curve::Geodesic);
}

EnergyAudit energy_audit(const Trajectory& traj) {
  EnergyAudit out;
  const auto& t = traj.t;
  const auto& e = traj.energy;
  for (std::size_t k = 0; k + 1 < e.size(); ++k)
    if (e[k + 1] > e[k]) out.monotone_nonincreasing = false;
  for (std::size_t k = 1; k + 1 < e.size(); ++k) {
    const double h0 = t[k] - t[k - 1];
    const double h1 = t[k + 1] - t[k];
    const double rate = (h0 * h0 * (e[k + 1] - e[k]) + h1 * h1 * (e[k] - e[k - 1])) / (h0 * h1 * (h0 + h1));
    out.max_balance_error = std::max(out.max_balance_error, std::abs(rate - traj.power[k]));
  }
  return out;
}

double max_state_deviation(const Trajectory& a, const Trajectory& b, std::size_t stride_a, std::size_t stride_b) {
  double dev = 0.0;
  for (std::size_t k = 0; k * stride_a < a.size() && k * stride_b < b.size(); ++k) {
    const auto& p = a.state[k * stride_a];
    const auto& q = b.state[k * stride_b];
    for (std::size_t i = 0; i < p.dim(); ++i)
      dev = std::max({dev, std::abs(p.x[i] - q.x[i]), std::abs(p.y[i] - q.y[i])});
  }
  return dev;
}

Method parse_method(const std::string& s) {
  if (s == "rk4" || s == "rk4_fixed") return Method::Rk4Fixed;
  if (s == "rk45" || s == "rk45_adaptive") return Method::Rk45Adaptive;
  throw ConfigError("unknown integrator method '" + s + "' (expected rk4_fixed or rk45_adaptive)");
}

Curve parse_curve(const std::string& s) {
  if (s == "evolution") return Curve::Evolution;
  if (s == "horizontal") return Curve::Horizontal;
  if (s == "geodesic") return Curve::Geodesic;
  throw ConfigError("unknown curve '" + s + "' (expected evolution, horizontal or geodesic)");
}

std::string to_string(Method m) { return m == Method::Rk4Fixed ? "rk4_fixed" : "rk45_adaptive"; }

std::string to_string(Curve c) {
  switch (c) {
    case Curve::Evolution: return "evolution";
    case Curve::Horizontal: return "horizontal";
    case Curve::Geodesic: return "geodesic";
  }
  return "?";
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Completed: return "completed";
    case Status::SingularMetricStop: return "singular_metric_stop";
    case Status::DomainStop: return "domain_stop";
  }
  return "?";
}

Status parse_status(const std::string& s) {
  if (s == "completed") return Status::Completed;
  if (s == "singular_metric_stop") return Status::SingularMetricStop;
  if (s == "domain_stop") return Status::DomainStop;
  throw ConfigError("unknown trajectory status '" + s + "'");
}

}  // namespace lagmech::trajectories
