#include "hamwave/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hamwave {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Flat state vector: [eta, xi] in the graph chart, [gamma1, gamma2, xi] in the arc-length chart.
Eigen::ArrayXd pack(const PhaseState& s, Chart chart) {
  const auto m = s.xi.size();
  if (chart == Chart::Graph) {
    Eigen::ArrayXd y(2 * m);
    y << s.curve.gamma2, s.xi;
    return y;
  }
  Eigen::ArrayXd y(3 * m);
  y << s.curve.gamma1, s.curve.gamma2, s.xi;
  return y;
}

PhaseState unpack(const Eigen::ArrayXd& y, Chart chart, double period_x) {
  PhaseState s;
  if (chart == Chart::Graph) {
    const auto m = y.size() / 2;
    s.curve = graph_to_curve(y.head(m), period_x);
    s.xi = y.tail(m);
    return s;
  }
  const auto m = y.size() / 3;
  s.curve.gamma1 = y.head(m);
  s.curve.gamma2 = y.segment(m, m);
  s.curve.period_x = period_x;
  s.xi = y.tail(m);
  return s;
}

Eigen::ArrayXd velocity(const Eigen::ArrayXd& y, Chart chart, const FluidConfig& cfg, const DynamicsOptions& opts) {
  if (chart == Chart::Graph) {
    const auto m = y.size() / 2;
    const GraphRate r = rhs_graph(y.head(m), y.tail(m), cfg, opts);
    Eigen::ArrayXd dy(2 * m);
    dy << r.eta_dot, r.xi_dot;
    return dy;
  }
  const PhaseVelocity v = rhs_arclength(unpack(y, chart, cfg.period_x), cfg, opts);
  Eigen::ArrayXd dy(y.size());
  dy << v.curve_dot1, v.curve_dot2, v.xi_dot;
  return dy;
}

PhaseState reparametrize_state(const PhaseState& s) {
  const Reparametrization r = reparametrize_uniform_map(s.curve);
  return {r.curve, spectral::interpolate(s.xi, r.source_parameter)};
}

}  // namespace

std::string_view scheme_name(Scheme scheme) { return scheme == Scheme::Rk4 ? "rk4" : "implicit-midpoint"; }

Scheme parse_scheme(std::string_view name) {
  if (name == "rk4") return Scheme::Rk4;
  if (name == "implicit-midpoint" || name == "midpoint") return Scheme::ImplicitMidpoint;
  fail(ErrorKind::Config, "scheme must be rk4 or implicit-midpoint, got " + std::string(name));
}

std::string_view halt_reason_name(HaltReason reason) {
  switch (reason) {
    case HaltReason::Completed: return "completed";
    case HaltReason::InclinationReached: return "inclination reached";
    case HaltReason::Curvature: return "curvature limit";
    case HaltReason::ChordArc: return "chord-arc limit";
    case HaltReason::EnergyDrift: return "energy drift limit";
    case HaltReason::Overturned: return kOverturnedMessage;
    case HaltReason::Failure: return "failure";
  }
  return "unknown";
}

bool is_halt(HaltReason reason) { return reason != HaltReason::Completed && reason != HaltReason::InclinationReached; }

void StepperConfig::validate() const {
  if (!(dt >= 0.0) || !std::isfinite(dt)) fail(ErrorKind::Config, "dt must be finite and nonnegative");
  if (reparam_every < 1) fail(ErrorKind::Config, "reparam_every must be at least 1");
  if (!(t_end >= 0.0)) fail(ErrorKind::Config, "t_end must be nonnegative");
  if (snapshot_every < 0.0) fail(ErrorKind::Config, "snapshot_every must be nonnegative");
  if (halt.max_curvature < 0.0) fail(ErrorKind::Config, "max_curvature must be positive");
  if (fixed_point_max_iterations < 1) fail(ErrorKind::Config, "fixed_point_max_iterations must be at least 1");
  if (t_end > 0.0 && !(dt > 0.0)) fail(ErrorKind::Config, "dt must be positive");
}

PhaseState step(const PhaseState& state, Chart chart, const FluidConfig& cfg, const StepperConfig& stepper,
                long step_index) {
  if (stepper.dt == 0.0) return state;
  if (chart == Chart::ArcLength && stepper.dynamics.dno.solver == DnoSolver::Graph) {
    fail(ErrorKind::Config, "the arc-length chart needs the boundary-integral solver");
  }
  const Eigen::ArrayXd y = pack(state, chart);
  auto f = [&](const Eigen::ArrayXd& z) { return velocity(z, chart, cfg, stepper.dynamics); };
  const Eigen::ArrayXd next =
      stepper.scheme == Scheme::Rk4
          ? rk4_step(y, stepper.dt, f)
          : implicit_midpoint_step(y, stepper.dt, f, stepper.fixed_point_tolerance, stepper.fixed_point_max_iterations);
  PhaseState out = unpack(next, chart, cfg.period_x);
  if (stepper.filter_order > 0) {
    auto smooth = [&](const Samples& f) { return spectral::exponential_filter(f, stepper.filter_order); };
    const Samples p1 = out.curve.periodic_gamma1();
    out.curve.gamma1 = out.curve.gamma1 - p1 + smooth(p1);
    out.curve.gamma2 = smooth(out.curve.gamma2);
    out.xi = smooth(out.xi);
  }
  if (chart != Chart::ArcLength) return out;
  bool due = (step_index + 1) % stepper.reparam_every == 0;
  if (!due && stepper.reparam_drift > 0.0) {
    const Samples metric = frame(out.curve).metric;
    due = metric.maxCoeff() / metric.minCoeff() - 1.0 > stepper.reparam_drift;
  }
  return due ? reparametrize_state(out) : out;
}

Diagnostics diagnose(const SurfaceCurve& curve, const Depth& depth) {
  Diagnostics d;
  d.max_curvature = frame(curve).curvature.abs().maxCoeff();
  d.min_chord_arc = chord_arc(curve, depth).min_ratio;
  const OverturnStatus o = overturn_status(curve);
  d.max_inclination = o.max_inclination;
  d.graph_ok = o.graph_ok;
  return d;
}

PhaseState to_chart(const PhaseState& state, Chart chart) {
  if (chart == Chart::ArcLength) return reparametrize_state(state);
  const Samples alpha = graph_parameters(state.curve);
  return {graph_to_curve(curve_to_graph(state.curve), state.curve.period_x), spectral::interpolate(state.xi, alpha)};
}

double suggest_dt(const PhaseState& state, const FluidConfig& cfg, double c_cfl) {
  const auto& c = state.curve;
  const auto m = c.size();
  double ds = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < m; ++j) {
    const Eigen::Index k = (j + 1) % m;
    const double dx = c.gamma1[k] - c.gamma1[j] + (k == 0 ? c.period_x : 0.0);
    ds = std::min(ds, std::hypot(dx, c.gamma2[k] - c.gamma2[j]));
  }
  double dt = c_cfl * std::sqrt(ds / cfg.gravity);
  if (cfg.surface_tension > 0.0) dt = std::min(dt, c_cfl * std::pow(ds, 1.5) / std::sqrt(cfg.surface_tension));
  return dt;
}

Trajectory run(const PhaseState& initial, Chart chart, const FluidConfig& cfg, const StepperConfig& stepper,
               const StepObserver& observer) {
  cfg.validate();
  stepper.validate();
  initial.validate();

  StepperConfig config = stepper;
  // Chord-arc is checked once per step below instead of once per DNO solve.
  config.dynamics.dno.bie.min_chord_arc = 0.0;
  HaltCriteria& halt = config.halt;
  if (halt.max_curvature == 0.0) halt.max_curvature = 50.0 * kTwoPi / cfg.period_x;
  const double cadence = config.snapshot_every > 0.0 ? config.snapshot_every : config.t_end / 100.0;

  PhaseState state = to_chart(initial, chart);
  Trajectory traj;
  const DnoOptions& dno_opts = config.dynamics.dno;
  const double h0 = total_energy(state, cfg, dno_opts).total;

  auto record = [&](double t, const Diagnostics& d) {
    Snapshot s{t, state, total_energy(state, cfg, dno_opts), d};
    const double drift = h0 != 0.0 ? std::abs(s.energy.total - h0) / std::abs(h0) : std::abs(s.energy.total - h0);
    traj.max_energy_drift = std::max(traj.max_energy_drift, drift);
    traj.snapshots.push_back(std::move(s));
    return drift;
  };
  auto note_peak = [&](double t, const Diagnostics& d) {
    if (d.max_inclination > traj.peak_inclination) {
      traj.peak_inclination = d.max_inclination;
      traj.peak_inclination_time = t;
    }
  };
  auto stop = [&](HaltReason reason, std::string message) {
    traj.halt = reason;
    traj.halt_message = std::move(message);
  };

  Diagnostics diag = diagnose(state.curve, cfg.depth);
  note_peak(0.0, diag);
  record(0.0, diag);
  if (observer) observer(0.0, state);

  const long total_steps = config.t_end > 0.0 ? static_cast<long>(std::ceil(config.t_end / config.dt - 1e-9)) : 0;
  double next_snapshot = cadence;
  double t = 0.0;
  for (long i = 0; i < total_steps; ++i) {
    StepperConfig local = config;
    local.dt = std::min(config.dt, config.t_end - t);
    try {
      state = step(state, chart, cfg, local, i);
    } catch (const Error& e) {
      const bool overturn = chart == Chart::Graph && e.kind() == ErrorKind::NotAGraph;
      stop(overturn ? HaltReason::Overturned : HaltReason::Failure, e.what());
      break;
    }
    t = i + 1 == total_steps ? config.t_end : t + local.dt;
    traj.steps = i + 1;
    traj.end_time = t;
    if (!state.curve.gamma1.allFinite() || !state.curve.gamma2.allFinite() || !state.xi.allFinite()) {
      stop(HaltReason::Failure, "state became non-finite");
      break;
    }
    try {
      diag = diagnose(state.curve, cfg.depth);
    } catch (const Error& e) {
      stop(HaltReason::Failure, e.what());
      break;
    }
    note_peak(t, diag);
    if (observer) observer(t, state);

    const bool last = i + 1 == total_steps;
    if (chart == Chart::Graph && diag.max_inclination >= halt.graph_max_inclination) {
      record(t, diag);
      stop(HaltReason::Overturned, kOverturnedMessage);
      break;
    }
    if (diag.max_curvature > halt.max_curvature) {
      record(t, diag);
      stop(HaltReason::Curvature, "max curvature " + std::to_string(diag.max_curvature) + " exceeds " +
                                      std::to_string(halt.max_curvature));
      break;
    }
    if (diag.min_chord_arc < halt.min_chord_arc) {
      record(t, diag);
      stop(HaltReason::ChordArc, "chord-arc ratio " + std::to_string(diag.min_chord_arc) + " below " +
                                     std::to_string(halt.min_chord_arc));
      break;
    }
    if (config.stop_at_inclination > 0.0 && diag.max_inclination >= config.stop_at_inclination) {
      record(t, diag);
      stop(HaltReason::InclinationReached, "inclination " + std::to_string(diag.max_inclination) + " rad reached");
      break;
    }
    if (last || t >= next_snapshot - 1e-9 * config.dt) {
      const double drift = record(t, diag);
      while (next_snapshot <= t + 1e-9 * config.dt) next_snapshot += cadence;
      if (drift > halt.max_energy_drift) {
        stop(HaltReason::EnergyDrift, "relative energy drift " + std::to_string(drift) + " exceeds " +
                                          std::to_string(halt.max_energy_drift));
        break;
      }
    }
  }
  return traj;
}

}  // namespace hamwave
