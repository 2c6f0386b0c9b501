#pragma once

#include "hamwave/dynamics.hpp"
#include "hamwave/error.hpp"
#include "hamwave/hamiltonian.hpp"

#include <Eigen/Core>

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace hamwave {

enum class Scheme { Rk4, ImplicitMidpoint };

std::string_view scheme_name(Scheme scheme);
Scheme parse_scheme(std::string_view name);

/// Zero-valued thresholds are replaced by their defaults in run().
struct HaltCriteria {
  /// Largest admissible |kappa|; 0 selects 50 * 2*pi / X.
  double max_curvature = 0.0;
  double min_chord_arc = 0.05;
  /// Largest admissible |H - H0| / |H0| (absolute when H0 = 0), checked at snapshots.
  double max_energy_drift = 1e-2;
  /// Graph chart only: inclination in radians at which the graph description is given up.
  double graph_max_inclination = 1.4;
};

struct StepperConfig {
  double dt = 1e-3;
  Scheme scheme = Scheme::Rk4;
  int reparam_every = 10;
  /// Also reparametrize when max/min metric - 1 exceeds this value; 0 disables.
  double reparam_drift = 1e-3;
  /// Order of the exponential filter applied to the state after every step; 0 disables.
  int filter_order = 16;
  double t_end = 0.0;
  /// Snapshot spacing in simulated time; 0 selects t_end / 100.
  double snapshot_every = 0.0;
  /// Stop (successfully) once the maximum inclination reaches this angle; 0 disables.
  double stop_at_inclination = 0.0;
  HaltCriteria halt;
  DynamicsOptions dynamics;
  double fixed_point_tolerance = 1e-12;
  int fixed_point_max_iterations = 50;

  void validate() const;
};

enum class HaltReason { Completed, InclinationReached, Curvature, ChordArc, EnergyDrift, Overturned, Failure };

std::string_view halt_reason_name(HaltReason reason);
/// True for reasons that end a run early because a diagnostic was tripped.
bool is_halt(HaltReason reason);

struct Diagnostics {
  double max_curvature = 0.0;
  double min_chord_arc = 1.0;
  double max_inclination = 0.0;
  bool graph_ok = true;
};

struct Snapshot {
  double time = 0.0;
  PhaseState state;
  EnergyBreakdown energy;
  Diagnostics diagnostics;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  HaltReason halt = HaltReason::Completed;
  std::string halt_message;
  double end_time = 0.0;
  long steps = 0;
  /// Largest inclination seen at any step and the time it was reached.
  double peak_inclination = 0.0;
  double peak_inclination_time = 0.0;
  /// Largest |H - H0| / |H0| over the snapshots.
  double max_energy_drift = 0.0;
};

/// Called after every accepted step (and once for the initial state).
using StepObserver = std::function<void(double time, const PhaseState& state)>;

/// One time step. In the arc-length chart the result is reparametrized to uniform
/// metric when (step_index + 1) is a multiple of reparam_every or the metric spread
/// exceeds reparam_drift. Graph-chart states
/// must lie on the uniform x-grid.
PhaseState step(const PhaseState& state, Chart chart, const FluidConfig& cfg, const StepperConfig& stepper,
                long step_index = 0);

/// Steps from t = 0 to t_end, recording snapshots and energies; stops early on a halt criterion.
Trajectory run(const PhaseState& initial, Chart chart, const FluidConfig& cfg, const StepperConfig& stepper,
               const StepObserver& observer = {});

/// min(c (ds/g)^{1/2}, c ds^{3/2} / sigma^{1/2}) with ds the smallest node spacing.
double suggest_dt(const PhaseState& state, const FluidConfig& cfg, double c_cfl = 0.5);

Diagnostics diagnose(const SurfaceCurve& curve, const Depth& depth);

/// Re-expresses a state in a chart: resampled onto the uniform x-grid for the graph
/// chart (NotAGraph if overturned), reparametrized to uniform metric for the arc-length chart.
PhaseState to_chart(const PhaseState& state, Chart chart);

/// Classical fourth-order Runge-Kutta step for y' = f(y).
template <class F>
Eigen::ArrayXd rk4_step(const Eigen::ArrayXd& y, double dt, F&& f) {
  const Eigen::ArrayXd k1 = f(y);
  const Eigen::ArrayXd k2 = f(Eigen::ArrayXd(y + 0.5 * dt * k1));
  const Eigen::ArrayXd k3 = f(Eigen::ArrayXd(y + 0.5 * dt * k2));
  const Eigen::ArrayXd k4 = f(Eigen::ArrayXd(y + dt * k3));
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Implicit midpoint y1 = y0 + dt f((y0 + y1)/2) by fixed-point iteration.
template <class F>
Eigen::ArrayXd implicit_midpoint_step(const Eigen::ArrayXd& y, double dt, F&& f, double tolerance,
                                      int max_iterations) {
  Eigen::ArrayXd next = y + dt * f(y);
  for (int it = 0; it < max_iterations; ++it) {
    const Eigen::ArrayXd update = y + dt * f(Eigen::ArrayXd(0.5 * (y + next)));
    const double change = (update - next).abs().maxCoeff();
    next = update;
    if (change <= tolerance * (1.0 + next.abs().maxCoeff())) return next;
  }
  fail(ErrorKind::Convergence, "implicit midpoint iteration did not converge in " + std::to_string(max_iterations) +
                                   " iterations");
}

}  // namespace hamwave
