#pragma once

#include "sim_spec.hpp"

#include <string>
#include <vector>

namespace hamwave::cli {

/// Angular frequency of the dominant spectral peak of a uniformly sampled signal
/// (mean removed, Hann window, 8x zero padding, parabolic fit to the log magnitude).
double measure_frequency(const std::vector<double>& signal, double dt);

struct DispersionResult {
  double wavenumber = 0.0;
  double omega_measured = 0.0;
  double omega_linear = 0.0;
  double rel_error = 0.0;
  /// Surface elevation at x = 0 after every step.
  std::vector<double> probe;
  Trajectory trajectory;
};
DispersionResult run_dispersion(const SimSpec& spec);

struct GradcheckEntry {
  std::string gradient_name;
  int state = 0;
  double fd_value = 0.0;
  double analytic_value = 0.0;
  double rel_error = 0.0;
};
std::vector<GradcheckEntry> run_gradcheck(const SimSpec& spec);

/// Random smooth state for the gradcheck chart ("graph", "arclength" or "general").
PhaseState random_state(std::uint64_t seed, Eigen::Index m, double period_x, const std::string& chart);

struct DnoTestRow {
  Eigen::Index m = 0;
  /// Errors against the oracle (relative, or absolute when the oracle is zero).
  double bie_error = 0.0;
  /// NaN when the graph solver does not apply.
  double graph_error = 0.0;
  double self_adjoint_defect = 0.0;
  double min_quadratic_form = 0.0;
  double constant_response = 0.0;
};

/// Nodewise comparison for the selected solver at spec.m, plus structure checks at M/2 and M.
struct DnoTestResult {
  std::string oracle;
  std::string solver;
  Eigen::Index m = 0;
  double l2_error = 0.0;
  double linf_error = 0.0;
  Samples x, y, approx, exact;
  std::vector<DnoTestRow> rows;
};

DnoTestResult run_dno_test(const SimSpec& spec);

struct EquivalenceSample {
  double time = 0.0;
  double distance = 0.0;
  double energy_graph = 0.0;
  double energy_arclength = 0.0;
  double rel_energy_difference = 0.0;
};
struct EquivalenceResult {
  std::vector<EquivalenceSample> series;
  double max_distance = 0.0;
  double max_rel_energy_difference = 0.0;
  Trajectory graph;
  Trajectory arclength;
};
EquivalenceResult run_equivalence(const SimSpec& spec);

/// Runs the spec's experiment, writes its artifacts under spec.out and returns the
/// process exit status (0 success, 2 halted by a criterion).
int run_experiment(const SimSpec& spec);

}  // namespace hamwave::cli
