#pragma once

#include "hamwave/dynamics.hpp"
#include "hamwave/fluid.hpp"
#include "hamwave/hamiltonian.hpp"
#include "hamwave/integrate.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hamwave::cli {

enum class Experiment { Simulate, Dispersion, Gradcheck, DnoTest, Equivalence };

std::string experiment_name(Experiment e);
Experiment parse_experiment(const std::string& name);

/// Initial surface and potential trace.
///   cosine: eta = a cos(k x), xi = b sin(k x) (b defaults to 0)
///   steep:  same form with defaults a = 0.35, b = 0.9, k = 1
///   file:   a JSON or JSON-lines state record
struct InitialCondition {
  std::string preset = "cosine";
  double a = 0.01;
  int k = 1;
  double b = 0.0;
  std::filesystem::path file;
};

struct SimSpec {
  Experiment experiment = Experiment::Simulate;
  FluidConfig fluid;
  Chart chart = Chart::Graph;
  InitialCondition initial;
  Eigen::Index m = 128;
  StepperConfig stepper;
  /// dt and t_end were left unset and are derived from the linear period.
  bool auto_dt = true;
  bool auto_t_end = true;
  std::string gradcheck_chart = "graph";
  /// dno-test reference solution: "flat", "harmonic" or "constant".
  std::string dno_oracle = "harmonic";
  std::filesystem::path out = "out";
  std::uint64_t seed = 1;
  /// Finite-difference step for gradcheck.
  double eps = 1e-5;
  /// gradcheck: number of random states.
  int samples = 10;
  /// dispersion: number of linear periods observed and steps per period.
  int periods = 16;
  int steps_per_period = 128;
};

/// Raw key/value settings; TOML values and command-line flags share one key space.
using Settings = std::map<std::string, std::string>;

/// Keys accepted in configuration files and as overrides.
const std::vector<std::string>& known_keys();

/// Reads a flat TOML table into settings. Throws ErrorKind::Config naming every unknown key.
Settings read_config(const std::filesystem::path& path);
Settings parse_config_text(const std::string& text);

/// Applies `overrides` over `base` and validates the result.
SimSpec build_spec(const Settings& base, const Settings& overrides);

/// Convenience: optional config file plus overrides.
SimSpec parse_spec(const std::optional<std::filesystem::path>& config, const Settings& overrides);

/// Resolved settings as a flat key/value list, for logging and summaries.
Settings describe(const SimSpec& spec);

/// Linear angular frequency sqrt((g k + sigma k^3) tanh(k h)) for wavenumber k (1/length).
double linear_frequency(double k, const FluidConfig& fluid);

/// Initial state on M nodes for the spec's recipe.
PhaseState initial_state(const SimSpec& spec);

/// Wavenumber of the initial mode in 1/length.
double initial_wavenumber(const SimSpec& spec);

}  // namespace hamwave::cli
