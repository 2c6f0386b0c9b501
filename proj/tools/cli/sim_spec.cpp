#include "sim_spec.hpp"

#include "hamwave/error.hpp"
#include "hamwave/io.hpp"

#include "toml.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace hamwave::cli {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDegree = std::numbers::pi / 180.0;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_double(const std::string& key, const std::string& value) {
  if (value == "inf" || value == "infinity") return std::numeric_limits<double>::infinity();
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) fail(ErrorKind::Config, "invalid number for " + key + ": " + value);
  return out;
}

long long to_int(const std::string& key, const std::string& value) {
  long long out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) fail(ErrorKind::Config, "invalid integer for " + key + ": " + value);
  return out;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  fail(ErrorKind::Config, "invalid boolean for " + key + ": " + value);
}

void check_keys(const Settings& settings) {
  const auto& keys = known_keys();
  std::vector<std::string> unknown;
  for (const auto& [key, value] : settings) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) unknown.push_back("unknown key: " + key);
  }
  if (unknown.empty()) return;
  std::string message;
  for (const auto& u : unknown) message += (message.empty() ? "" : "; ") + u;
  fail(ErrorKind::Config, message);
}

// dt and t_end defaults depend on the initial state, so they are resolved last.
void resolve_timing(SimSpec& spec) {
  const double k = initial_wavenumber(spec);
  const double period = kTwoPi / linear_frequency(k, spec.fluid);
  if (spec.experiment == Experiment::Dispersion) {
    if (spec.auto_dt) spec.stepper.dt = period / spec.steps_per_period;
    if (spec.auto_t_end) spec.stepper.t_end = spec.periods * period;
    return;
  }
  if (spec.auto_t_end) spec.stepper.t_end = period;
  if (spec.auto_dt) spec.stepper.dt = std::min(period / 400.0, suggest_dt(initial_state(spec), spec.fluid));
}

}  // namespace

std::string experiment_name(Experiment e) {
  switch (e) {
    case Experiment::Simulate: return "simulate";
    case Experiment::Dispersion: return "dispersion";
    case Experiment::Gradcheck: return "gradcheck";
    case Experiment::DnoTest: return "dno-test";
    case Experiment::Equivalence: return "equivalence";
  }
  return "simulate";
}

Experiment parse_experiment(const std::string& name) {
  for (auto e : {Experiment::Simulate, Experiment::Dispersion, Experiment::Gradcheck, Experiment::DnoTest,
                 Experiment::Equivalence}) {
    if (experiment_name(e) == name) return e;
  }
  fail(ErrorKind::Config, "unknown experiment: " + name);
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "experiment",    "chart",          "m",
      "initial",       "a",              "k",
      "b",             "file",           "g",
      "sigma",         "depth",          "period_x",
      "dt",            "t_end",          "scheme",
      "reparam_every", "snapshot_every", "solver",
      "order",         "out",            "seed",
      "eps",           "samples",        "periods",
      "steps_per_period", "max_curvature", "min_chord_arc",
      "max_energy_drift", "graph_max_inclination_deg", "stop_at_inclination_deg",
      "filter_order",  "dealias",        "oracle",
  };
  return keys;
}

Settings parse_config_text(const std::string& text) {
  toml::table table;
  try {
    table = toml::parse(text);
  } catch (const toml::parse_error& e) {
    fail(ErrorKind::Config, std::string("invalid TOML: ") + std::string(e.description()));
  }
  Settings out;
  for (const auto& [key, node] : table) {
    const std::string name(key.str());
    if (auto s = node.value_exact<std::string>()) {
      out[name] = *s;
    } else if (auto i = node.value_exact<std::int64_t>()) {
      out[name] = std::to_string(*i);
    } else if (auto d = node.value_exact<double>()) {
      out[name] = format_double(*d);
    } else if (auto b = node.value_exact<bool>()) {
      out[name] = *b ? "true" : "false";
    } else {
      fail(ErrorKind::Config, "unsupported value for key: " + name);
    }
  }
  check_keys(out);
  return out;
}

Settings read_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Config, "cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

SimSpec build_spec(const Settings& base, const Settings& overrides) {
  Settings merged = base;
  for (const auto& [key, value] : overrides) merged[key] = value;
  check_keys(merged);

  SimSpec spec;
  auto get = [&](const char* key) -> const std::string* {
    const auto it = merged.find(key);
    return it == merged.end() ? nullptr : &it->second;
  };
  if (auto v = get("experiment")) spec.experiment = parse_experiment(*v);
  if (auto v = get("chart")) {
    if (spec.experiment == Experiment::Gradcheck) {
      if (*v != "graph" && *v != "arclength" && *v != "general") {
        fail(ErrorKind::Config, "chart must be graph, arclength or general, got " + *v);
      }
      spec.gradcheck_chart = *v;
      if (*v != "general") spec.chart = parse_chart(*v);
    } else {
      spec.chart = parse_chart(*v);
    }
  }
  if (auto v = get("m")) spec.m = to_int("m", *v);
  if (auto v = get("initial")) spec.initial.preset = *v;
  if (spec.initial.preset == "steep") {
    spec.initial.a = 0.35;
    spec.initial.b = 0.9;
  }
  if (auto v = get("a")) spec.initial.a = to_double("a", *v);
  if (auto v = get("k")) spec.initial.k = static_cast<int>(to_int("k", *v));
  if (auto v = get("b")) spec.initial.b = to_double("b", *v);
  if (auto v = get("file")) spec.initial.file = *v;
  if (auto v = get("g")) spec.fluid.gravity = to_double("g", *v);
  if (auto v = get("sigma")) spec.fluid.surface_tension = to_double("sigma", *v);
  if (auto v = get("depth")) {
    const double h = to_double("depth", *v);
    spec.fluid.depth = std::isinf(h) ? Depth::infinite() : Depth::finite(h);
  }
  if (auto v = get("period_x")) spec.fluid.period_x = to_double("period_x", *v);
  if (auto v = get("dt")) {
    spec.stepper.dt = to_double("dt", *v);
    spec.auto_dt = false;
  }
  if (auto v = get("t_end")) {
    spec.stepper.t_end = to_double("t_end", *v);
    spec.auto_t_end = false;
  }
  if (auto v = get("scheme")) spec.stepper.scheme = parse_scheme(*v);
  if (auto v = get("reparam_every")) spec.stepper.reparam_every = static_cast<int>(to_int("reparam_every", *v));
  if (auto v = get("snapshot_every")) spec.stepper.snapshot_every = to_double("snapshot_every", *v);
  if (auto v = get("solver")) {
    if (*v == "bie") {
      spec.stepper.dynamics.dno.solver = DnoSolver::BoundaryIntegral;
    } else if (*v == "graph") {
      spec.stepper.dynamics.dno.solver = DnoSolver::Graph;
    } else {
      fail(ErrorKind::Config, "solver must be bie or graph, got " + *v);
    }
  }
  if (auto v = get("oracle")) {
    if (*v != "flat" && *v != "harmonic" && *v != "constant") {
      fail(ErrorKind::Config, "oracle must be flat, harmonic or constant, got " + *v);
    }
    spec.dno_oracle = *v;
  }
  if (auto v = get("order")) spec.stepper.dynamics.dno.graph.expansion_order = static_cast<int>(to_int("order", *v));
  if (auto v = get("out")) spec.out = *v;
  if (auto v = get("seed")) spec.seed = static_cast<std::uint64_t>(to_int("seed", *v));
  if (auto v = get("eps")) spec.eps = to_double("eps", *v);
  if (auto v = get("samples")) spec.samples = static_cast<int>(to_int("samples", *v));
  if (auto v = get("periods")) spec.periods = static_cast<int>(to_int("periods", *v));
  if (auto v = get("steps_per_period")) spec.steps_per_period = static_cast<int>(to_int("steps_per_period", *v));
  if (auto v = get("max_curvature")) spec.stepper.halt.max_curvature = to_double("max_curvature", *v);
  if (auto v = get("min_chord_arc")) spec.stepper.halt.min_chord_arc = to_double("min_chord_arc", *v);
  if (auto v = get("max_energy_drift")) spec.stepper.halt.max_energy_drift = to_double("max_energy_drift", *v);
  if (auto v = get("graph_max_inclination_deg")) {
    spec.stepper.halt.graph_max_inclination = to_double("graph_max_inclination_deg", *v) * kDegree;
  }
  if (auto v = get("stop_at_inclination_deg")) {
    spec.stepper.stop_at_inclination = to_double("stop_at_inclination_deg", *v) * kDegree;
  }
  if (auto v = get("filter_order")) spec.stepper.filter_order = static_cast<int>(to_int("filter_order", *v));
  if (auto v = get("dealias")) spec.stepper.dynamics.dealias = to_bool("dealias", *v);

  spec.fluid.validate();
  if (spec.m < 16 || spec.m % 2 != 0) fail(ErrorKind::Config, "m must be even and at least 16");
  const auto& ic = spec.initial;
  if (ic.preset != "cosine" && ic.preset != "steep" && ic.preset != "file") {
    fail(ErrorKind::Config, "initial must be cosine, steep or file, got " + ic.preset);
  }
  if (ic.preset == "file") {
    if (ic.file.empty()) fail(ErrorKind::Config, "initial = \"file\" needs file");
    if (!std::filesystem::exists(ic.file)) fail(ErrorKind::Config, "file does not exist: " + ic.file.string());
  } else {
    if (!(ic.a >= 0.0 && ic.a <= 1.0)) fail(ErrorKind::Config, "a must lie in [0, 1]");
    if (ic.k < 1 || ic.k > spec.m / 4) fail(ErrorKind::Config, "k must lie in [1, m/4]");
    if (!std::isfinite(ic.b)) fail(ErrorKind::Config, "b must be finite");
  }
  if (spec.eps <= 0.0) fail(ErrorKind::Config, "eps must be positive");
  if (spec.samples < 1) fail(ErrorKind::Config, "samples must be positive");
  if (spec.periods < 1) fail(ErrorKind::Config, "periods must be positive");
  if (spec.steps_per_period < 8) fail(ErrorKind::Config, "steps_per_period must be at least 8");
  if (spec.stepper.filter_order < 0) fail(ErrorKind::Config, "filter_order must be nonnegative");
  if (spec.chart == Chart::ArcLength && spec.stepper.dynamics.dno.solver == DnoSolver::Graph &&
      spec.experiment != Experiment::Gradcheck && spec.experiment != Experiment::DnoTest) {
    fail(ErrorKind::Config, "solver = \"graph\" needs chart = \"graph\"");
  }
  resolve_timing(spec);
  spec.stepper.validate();
  return spec;
}

SimSpec parse_spec(const std::optional<std::filesystem::path>& config, const Settings& overrides) {
  return build_spec(config ? read_config(*config) : Settings{}, overrides);
}

Settings describe(const SimSpec& spec) {
  Settings s;
  s["experiment"] = experiment_name(spec.experiment);
  s["chart"] = spec.experiment == Experiment::Gradcheck ? spec.gradcheck_chart : std::string(chart_name(spec.chart));
  s["m"] = std::to_string(spec.m);
  s["initial"] = spec.initial.preset;
  if (spec.initial.preset == "file") {
    s["file"] = spec.initial.file.string();
  } else {
    s["a"] = format_double(spec.initial.a);
    s["k"] = std::to_string(spec.initial.k);
    s["b"] = format_double(spec.initial.b);
  }
  s["g"] = format_double(spec.fluid.gravity);
  s["sigma"] = format_double(spec.fluid.surface_tension);
  s["depth"] = spec.fluid.depth.is_infinite() ? "inf" : format_double(spec.fluid.depth.value());
  s["period_x"] = format_double(spec.fluid.period_x);
  s["dt"] = format_double(spec.stepper.dt);
  s["t_end"] = format_double(spec.stepper.t_end);
  s["scheme"] = std::string(scheme_name(spec.stepper.scheme));
  s["reparam_every"] = std::to_string(spec.stepper.reparam_every);
  s["snapshot_every"] = format_double(spec.stepper.snapshot_every);
  s["solver"] = spec.stepper.dynamics.dno.solver == DnoSolver::Graph ? "graph" : "bie";
  s["order"] = std::to_string(spec.stepper.dynamics.dno.graph.expansion_order);
  s["oracle"] = spec.dno_oracle;
  s["out"] = spec.out.string();
  s["seed"] = std::to_string(spec.seed);
  s["eps"] = format_double(spec.eps);
  s["samples"] = std::to_string(spec.samples);
  s["periods"] = std::to_string(spec.periods);
  s["steps_per_period"] = std::to_string(spec.steps_per_period);
  s["max_curvature"] = format_double(spec.stepper.halt.max_curvature);
  s["min_chord_arc"] = format_double(spec.stepper.halt.min_chord_arc);
  s["max_energy_drift"] = format_double(spec.stepper.halt.max_energy_drift);
  s["graph_max_inclination_deg"] = format_double(spec.stepper.halt.graph_max_inclination / kDegree);
  s["stop_at_inclination_deg"] = format_double(spec.stepper.stop_at_inclination / kDegree);
  s["filter_order"] = std::to_string(spec.stepper.filter_order);
  s["dealias"] = spec.stepper.dynamics.dealias ? "true" : "false";
  return s;
}

double linear_frequency(double k, const FluidConfig& fluid) {
  const double t = fluid.depth.is_infinite() ? 1.0 : std::tanh(k * fluid.depth.value());
  return std::sqrt((fluid.gravity * k + fluid.surface_tension * k * k * k) * t);
}

double initial_wavenumber(const SimSpec& spec) {
  if (spec.initial.preset == "file") return kTwoPi / spec.fluid.period_x;
  return spec.initial.k * kTwoPi / spec.fluid.period_x;
}

PhaseState initial_state(const SimSpec& spec) {
  if (spec.initial.preset == "file") {
    PhaseState s = load_state_file(spec.initial.file, spec.fluid.period_x).state;
    if (s.curve.size() != spec.m) s = {resample(s.curve, spectral::grid(spec.m)), spectral::interpolate(s.xi, spectral::grid(spec.m))};
    return s;
  }
  const Samples alpha = spectral::grid(spec.m);
  const Samples phase = spec.initial.k * alpha;
  return {graph_to_curve(spec.initial.a * phase.cos(), spec.fluid.period_x), spec.initial.b * phase.sin()};
}

}  // namespace hamwave::cli
