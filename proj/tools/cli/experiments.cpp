#include "experiments.hpp"

#include "hamwave/error.hpp"
#include "hamwave/io.hpp"

#include "json.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>

namespace hamwave::cli {
namespace {

using nlohmann::json;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  return out;
}

void write_json(const std::filesystem::path& path, const json& j) { open_output(path) << j.dump(2) << '\n'; }

json spec_json(const SimSpec& spec) {
  json j;
  for (const auto& [k, v] : describe(spec)) j[k] = v;
  return j;
}

json trajectory_json(const Trajectory& t) {
  json j;
  j["halt_reason"] = std::string(halt_reason_name(t.halt));
  j["halt_message"] = t.halt_message;
  j["halted"] = is_halt(t.halt);
  j["end_time"] = t.end_time;
  j["steps"] = t.steps;
  j["peak_inclination_deg"] = t.peak_inclination * 180.0 / std::numbers::pi;
  j["peak_inclination_time"] = t.peak_inclination_time;
  j["max_energy_drift"] = t.max_energy_drift;
  if (!t.snapshots.empty()) {
    j["energy_initial"] = t.snapshots.front().energy.total;
    j["energy_final"] = t.snapshots.back().energy.total;
  }
  return j;
}

void write_trajectory(const std::filesystem::path& dir, const std::string& suffix, const Trajectory& t) {
  auto csv = open_output(dir / ("energy" + suffix + ".csv"));
  write_energy_csv(csv, t);
  auto jsonl = open_output(dir / ("snapshots" + suffix + ".jsonl"));
  write_snapshots_jsonl(jsonl, t);
  if (!t.snapshots.empty()) {
    auto curve = open_output(dir / ("curve_final" + suffix + ".csv"));
    write_curve_csv(curve, t.snapshots.back().state.curve);
  }
}

Samples random_field(std::mt19937_64& rng, Eigen::Index m, int modes, double decay) {
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  const Samples alpha = spectral::grid(m);
  Samples f = Samples::Zero(m);
  for (int j = 1; j <= modes; ++j) f += amp(rng) / std::pow(j, decay) * (j * alpha + phase(rng)).cos();
  return f;
}

SurfaceCurve displace(const SurfaceCurve& c, const Samples& a, const Samples& b) {
  const FrameData f = frame(c);
  SurfaceCurve out = c;
  out.gamma1 += a * f.normal1 + b * f.tangent1;
  out.gamma2 += a * f.normal2 + b * f.tangent2;
  return out;
}

double rel_error(double fd, double analytic) {
  const double scale = std::max({std::abs(fd), std::abs(analytic), 1e-300});
  return std::abs(fd - analytic) / scale;
}

// Height of the curve above x = 0.
double height_at_origin(const SurfaceCurve& c) {
  if (std::abs(c.gamma1[0]) < 1e-14 * c.period_x) return c.gamma2[0];
  return curve_to_graph(c)[0];
}

}  // namespace

double measure_frequency(const std::vector<double>& signal, double dt) {
  const auto n = signal.size();
  if (n < 8) fail(ErrorKind::Config, "frequency measurement needs at least 8 samples");
  double mean = 0.0;
  for (double v : signal) mean += v;
  mean /= static_cast<double>(n);
  std::size_t padded = 1;
  while (padded < 8 * n) padded <<= 1;
  std::vector<double> windowed(padded, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(n - 1));
    windowed[i] = (signal[i] - mean) * w;
  }
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, windowed);
  const std::size_t half = padded / 2;
  std::size_t peak = 1;
  for (std::size_t i = 1; i < half; ++i) {
    if (std::abs(spectrum[i]) > std::abs(spectrum[peak])) peak = i;
  }
  double offset = 0.0;
  if (peak > 1 && peak + 1 < half) {
    const double l = std::log(std::abs(spectrum[peak - 1]));
    const double c = std::log(std::abs(spectrum[peak]));
    const double r = std::log(std::abs(spectrum[peak + 1]));
    const double denom = l - 2.0 * c + r;
    if (denom != 0.0) offset = 0.5 * (l - r) / denom;
  }
  const double frequency = (static_cast<double>(peak) + offset) / (static_cast<double>(padded) * dt);
  return kTwoPi * frequency;
}

DispersionResult run_dispersion(const SimSpec& spec) {
  DispersionResult r;
  r.wavenumber = initial_wavenumber(spec);
  r.omega_linear = linear_frequency(r.wavenumber, spec.fluid);
  StepperConfig stepper = spec.stepper;
  if (stepper.snapshot_every == 0.0) stepper.snapshot_every = stepper.t_end / spec.periods;
  r.trajectory = run(initial_state(spec), spec.chart, spec.fluid, stepper,
                     [&](double, const PhaseState& s) { r.probe.push_back(height_at_origin(s.curve)); });
  r.omega_measured = measure_frequency(r.probe, stepper.dt);
  r.rel_error = std::abs(r.omega_measured - r.omega_linear) / r.omega_linear;
  return r;
}

PhaseState random_state(std::uint64_t seed, Eigen::Index m, double period_x, const std::string& chart) {
  std::mt19937_64 rng(seed);
  const Samples eta = 0.08 * random_field(rng, m, 4, 2.0);
  const Samples xi = random_field(rng, m, 6, 1.0);
  PhaseState s{graph_to_curve(eta, period_x), xi};
  if (chart == "graph") return s;
  if (chart == "arclength") return to_chart(s, Chart::ArcLength);
  // Deliberately non-uniform parametrization of the same geometry.
  const Samples alpha = spectral::grid(m);
  const Samples warped = alpha + 0.2 * alpha.sin();
  return {resample(s.curve, warped), spectral::interpolate(xi, warped)};
}

std::vector<GradcheckEntry> run_gradcheck(const SimSpec& spec) {
  const FluidConfig& cfg = spec.fluid;
  const DnoOptions& opts = spec.stepper.dynamics.dno;
  const double eps = spec.eps;
  std::vector<GradcheckEntry> entries;
  auto push = [&](const char* name, int index, double fd, double analytic) {
    entries.push_back({name, index, fd, analytic, rel_error(fd, analytic)});
  };
  auto kinetic = [&](const SurfaceCurve& c, const Samples& xi) { return kinetic_energy({c, xi}, cfg, opts); };
  auto potential = [&](const SurfaceCurve& c) {
    const PotentialEnergy u = potential_energy(c, cfg);
    return u.gravitational + u.capillary;
  };

  for (int i = 0; i < spec.samples; ++i) {
    const std::uint64_t seed = spec.seed * 1000003ULL + static_cast<std::uint64_t>(i);
    const PhaseState s = random_state(seed, spec.m, cfg.period_x, spec.gradcheck_chart);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const Samples delta = random_field(rng, spec.m, 6, 1.0);
    const Samples a = 0.5 * random_field(rng, spec.m, 6, 1.0);
    const Samples b = 0.5 * random_field(rng, spec.m, 6, 1.0);
    const FrameData f = frame(s.curve);
    const Samples zero = Samples::Zero(spec.m);
    const GradientBundle g = gradients(s, cfg, opts);

    push("grad_xi_K", i, (kinetic(s.curve, s.xi + eps * delta) - kinetic(s.curve, s.xi - eps * delta)) / (2 * eps),
         surface_inner(g.grad_xi, delta, f.metric));
    push("grad_normal_U", i,
         (potential(displace(s.curve, eps * a, zero)) - potential(displace(s.curve, -eps * a, zero))) / (2 * eps),
         surface_inner(g.grad_normal_U, a, f.metric));
    push("grad_K_general.normal", i,
         (kinetic(displace(s.curve, eps * a, zero), s.xi) - kinetic(displace(s.curve, -eps * a, zero), s.xi)) /
             (2 * eps),
         surface_inner(g.grad_normal_K, a, f.metric));
    push("grad_K_general.tangential", i,
         (kinetic(displace(s.curve, zero, eps * b), s.xi) - kinetic(displace(s.curve, zero, -eps * b), s.xi)) /
             (2 * eps),
         surface_inner(g.grad_tangential_K, b, f.metric));

    if (spec.gradcheck_chart == "graph") {
      const ChartCoupling coupling = ChartCoupling::graph(s.curve);
      const Samples eta = s.curve.gamma2;
      const double fd = (kinetic(graph_to_curve(eta + eps * a, cfg.period_x), s.xi) -
                         kinetic(graph_to_curve(eta - eps * a, cfg.period_x), s.xi)) /
                        (2 * eps);
      // delta eta = a is the admissible variation with normal component a / |gamma_alpha| * (X / 2 pi).
      const Samples normal_part = a * (cfg.period_x / kTwoPi) / f.metric;
      push("grad_normal_K_chart", i, fd, surface_inner(grad_normal_K_chart(s, coupling, g.grad_xi), normal_part, f.metric));
    } else if (spec.gradcheck_chart == "arclength") {
      const ChartCoupling coupling = ChartCoupling::arclength(s.curve);
      const Samples t = coupling.apply(a);
      const double fd = (kinetic(displace(s.curve, eps * a, eps * t), s.xi) -
                         kinetic(displace(s.curve, -eps * a, -eps * t), s.xi)) /
                        (2 * eps);
      push("admissible_gradient_K", i, fd, surface_inner(admissible_gradient_K(s, coupling, cfg, opts), a, f.metric));
    }
  }
  return entries;
}

namespace {

struct OracleData {
  SurfaceCurve curve;
  Samples xi;
  Samples exact;
};

// Surface and trace for the dno-test oracle; exact holds N . grad(phi) on the nodes.
OracleData oracle_data(const SimSpec& spec, Eigen::Index m) {
  const FluidConfig& cfg = spec.fluid;
  SimSpec local = spec;
  local.m = m;
  OracleData o;
  o.curve = spec.dno_oracle == "flat" ? flat_curve(m, cfg.period_x) : initial_state(local).curve;
  if (spec.dno_oracle == "constant") {
    o.xi = Samples::Ones(m);
    o.exact = Samples::Zero(m);
    return o;
  }
  // phi = cosh(k(y + h)) cos(k x) / cosh(k h), or exp(k y) cos(k x) without a bottom.
  const double kx = initial_wavenumber(spec);
  const FrameData f = frame(o.curve);
  o.xi.resize(m);
  o.exact.resize(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double x = o.curve.gamma1[j];
    const double y = o.curve.gamma2[j];
    double vertical = std::exp(kx * y);
    double vertical_y = kx * vertical;
    if (!cfg.depth.is_infinite()) {
      const double h = cfg.depth.value();
      vertical = std::cosh(kx * (y + h)) / std::cosh(kx * h);
      vertical_y = kx * std::sinh(kx * (y + h)) / std::cosh(kx * h);
    }
    o.xi[j] = vertical * std::cos(kx * x);
    o.exact[j] = f.normal1[j] * (-kx * vertical * std::sin(kx * x)) + f.normal2[j] * vertical_y * std::cos(kx * x);
  }
  return o;
}

double l2_error(const Samples& approx, const Samples& exact) {
  const double scale = exact.square().sum();
  const double diff = (approx - exact).square().sum();
  return scale > 0.0 ? std::sqrt(diff / scale) : std::sqrt(diff / static_cast<double>(exact.size()));
}

double linf_error(const Samples& approx, const Samples& exact) {
  const double scale = exact.abs().maxCoeff();
  const double diff = (approx - exact).abs().maxCoeff();
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace

DnoTestResult run_dno_test(const SimSpec& spec) {
  const FluidConfig& cfg = spec.fluid;
  const DnoOptions& opts = spec.stepper.dynamics.dno;
  const bool graph_data = spec.initial.preset != "file" || spec.dno_oracle == "flat";
  if (opts.solver == DnoSolver::Graph && !graph_data) fail(ErrorKind::Config, "the graph solver needs graph data");

  DnoTestResult result;
  result.oracle = spec.dno_oracle;
  result.solver = opts.solver == DnoSolver::Graph ? "graph" : "bie";
  for (const Eigen::Index m : {spec.m / 2, spec.m}) {
    if (m < 16) continue;
    const OracleData o = oracle_data(spec, m);
    const FrameData f = frame(o.curve);
    const LayerPotentialSolver solver(o.curve, cfg, opts.bie);
    const Samples bie = solver.normal_derivative(o.xi);
    DnoTestRow row;
    row.m = m;
    row.bie_error = l2_error(bie, o.exact);
    row.graph_error = std::numeric_limits<double>::quiet_NaN();
    Samples graph;
    if (graph_data) {
      graph = dno_graph(o.curve.gamma2, o.xi, cfg, opts.graph);
      row.graph_error = l2_error(graph, o.exact);
    }
    std::mt19937_64 rng(spec.seed + static_cast<std::uint64_t>(m));
    row.min_quadratic_form = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 20; ++trial) {
      const Samples u = random_field(rng, m, static_cast<int>(m / 4), 1.0);
      const Samples v = random_field(rng, m, static_cast<int>(m / 4), 1.0);
      const Samples gu = solver.normal_derivative(u);
      const Samples gv = solver.normal_derivative(v);
      const double uv = surface_inner(gu, v, f.metric);
      const double vu = surface_inner(u, gv, f.metric);
      row.self_adjoint_defect =
          std::max(row.self_adjoint_defect, std::abs(uv - vu) / std::max({std::abs(uv), std::abs(vu), 1e-300}));
      row.min_quadratic_form = std::min(row.min_quadratic_form, surface_inner(u, gu, f.metric));
    }
    row.constant_response = solver.normal_derivative(Samples::Ones(m)).abs().maxCoeff();
    result.rows.push_back(row);

    if (m == spec.m) {
      result.m = m;
      result.x = o.curve.gamma1;
      result.y = o.curve.gamma2;
      result.exact = o.exact;
      result.approx = opts.solver == DnoSolver::Graph ? graph : bie;
      result.l2_error = l2_error(result.approx, o.exact);
      result.linf_error = linf_error(result.approx, o.exact);
    }
  }
  return result;
}

EquivalenceResult run_equivalence(const SimSpec& spec) {
  EquivalenceResult r;
  const PhaseState initial = initial_state(spec);
  r.graph = run(initial, Chart::Graph, spec.fluid, spec.stepper);
  StepperConfig arc = spec.stepper;
  arc.dynamics.dno.solver = DnoSolver::BoundaryIntegral;
  r.arclength = run(initial, Chart::ArcLength, spec.fluid, arc);
  const std::size_t count = std::min(r.graph.snapshots.size(), r.arclength.snapshots.size());
  for (std::size_t i = 0; i < count; ++i) {
    const Snapshot& g = r.graph.snapshots[i];
    const Snapshot& a = r.arclength.snapshots[i];
    EquivalenceSample s;
    s.time = g.time;
    for (Eigen::Index j = 0; j < a.state.curve.size(); ++j) {
      s.distance = std::max(s.distance, distance_to_curve(g.state.curve, a.state.curve.node(j)));
    }
    s.energy_graph = g.energy.total;
    s.energy_arclength = a.energy.total;
    const double scale = std::max(std::abs(s.energy_graph), 1e-300);
    s.rel_energy_difference = std::abs(s.energy_graph - s.energy_arclength) / scale;
    r.max_distance = std::max(r.max_distance, s.distance);
    r.max_rel_energy_difference = std::max(r.max_rel_energy_difference, s.rel_energy_difference);
    r.series.push_back(s);
  }
  return r;
}

int run_experiment(const SimSpec& spec) {
  std::filesystem::create_directories(spec.out);
  json summary;
  summary["experiment"] = experiment_name(spec.experiment);
  summary["spec"] = spec_json(spec);
  int status = 0;

  switch (spec.experiment) {
    case Experiment::Simulate: {
      const Trajectory t = run(initial_state(spec), spec.chart, spec.fluid, spec.stepper);
      write_trajectory(spec.out, "", t);
      summary["trajectory"] = trajectory_json(t);
      status = is_halt(t.halt) ? 2 : 0;
      break;
    }
    case Experiment::Dispersion: {
      const DispersionResult r = run_dispersion(spec);
      write_trajectory(spec.out, "", r.trajectory);
      summary["trajectory"] = trajectory_json(r.trajectory);
      summary["wavenumber"] = r.wavenumber;
      summary["omega_measured"] = r.omega_measured;
      summary["omega_linear"] = r.omega_linear;
      summary["rel_error"] = r.rel_error;
      status = is_halt(r.trajectory.halt) ? 2 : 0;
      break;
    }
    case Experiment::Gradcheck: {
      json list = json::array();
      double worst = 0.0;
      for (const GradcheckEntry& e : run_gradcheck(spec)) {
        list.push_back({{"gradient_name", e.gradient_name},
                        {"state", e.state},
                        {"fd_value", e.fd_value},
                        {"analytic_value", e.analytic_value},
                        {"rel_error", e.rel_error}});
        worst = std::max(worst, e.rel_error);
      }
      summary["checks"] = list;
      summary["max_rel_error"] = worst;
      break;
    }
    case Experiment::DnoTest: {
      const DnoTestResult r = run_dno_test(spec);
      auto csv = open_output(spec.out / "dno_errors.csv");
      csv << "j,x,y,approx,exact,error\n";
      csv.precision(17);
      for (Eigen::Index j = 0; j < r.m; ++j) {
        csv << j << ',' << r.x[j] << ',' << r.y[j] << ',' << r.approx[j] << ',' << r.exact[j] << ','
            << r.approx[j] - r.exact[j] << '\n';
      }
      summary["oracle"] = r.oracle;
      summary["solver"] = r.solver;
      summary["m"] = r.m;
      summary["l2_error"] = r.l2_error;
      summary["linf_error"] = r.linf_error;
      json list = json::array();
      for (const DnoTestRow& row : r.rows) {
        json j = {{"m", row.m},
                  {"bie_error", row.bie_error},
                  {"self_adjoint_defect", row.self_adjoint_defect},
                  {"min_quadratic_form", row.min_quadratic_form},
                  {"constant_response", row.constant_response}};
        j["graph_error"] = std::isnan(row.graph_error) ? json(nullptr) : json(row.graph_error);
        list.push_back(j);
      }
      summary["rows"] = list;
      break;
    }
    case Experiment::Equivalence: {
      const EquivalenceResult r = run_equivalence(spec);
      write_trajectory(spec.out, "_graph", r.graph);
      write_trajectory(spec.out, "_arclength", r.arclength);
      json series = json::array();
      for (const EquivalenceSample& s : r.series) {
        series.push_back({{"t", s.time},
                          {"distance", s.distance},
                          {"energy_graph", s.energy_graph},
                          {"energy_arclength", s.energy_arclength},
                          {"rel_energy_difference", s.rel_energy_difference}});
      }
      summary["series"] = series;
      summary["max_distance"] = r.max_distance;
      summary["max_rel_energy_difference"] = r.max_rel_energy_difference;
      summary["graph"] = trajectory_json(r.graph);
      summary["arclength"] = trajectory_json(r.arclength);
      status = is_halt(r.graph.halt) || is_halt(r.arclength.halt) ? 2 : 0;
      break;
    }
  }
  summary["exit_status"] = status;
  write_json(spec.out / "summary.json", summary);
  return status;
}

}  // namespace hamwave::cli
