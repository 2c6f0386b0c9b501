#include "hamwave/dynamics.hpp"

#include "hamwave/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hamwave {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Samples filtered(const Samples& f, bool dealias) { return dealias ? spectral::dealias(f) : f; }

void check_uniform(const Samples& metric, double tolerance) {
  const double spread = metric.maxCoeff() / metric.minCoeff() - 1.0;
  if (!(spread <= tolerance)) {
    fail(ErrorKind::ChartViolation, "metric is not uniform (max/min - 1 = " + std::to_string(spread) + ")");
  }
}

}  // namespace

std::string_view chart_name(Chart chart) { return chart == Chart::Graph ? "graph" : "arclength"; }

Chart parse_chart(std::string_view name) {
  if (name == "graph") return Chart::Graph;
  if (name == "arclength" || name == "arc-length") return Chart::ArcLength;
  fail(ErrorKind::Config, "chart must be graph or arclength, got " + std::string(name));
}

GraphRate rhs_graph(const Samples& eta, const Samples& xi, const FluidConfig& cfg, const DynamicsOptions& options) {
  cfg.validate();
  if (eta.size() != xi.size()) fail(ErrorKind::Config, "eta and xi differ in length");
  const double scale = kTwoPi / cfg.period_x;
  const Samples eta_x = spectral::derivative(eta) * scale;
  const Samples xi_x = spectral::derivative(xi) * scale;
  const Samples w = (1.0 + eta_x.square()).sqrt();

  Samples n;
  if (options.dno.solver == DnoSolver::Graph) {
    n = dno_graph(eta, xi, cfg, options.dno.graph);
  } else {
    n = dno_curve(graph_to_curve(eta, cfg.period_x), xi, cfg, options.dno.bie);
  }
  const Samples xi_s = xi_x / w;
  const Samples bracket = n.square() - xi_s.square() + 2.0 * xi_s * n * eta_x;

  GraphRate rate;
  rate.eta_dot = w * n;
  rate.xi_dot = -cfg.gravity * eta + 0.5 * filtered(bracket, options.dealias);
  if (cfg.surface_tension > 0.0) {
    rate.xi_dot += cfg.surface_tension * spectral::derivative(eta_x / w) * scale;
  }
  return rate;
}

TangentialVelocity tangential_velocity_arclength(const SurfaceCurve& curve, const Samples& n,
                                                 double metric_tolerance) {
  const FrameData f = frame(curve);
  check_uniform(f.metric, metric_tolerance);
  const Samples forcing = f.curvature * n * f.metric;
  return {spectral::antiderivative(forcing), -kTwoPi * spectral::mean(forcing)};
}

Samples bernoulli_xi_dot(const PhaseState& state, const Samples& n, const Samples& tau, const FluidConfig& cfg,
                         bool dealias) {
  const Samples xi_s = surface_derivative(state.xi, frame(state.curve).metric);
  const Samples bracket = n.square() - xi_s.square() + 2.0 * xi_s * tau;
  return -cfg.gravity * state.curve.gamma2 + 0.5 * filtered(bracket, dealias);
}

PhaseVelocity rhs_arclength(const PhaseState& state, const FluidConfig& cfg, const DynamicsOptions& options) {
  state.validate();
  if (cfg.surface_tension > 0.0) fail(ErrorKind::Config, "surface tension is supported in the graph chart only");
  const FrameData f = frame(state.curve);
  check_uniform(f.metric, options.metric_tolerance);

  PhaseVelocity v;
  v.n = dno(state.curve, state.xi, cfg, options.dno);
  v.tau = tangential_velocity_arclength(state.curve, v.n, options.metric_tolerance).tau;
  v.xi_dot = bernoulli_xi_dot(state, v.n, v.tau, cfg, options.dealias);
  v.curve_dot1 = v.n * f.normal1 + v.tau * f.tangent1;
  v.curve_dot2 = v.n * f.normal2 + v.tau * f.tangent2;
  return v;
}

PhaseVelocity rhs_canonical(const PhaseState& state, Chart chart, const FluidConfig& cfg,
                            const DynamicsOptions& options) {
  state.validate();
  const FrameData f = frame(state.curve);
  const ChartCoupling coupling =
      chart == Chart::Graph ? ChartCoupling::graph(state.curve) : ChartCoupling::arclength(state.curve);
  if (chart == Chart::ArcLength) {
    if (cfg.surface_tension > 0.0) fail(ErrorKind::Config, "surface tension is supported in the graph chart only");
    check_uniform(f.metric, options.metric_tolerance);
  }

  PhaseVelocity v;
  v.n = grad_xi_K(state, cfg, options.dno);
  v.tau = coupling.apply(v.n);
  // The kinetic part is quadratic; filter it the same way as the closed forms.
  const Samples kinetic = grad_normal_K_chart(state, coupling, v.n);
  v.xi_dot = -grad_normal_U(state.curve, cfg) - filtered(kinetic, options.dealias);
  v.curve_dot1 = v.n * f.normal1 + v.tau * f.tangent1;
  v.curve_dot2 = v.n * f.normal2 + v.tau * f.tangent2;
  return v;
}

OverturnStatus overturn_status(const SurfaceCurve& curve) {
  const FrameData f = frame(curve);
  OverturnStatus s;
  s.graph_ok = is_graph(curve);
  for (Eigen::Index j = 0; j < curve.size(); ++j) {
    s.max_inclination = std::max(s.max_inclination, std::abs(std::atan2(f.tangent2[j], f.tangent1[j])));
  }
  return s;
}

}  // namespace hamwave
