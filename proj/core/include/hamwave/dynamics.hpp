#pragma once

#include "hamwave/curve.hpp"
#include "hamwave/dno.hpp"
#include "hamwave/fluid.hpp"
#include "hamwave/hamiltonian.hpp"

#include <string_view>

namespace hamwave {

enum class Chart { Graph, ArcLength };

std::string_view chart_name(Chart chart);
/// "graph" or "arclength"; throws ErrorKind::Config otherwise.
Chart parse_chart(std::string_view name);

/// Time derivative of a phase state: gamma_dot = n N + tau T and xi_dot.
struct PhaseVelocity {
  Samples n;
  Samples tau;
  Samples xi_dot;
  Samples curve_dot1;
  Samples curve_dot2;
};

struct GraphRate {
  Samples eta_dot;
  Samples xi_dot;
};

struct DynamicsOptions {
  DnoOptions dno;
  /// 2/3-rule filter on the quadratic bracket of xi_dot.
  bool dealias = true;
  /// Allowed max/min metric ratio minus one in the arc-length chart.
  double metric_tolerance = 1e-2;
};

/// Graph chart on the uniform x-grid: eta_t = G_CS xi, and
/// xi_t = -g eta + 1/2 [n^2 - xi_x^2/w^2 + 2 xi_x n eta_x / w] + sigma d_x(eta_x / w),
/// n = G xi, w = sqrt(1 + eta_x^2).
GraphRate rhs_graph(const Samples& eta, const Samples& xi, const FluidConfig& cfg, const DynamicsOptions& options);

struct TangentialVelocity {
  Samples tau;
  double length_rate = 0.0;
};

/// tau with d_alpha tau = kappa n |gamma_alpha| - mean, zero mean; dL/dt = -int kappa n dS.
TangentialVelocity tangential_velocity_arclength(const SurfaceCurve& curve, const Samples& n,
                                                 double metric_tolerance = 1e-2);

/// Bernoulli condition for an arbitrary parametrization with tangential speed tau:
/// xi_t = -g gamma2 + 1/2 [n^2 - xi_s^2 + 2 xi_s tau], xi_s = xi_alpha / |gamma_alpha|.
Samples bernoulli_xi_dot(const PhaseState& state, const Samples& n, const Samples& tau, const FluidConfig& cfg,
                         bool dealias);

/// Arc-length chart velocity; the curve must have a uniform metric within the tolerance.
PhaseVelocity rhs_arclength(const PhaseState& state, const FluidConfig& cfg, const DynamicsOptions& options);

/// Same vector field assembled from the energy gradients:
/// n = grad_xi K, xi_dot = -(grad_normal_U + grad_normal_K_chart).
PhaseVelocity rhs_canonical(const PhaseState& state, Chart chart, const FluidConfig& cfg,
                            const DynamicsOptions& options);

struct OverturnStatus {
  bool graph_ok = true;
  /// Largest angle between T and the +x axis, in [0, pi].
  double max_inclination = 0.0;
};

OverturnStatus overturn_status(const SurfaceCurve& curve);

}  // namespace hamwave
