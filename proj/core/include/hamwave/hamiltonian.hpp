#pragma once

#include "hamwave/curve.hpp"
#include "hamwave/dno.hpp"
#include "hamwave/fluid.hpp"

namespace hamwave {

/// Point (gamma, xi) of phase space: the surface and the trace of the velocity potential.
struct PhaseState {
  SurfaceCurve curve;
  Samples xi;

  void validate() const;
};

struct EnergyBreakdown {
  double kinetic = 0.0;
  double potential_grav = 0.0;
  double potential_surf = 0.0;
  double total = 0.0;
};

struct PotentialEnergy {
  double gravitational = 0.0;
  double capillary = 0.0;
};

/// Normal and tangential components of the shape gradient of K at fixed xi,
/// both with respect to the arc-length inner product.
struct KineticShapeGradient {
  Samples normal;
  Samples tangential;
};

struct GradientBundle {
  Samples grad_xi;
  Samples grad_normal_K;
  Samples grad_tangential_K;
  Samples grad_normal_U;
};

/// Relation T.dgamma = Tc(gamma)(N.dgamma) imposed on admissible variations by a chart.
class ChartCoupling {
 public:
  /// Graph chart: Tc is multiplication by eta_x. Throws NotAGraph for other curves.
  static ChartCoupling graph(const SurfaceCurve& curve);
  /// Arc-length chart: Tc a = b with d_s b = kappa a, made periodic by removing the
  /// mean of kappa a |gamma_alpha| and fixed to zero mean.
  static ChartCoupling arclength(const SurfaceCurve& curve);

  Samples apply(const Samples& a) const;
  /// Adjoint in the arc-length inner product.
  Samples adjoint(const Samples& b) const;

 private:
  enum class Kind { Graph, ArcLength };
  ChartCoupling(Kind kind, Samples slope, Samples curvature, Samples metric)
      : kind_(kind), slope_(std::move(slope)), curvature_(std::move(curvature)), metric_(std::move(metric)) {}

  Kind kind_;
  Samples slope_;
  Samples curvature_;
  Samples metric_;
};

/// K = 1/2 sum_j xi_j (G xi)_j |gamma_alpha|_j (2*pi/M).
double kinetic_energy(const PhaseState& state, const FluidConfig& cfg, const DnoOptions& options);

/// Gravitational part (g/2) int gamma2^2 d(gamma1) with the flat surface y = 0 as
/// reference, and capillary part sigma (L - X).
PotentialEnergy potential_energy(const SurfaceCurve& curve, const FluidConfig& cfg);

EnergyBreakdown total_energy(const PhaseState& state, const FluidConfig& cfg, const DnoOptions& options);

/// grad_xi K = G(gamma) xi.
Samples grad_xi_K(const PhaseState& state, const FluidConfig& cfg, const DnoOptions& options);

/// Normal gradient of U: g gamma2 - sigma kappa.
Samples grad_normal_U(const SurfaceCurve& curve, const FluidConfig& cfg);

/// Shape gradient of K at fixed xi: normal = 1/2 (xi_s^2 - (G xi)^2), tangential = -xi_s G xi.
KineticShapeGradient grad_K_general(const PhaseState& state, const FluidConfig& cfg, const DnoOptions& options);
KineticShapeGradient grad_K_general(const PhaseState& state, const Samples& dno_xi);

/// Chart-reduced normal gradient 1/2 [xi_s^2 - (G xi)^2 - 2 xi_s Tc(G xi)].
///
/// For the graph chart this equals normal + Tc^*(tangential). For the arc-length
/// chart Tc acts on G xi, which is the form whose negative reproduces the
/// arc-length Bernoulli condition; see admissible_gradient_K for the adjoint form.
Samples grad_normal_K_chart(const PhaseState& state, const ChartCoupling& coupling, const FluidConfig& cfg,
                            const DnoOptions& options);
Samples grad_normal_K_chart(const PhaseState& state, const ChartCoupling& coupling, const Samples& dno_xi);

/// normal + Tc^*(tangential): gradient of K along admissible variations a N + Tc(a) T.
Samples admissible_gradient_K(const PhaseState& state, const ChartCoupling& coupling, const FluidConfig& cfg,
                              const DnoOptions& options);

GradientBundle gradients(const PhaseState& state, const FluidConfig& cfg, const DnoOptions& options);

/// Tangential derivative xi_s = xi_alpha / |gamma_alpha|.
Samples surface_derivative(const Samples& xi, const Samples& metric);

}  // namespace hamwave
