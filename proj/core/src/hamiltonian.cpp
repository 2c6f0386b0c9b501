#include "hamwave/hamiltonian.hpp"

#include "hamwave/error.hpp"

#include <numbers>

namespace hamwave {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

void PhaseState::validate() const {
  curve.validate();
  if (xi.size() != curve.size()) fail(ErrorKind::Config, "xi size does not match the curve");
  if (!xi.allFinite()) fail(ErrorKind::Geometry, "xi has non-finite entries");
}

ChartCoupling ChartCoupling::graph(const SurfaceCurve& curve) {
  if (!is_graph(curve)) fail(ErrorKind::NotAGraph, kOverturnedMessage);
  const auto d = tangent_vectors(curve);
  return ChartCoupling(Kind::Graph, d.d2 / d.d1, Samples(), Samples());
}

ChartCoupling ChartCoupling::arclength(const SurfaceCurve& curve) {
  const FrameData f = frame(curve);
  return ChartCoupling(Kind::ArcLength, Samples(), f.curvature, f.metric);
}

Samples ChartCoupling::apply(const Samples& a) const {
  if (kind_ == Kind::Graph) return slope_ * a;
  return spectral::antiderivative(curvature_ * a * metric_);
}

Samples ChartCoupling::adjoint(const Samples& b) const {
  if (kind_ == Kind::Graph) return slope_ * b;
  // The mean-zero antiderivative is skew-adjoint in the plain l2 pairing.
  return -curvature_ * spectral::antiderivative(metric_ * b);
}

Samples surface_derivative(const Samples& xi, const Samples& metric) { return spectral::derivative(xi) / metric; }

double kinetic_energy(const PhaseState& state, const FluidConfig& cfg, const DnoOptions& options) {
  state.validate();
  const Samples n = dno(state.curve, state.xi, cfg, options);
  return 0.5 * surface_inner(state.xi, n, frame(state.curve).metric);
}

PotentialEnergy potential_energy(const SurfaceCurve& curve, const FluidConfig& cfg) {
  const auto d = tangent_vectors(curve);
  const double h = kTwoPi / static_cast<double>(curve.size());
  PotentialEnergy u;
  u.gravitational = 0.5 * cfg.gravity * (curve.gamma2.square() * d.d1).sum() * h;
  if (cfg.surface_tension > 0.0) {
    const double length = (d.d1.square() + d.d2.square()).sqrt().sum() * h;
    u.capillary = cfg.surface_tension * (length - curve.period_x);
  }
  return u;
}

EnergyBreakdown total_energy(const PhaseState& state, const FluidConfig& cfg, const DnoOptions& options) {
  EnergyBreakdown e;
  e.kinetic = kinetic_energy(state, cfg, options);
  const PotentialEnergy u = potential_energy(state.curve, cfg);
  e.potential_grav = u.gravitational;
  e.potential_surf = u.capillary;
  e.total = e.kinetic + e.potential_grav + e.potential_surf;
  return e;
}

Samples grad_xi_K(const PhaseState& state, const FluidConfig& cfg, const DnoOptions& options) {
  state.validate();
  return dno(state.curve, state.xi, cfg, options);
}

Samples grad_normal_U(const SurfaceCurve& curve, const FluidConfig& cfg) {
  Samples grad = cfg.gravity * curve.gamma2;
  if (cfg.surface_tension > 0.0) grad -= cfg.surface_tension * frame(curve).curvature;
  return grad;
}

KineticShapeGradient grad_K_general(const PhaseState& state, const Samples& dno_xi) {
  const Samples xi_s = surface_derivative(state.xi, frame(state.curve).metric);
  return {0.5 * (xi_s.square() - dno_xi.square()), -xi_s * dno_xi};
}

KineticShapeGradient grad_K_general(const PhaseState& state, const FluidConfig& cfg, const DnoOptions& options) {
  return grad_K_general(state, grad_xi_K(state, cfg, options));
}

Samples grad_normal_K_chart(const PhaseState& state, const ChartCoupling& coupling, const Samples& dno_xi) {
  const Samples xi_s = surface_derivative(state.xi, frame(state.curve).metric);
  return 0.5 * (xi_s.square() - dno_xi.square()) - xi_s * coupling.apply(dno_xi);
}

Samples grad_normal_K_chart(const PhaseState& state, const ChartCoupling& coupling, const FluidConfig& cfg,
                            const DnoOptions& options) {
  return grad_normal_K_chart(state, coupling, grad_xi_K(state, cfg, options));
}

Samples admissible_gradient_K(const PhaseState& state, const ChartCoupling& coupling, const FluidConfig& cfg,
                              const DnoOptions& options) {
  const KineticShapeGradient g = grad_K_general(state, cfg, options);
  return g.normal + coupling.adjoint(g.tangential);
}

GradientBundle gradients(const PhaseState& state, const FluidConfig& cfg, const DnoOptions& options) {
  GradientBundle b;
  b.grad_xi = grad_xi_K(state, cfg, options);
  const KineticShapeGradient k = grad_K_general(state, b.grad_xi);
  b.grad_normal_K = k.normal;
  b.grad_tangential_K = k.tangential;
  b.grad_normal_U = grad_normal_U(state.curve, cfg);
  return b;
}

}  // namespace hamwave
