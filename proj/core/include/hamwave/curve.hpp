#pragma once

#include "hamwave/fluid.hpp"
#include "hamwave/spectral.hpp"

#include <Eigen/Core>

namespace hamwave {

/// Planar point or vector.
using Point = Eigen::Vector2d;

/// Free-surface curve sampled at M uniform parameter nodes alpha_j = 2*pi*j/M.
///
/// Closure convention: gamma(alpha + 2*pi) = gamma(alpha) + (period_x, 0), so
/// gamma1 - period_x*alpha/(2*pi) and gamma2 are 2*pi-periodic. Curves run with
/// increasing x, which puts the fluid below and the normal N = -J T upward.
///
/// period_x == 0 selects closed-curve mode. Only the geometry routines accept
/// it; it exists so circles can be used as geometric test cases.
struct SurfaceCurve {
  Samples gamma1;
  Samples gamma2;
  double period_x = 0.0;

  Eigen::Index size() const { return gamma1.size(); }
  bool closed() const { return period_x == 0.0; }

  /// gamma1 with the secular part period_x*alpha/(2*pi) removed.
  Samples periodic_gamma1() const;

  Point node(Eigen::Index j) const { return {gamma1[j], gamma2[j]}; }

  /// M even and >= 16, matching sizes, finite entries, period_x >= 0.
  void validate() const;
};

/// Orthonormal frame (T, N = -J T), signed curvature and metric |d gamma / d alpha|.
struct FrameData {
  Samples tangent1, tangent2;
  Samples normal1, normal2;
  Samples curvature;
  Samples metric;
  double total_length = 0.0;
};

struct ChordArcReport {
  double min_ratio = 1.0;
  double bottom_clearance = 0.0;
};

/// Below this metric a parametrization is treated as degenerate.
inline constexpr double kDegenerateMetric = 1e-10;

/// Throws ErrorKind::DegenerateParametrization if the metric drops below 1e-10.
FrameData frame(const SurfaceCurve& curve);

/// Derivatives d gamma / d alpha at the nodes.
struct CurveDerivatives {
  Samples d1, d2;
};
CurveDerivatives tangent_vectors(const SurfaceCurve& curve);

/// Evaluates the spectral interpolant of the curve at arbitrary parameters.
SurfaceCurve resample(const SurfaceCurve& curve, const Samples& alpha);

/// Curve with constant metric L/(2*pi) tracing the same points; node 0 is kept.
struct Reparametrization {
  SurfaceCurve curve;
  /// Parameter on the input curve of each output node.
  Samples source_parameter;
};
Reparametrization reparametrize_uniform_map(const SurfaceCurve& curve);
SurfaceCurve reparametrize_uniform(const SurfaceCurve& curve);

/// gamma = (x_j, eta_j) with x_j = period_x * j / M.
SurfaceCurve graph_to_curve(const Samples& eta, double period_x);

/// True when gamma1 is strictly increasing over one period (nodes and nodal tangents).
bool is_graph(const SurfaceCurve& curve);

/// eta on the uniform x-grid. Throws ErrorKind::NotAGraph on overturned curves.
Samples curve_to_graph(const SurfaceCurve& curve);

/// Parameter of each uniform x-grid point on a graph curve; throws NotAGraph otherwise.
Samples graph_parameters(const SurfaceCurve& curve);

/// gamma + a N nodewise.
SurfaceCurve normal_perturb(const SurfaceCurve& curve, const Samples& a);

/// Chord/arc minimum over node pairs and clearance above the flat bottom.
ChordArcReport chord_arc(const SurfaceCurve& curve, const Depth& depth);

/// Euclidean distance from `p` to the interpolated curve (nearest node, then Newton).
double distance_to_curve(const SurfaceCurve& curve, const Point& p);

/// One period of the flat surface y = 0.
SurfaceCurve flat_curve(Eigen::Index m, double period_x);

/// Weighted inner product sum_j f g |gamma_alpha| (2*pi/M).
double surface_inner(const Samples& f, const Samples& g, const Samples& metric);

}  // namespace hamwave
