#pragma once

#include "hamwave/curve.hpp"
#include "hamwave/fluid.hpp"
#include "hamwave/spectral.hpp"

#include <Eigen/Core>
#include <Eigen/LU>

#include <vector>

namespace hamwave {

/// Dirichlet-Neumann operator G(gamma): xi -> N . grad(phi) on the surface, |N| = 1.
///
/// For graphs this is the operator-expansion (Craig-Sulem) operator divided by
/// sqrt(1 + eta_x^2), which makes G symmetric in the arc-length inner product.

struct DnoGraphSettings {
  /// Number of Taylor terms in powers of eta beyond the flat operator.
  int expansion_order = 6;
};

inline constexpr int kMaxExpansionOrder = 12;
inline constexpr Eigen::Index kMaxDenseNodes = 1024;

struct DnoBieSettings {
  /// Guard for divisions in degenerate test geometries.
  double regularization_eps = 1e-14;
  /// Reject curves whose chord/arc ratio drops below this value (0 disables the O(M^2) check).
  double min_chord_arc = 1e-3;
};

enum class DnoSolver { Graph, BoundaryIntegral };

/// Solver selection shared by the energy, gradient and dynamics routines.
struct DnoOptions {
  DnoSolver solver = DnoSolver::BoundaryIntegral;
  DnoGraphSettings graph;
  DnoBieSettings bie;
};

/// Operator-expansion G_CS(eta) xi on the uniform x-grid (no metric normalization).
Samples dno_graph_unnormalized(const Samples& eta, const Samples& xi, const FluidConfig& cfg,
                               const DnoGraphSettings& settings);

/// G(eta) xi = G_CS(eta) xi / sqrt(1 + eta_x^2).
Samples dno_graph(const Samples& eta, const Samples& xi, const FluidConfig& cfg, const DnoGraphSettings& settings);

/// Boundary-integral solver for one fixed curve.
///
/// phi is a double layer with the x-periodic Laplace kernel (plus its mirror image
/// across y = -h for a finite depth); the density solves the second-kind system
/// (I/2 + D) mu = xi on the fluid side. The normal derivative is recovered from the
/// stream function psi = -S[mu_alpha] through G xi = -psi_alpha / |gamma_alpha|,
/// with the logarithmic part of S integrated by Kress quadrature.
class LayerPotentialSolver {
 public:
  LayerPotentialSolver(const SurfaceCurve& curve, const FluidConfig& cfg, const DnoBieSettings& settings = {});

  Eigen::Index size() const { return m_; }

  /// Double-layer density reproducing the Dirichlet data xi.
  Samples density(const Samples& xi) const;

  /// G(gamma) xi.
  Samples normal_derivative(const Samples& xi) const;

  /// Boundary stream function psi for a given density.
  Samples stream_function(const Samples& mu) const;

  /// phi at an interior point for a given density.
  double potential(const Point& p, const Samples& mu) const;

  const FrameData& frame_data() const { return frame_; }

 private:
  Eigen::Index m_;
  double wavenumber_;  // 2*pi / period_x
  bool finite_depth_;
  double depth_;
  SurfaceCurve curve_;
  FrameData frame_;
  Eigen::ArrayXcd z_;       // nodes as complex numbers
  Eigen::ArrayXcd dz_;      // d gamma / d alpha
  Eigen::ArrayXcd expo_;    // exp(i k z)
  Eigen::ArrayXcd image_;   // exp(i k R z), R the mirror across y = -h
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  Eigen::MatrixXd single_layer_;
};

/// G(gamma) xi by the boundary-integral solver.
Samples dno_curve(const SurfaceCurve& curve, const Samples& xi, const FluidConfig& cfg,
                  const DnoBieSettings& settings = {});

struct HarmonicEvaluation {
  Samples values;
  /// Indices of probes closer than three node spacings to the surface.
  std::vector<Eigen::Index> near_boundary;
};

/// Harmonic extension of xi evaluated at interior probes.
HarmonicEvaluation harmonic_eval(const SurfaceCurve& curve, const Samples& xi, const FluidConfig& cfg,
                                 const DnoBieSettings& settings, const std::vector<Point>& probes);

/// Dispatches on `options.solver`. The graph solver needs a curve built by graph_to_curve.
Samples dno(const SurfaceCurve& curve, const Samples& xi, const FluidConfig& cfg, const DnoOptions& options);

}  // namespace hamwave
