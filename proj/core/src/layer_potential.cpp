#include "hamwave/dno.hpp"
#include "hamwave/error.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace hamwave {
namespace {

using Complex = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Kress weights for int_0^{2pi} log(4 sin^2((t - s)/2)) f(s) ds on M = 2n nodes,
// as a function of the node offset d = i - j.
Eigen::ArrayXd kress_weights(Eigen::Index m) {
  const auto n = m / 2;
  const double nd = static_cast<double>(n);
  Eigen::ArrayXd r(m);
  for (Eigen::Index d = 0; d < m; ++d) {
    double sum = 0.0;
    for (Eigen::Index k = 1; k < n; ++k) {
      sum += std::cos(static_cast<double>(k * d) * std::numbers::pi / nd) / static_cast<double>(k);
    }
    r[d] = -(kTwoPi / nd) * sum - (std::numbers::pi / (nd * nd)) * (d % 2 == 0 ? 1.0 : -1.0);
  }
  return r;
}

}  // namespace

LayerPotentialSolver::LayerPotentialSolver(const SurfaceCurve& curve, const FluidConfig& cfg,
                                           const DnoBieSettings& settings)
    : m_(curve.size()),
      wavenumber_(0.0),
      finite_depth_(!cfg.depth.is_infinite()),
      depth_(cfg.depth.value()),
      curve_(curve) {
  cfg.validate();
  curve.validate();
  if (curve.closed()) fail(ErrorKind::Config, "the boundary-integral solver needs a periodic curve");
  if (std::abs(curve.period_x - cfg.period_x) > 1e-12 * cfg.period_x) {
    fail(ErrorKind::Config, "curve period differs from the fluid period");
  }
  if (m_ > kMaxDenseNodes) fail(ErrorKind::Config, "dense solves are limited to 1024 nodes");
  frame_ = frame(curve);
  if (finite_depth_ && !(curve.gamma2.minCoeff() + depth_ > 0.0)) {
    fail(ErrorKind::Geometry, "surface touches or crosses the bottom");
  }
  if (settings.min_chord_arc > 0.0) {
    const double ratio = chord_arc(curve, cfg.depth).min_ratio;
    if (ratio < settings.min_chord_arc) {
      fail(ErrorKind::Geometry, "curve is not simple: chord/arc ratio " + std::to_string(ratio));
    }
  }

  wavenumber_ = kTwoPi / curve.period_x;
  const double k = wavenumber_;
  const auto derivs = tangent_vectors(curve);
  z_.resize(m_);
  dz_.resize(m_);
  expo_.resize(m_);
  image_.resize(m_);
  for (Eigen::Index j = 0; j < m_; ++j) {
    const double x = curve.gamma1[j];
    const double y = curve.gamma2[j];
    z_[j] = Complex(x, y);
    dz_[j] = Complex(derivs.d1[j], derivs.d2[j]);
    expo_[j] = std::polar(std::exp(-k * y), k * x);
    if (finite_depth_) image_[j] = std::polar(std::exp(k * (y + 2.0 * depth_)), k * x);
  }

  const double md = static_cast<double>(m_);
  const double eps2 = settings.regularization_eps * settings.regularization_eps;
  const Eigen::ArrayXd kress = kress_weights(m_);
  Eigen::ArrayXd log_offset(m_);  // log|2 sin(pi d / M)|, unused at d = 0
  log_offset[0] = 0.0;
  for (Eigen::Index d = 1; d < m_; ++d) {
    log_offset[d] = std::log(std::abs(2.0 * std::sin(std::numbers::pi * static_cast<double>(d) / md)));
  }

  Eigen::MatrixXd system(m_, m_);
  single_layer_.resize(m_, m_);
  const double dl_scale = k / (2.0 * md);
  const double quad = kTwoPi / md;
  // q_ij = (E_i + E_j)/(E_i - E_j) is antisymmetric and the smooth log part is
  // symmetric, so each unordered pair is visited once.
  for (Eigen::Index i = 0; i < m_; ++i) {
    system(i, i) = 0.5 - frame_.curvature[i] * frame_.metric[i] / (2.0 * md);
    single_layer_(i, i) = (0.5 * kress[0] + quad * std::log(0.5 * k * frame_.metric[i])) / kTwoPi;
    const Complex ei = expo_[i];
    const double yi = curve.gamma2[i];
    for (Eigen::Index j = i + 1; j < m_; ++j) {
      const Eigen::Index d = j - i;
      const Complex ej = expo_[j];
      const double dr = ei.real() - ej.real();
      const double di = ei.imag() - ej.imag();
      const double diff2 = dr * dr + di * di;
      if (diff2 < eps2 * std::norm(ei)) fail(ErrorKind::Geometry, "coincident surface nodes");
      const Complex q = (ei + ej) * Complex(dr, -di) / diff2;
      system(i, j) = dl_scale * (dz_[j] * q).real();
      system(j, i) = -dl_scale * (dz_[i] * q).real();
      // log|sin(k (z_i - z_j)/2)| minus its logarithmic singularity.
      const double smooth =
          0.5 * std::log(diff2) + 0.5 * k * (yi + curve.gamma2[j]) - std::numbers::ln2 - log_offset[d];
      const double value = (0.5 * kress[d] + quad * smooth) / kTwoPi;
      single_layer_(i, j) = value;
      single_layer_(j, i) = value;
    }
  }
  if (finite_depth_) {
    // Mirror images across y = -h; smooth kernels, full loops.
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Complex ei = expo_[i];
      const Complex fi = image_[i];
      const double yi = curve.gamma2[i];
      for (Eigen::Index j = 0; j < m_; ++j) {
        const Complex ej = expo_[j];
        const Complex num = fi + ej;
        const Complex den = fi - ej;
        const Complex q = num * std::conj(den) / std::norm(den);
        system(i, j) += dl_scale * (dz_[j] * q).real();
        const double mirrored = 0.5 * std::log(std::norm(ei - image_[j])) +
                                0.5 * k * (yi - curve.gamma2[j] - 2.0 * depth_) - std::numbers::ln2;
        single_layer_(i, j) -= quad * mirrored / kTwoPi;
      }
    }
  }
  lu_.compute(system);
  const double rcond = lu_.rcond();
  if (!(rcond > 1e-13)) fail(ErrorKind::Solver, "double-layer system is singular (rcond " + std::to_string(rcond) + ")");
}

Samples LayerPotentialSolver::density(const Samples& xi) const {
  if (xi.size() != m_) fail(ErrorKind::Config, "xi size does not match the curve");
  Eigen::VectorXd rhs = xi.matrix();
  return lu_.solve(rhs).array();
}

Samples LayerPotentialSolver::stream_function(const Samples& mu) const {
  const Samples mu_alpha = spectral::derivative(mu);
  return -(single_layer_ * mu_alpha.matrix()).array();
}

Samples LayerPotentialSolver::normal_derivative(const Samples& xi) const {
  const Samples psi = stream_function(density(xi));
  return -spectral::derivative(psi) / frame_.metric;
}

double LayerPotentialSolver::potential(const Point& p, const Samples& mu) const {
  const double k = wavenumber_;
  const double md = static_cast<double>(m_);
  const Complex ep = std::polar(std::exp(-k * p.y()), k * p.x());
  const Complex fp = finite_depth_ ? std::polar(std::exp(k * (p.y() + 2.0 * depth_)), k * p.x()) : Complex{};
  double phi = 0.0;
  for (Eigen::Index j = 0; j < m_; ++j) {
    double kernel = (dz_[j] * (ep + expo_[j]) / (ep - expo_[j])).real();
    if (finite_depth_) kernel += (dz_[j] * (fp + expo_[j]) / (fp - expo_[j])).real();
    phi += mu[j] * kernel;
  }
  return phi * k / (2.0 * md);
}

Samples dno_curve(const SurfaceCurve& curve, const Samples& xi, const FluidConfig& cfg,
                  const DnoBieSettings& settings) {
  return LayerPotentialSolver(curve, cfg, settings).normal_derivative(xi);
}

HarmonicEvaluation harmonic_eval(const SurfaceCurve& curve, const Samples& xi, const FluidConfig& cfg,
                                 const DnoBieSettings& settings, const std::vector<Point>& probes) {
  const LayerPotentialSolver solver(curve, cfg, settings);
  const Samples mu = solver.density(xi);
  const double spacing = solver.frame_data().total_length / static_cast<double>(curve.size());

  HarmonicEvaluation out;
  out.values.resize(static_cast<Eigen::Index>(probes.size()));
  for (std::size_t q = 0; q < probes.size(); ++q) {
    const auto idx = static_cast<Eigen::Index>(q);
    out.values[idx] = solver.potential(probes[q], mu);
    if (distance_to_curve(curve, probes[q]) < 3.0 * spacing) out.near_boundary.push_back(idx);
  }
  return out;
}

Samples dno(const SurfaceCurve& curve, const Samples& xi, const FluidConfig& cfg, const DnoOptions& options) {
  if (options.solver == DnoSolver::BoundaryIntegral) return dno_curve(curve, xi, cfg, options.bie);
  const Samples grid = spectral::grid(curve.size()) * (curve.period_x / kTwoPi);
  if (curve.closed() || ((curve.gamma1 - grid).abs() > 1e-12 * curve.period_x).any()) {
    fail(ErrorKind::Config, "the graph solver needs a curve on the uniform x-grid");
  }
  return dno_graph(curve.gamma2, xi, cfg, options.graph);
}

}  // namespace hamwave
