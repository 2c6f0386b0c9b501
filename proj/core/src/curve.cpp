#include "hamwave/curve.hpp"

#include "hamwave/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace hamwave {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Jet {
  double value, first, second;
};

// Trigonometric interpolant of periodic data with two derivatives.
Jet evaluate_jet(const Spectrum& c, double alpha) {
  const auto m = c.size();
  const auto half = m / 2;
  const std::complex<double> step = std::polar(1.0, alpha);
  std::complex<double> phase = step;
  Jet out{c[0].real(), 0.0, 0.0};
  for (Eigen::Index k = 1; k < half; ++k) {
    const auto term = c[k] * phase;
    const double kk = static_cast<double>(k);
    out.value += 2.0 * term.real();
    out.first -= 2.0 * kk * term.imag();
    out.second -= 2.0 * kk * kk * term.real();
    phase *= step;
  }
  const double h = static_cast<double>(half);
  const double ny = c[half].real();
  out.value += ny * std::cos(h * alpha);
  out.first -= ny * h * std::sin(h * alpha);
  out.second -= ny * h * h * std::cos(h * alpha);
  return out;
}

// Root of a monotone increasing function on [lo, hi] with F(lo) <= 0 <= F(hi).
template <class F>
double monotone_root(F&& f, double guess, double lo, double hi) {
  double x = std::clamp(guess, lo, hi);
  for (int iter = 0; iter < 100; ++iter) {
    const auto [value, slope] = f(x);
    if (value > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    if (std::abs(value) < 1e-15 || hi - lo < 1e-15) return x;
    double next = slope > 0.0 ? x - value / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) < 1e-16) return next;
    x = next;
  }
  return x;
}

}  // namespace

void FluidConfig::validate() const {
  if (!(gravity > 0.0)) fail(ErrorKind::Config, "gravity must be positive");
  if (!(surface_tension >= 0.0)) fail(ErrorKind::Config, "surface_tension must be non-negative");
  if (!depth.is_infinite() && !(depth.value() > 0.0)) fail(ErrorKind::Config, "depth must be positive");
  if (!(period_x > 0.0)) fail(ErrorKind::Config, "period_x must be positive");
}

Samples SurfaceCurve::periodic_gamma1() const {
  if (closed()) return gamma1;
  return gamma1 - spectral::grid(size()) * (period_x / kTwoPi);
}

void SurfaceCurve::validate() const {
  const auto m = size();
  if (gamma2.size() != m) fail(ErrorKind::Config, "gamma1 and gamma2 differ in length");
  if (m < 16 || m % 2 != 0) {
    fail(ErrorKind::Config, "curve needs an even number of nodes >= 16, got " + std::to_string(m));
  }
  if (!(period_x >= 0.0) || !std::isfinite(period_x)) fail(ErrorKind::Config, "period_x must be >= 0");
  if (!gamma1.allFinite() || !gamma2.allFinite()) fail(ErrorKind::Geometry, "curve has non-finite nodes");
}

CurveDerivatives tangent_vectors(const SurfaceCurve& curve) {
  CurveDerivatives d;
  d.d1 = spectral::derivative(curve.periodic_gamma1());
  if (!curve.closed()) d.d1 += curve.period_x / kTwoPi;
  d.d2 = spectral::derivative(curve.gamma2);
  return d;
}

FrameData frame(const SurfaceCurve& curve) {
  curve.validate();
  const auto [d1, d2] = tangent_vectors(curve);
  const Samples dd1 = spectral::derivative(curve.periodic_gamma1(), 2);
  const Samples dd2 = spectral::derivative(curve.gamma2, 2);

  FrameData f;
  f.metric = (d1.square() + d2.square()).sqrt();
  const double smallest = f.metric.minCoeff();
  if (!(smallest >= kDegenerateMetric)) {
    fail(ErrorKind::DegenerateParametrization,
         "degenerate parametrization: metric " + std::to_string(smallest) + " below 1e-10");
  }
  f.tangent1 = d1 / f.metric;
  f.tangent2 = d2 / f.metric;
  f.normal1 = -f.tangent2;
  f.normal2 = f.tangent1;
  // Equals (dT/dalpha . N) / |gamma_alpha|.
  f.curvature = (d1 * dd2 - d2 * dd1) / f.metric.cube();
  f.total_length = kTwoPi * f.metric.mean();
  return f;
}

SurfaceCurve resample(const SurfaceCurve& curve, const Samples& alpha) {
  SurfaceCurve out;
  out.period_x = curve.period_x;
  out.gamma1 = spectral::interpolate(curve.periodic_gamma1(), alpha);
  if (!curve.closed()) out.gamma1 += alpha * (curve.period_x / kTwoPi);
  out.gamma2 = spectral::interpolate(curve.gamma2, alpha);
  return out;
}

Reparametrization reparametrize_uniform_map(const SurfaceCurve& curve) {
  const FrameData f = frame(curve);
  const auto m = curve.size();
  const double length = f.total_length;
  const double rate = length / kTwoPi;
  const Spectrum arc = spectral::forward(spectral::antiderivative(f.metric));
  const double arc0 = evaluate_jet(arc, 0.0).value;

  Samples source(m);
  source[0] = 0.0;
  for (Eigen::Index j = 1; j < m; ++j) {
    const double target = length * static_cast<double>(j) / static_cast<double>(m);
    auto residual = [&](double a) {
      const Jet p = evaluate_jet(arc, a);
      return std::pair{rate * a + p.value - arc0 - target, rate + p.first};
    };
    source[j] = monotone_root(residual, kTwoPi * static_cast<double>(j) / static_cast<double>(m), 0.0, kTwoPi);
  }
  return {resample(curve, source), source};
}

SurfaceCurve reparametrize_uniform(const SurfaceCurve& curve) { return reparametrize_uniform_map(curve).curve; }

SurfaceCurve graph_to_curve(const Samples& eta, double period_x) {
  SurfaceCurve c;
  c.period_x = period_x;
  c.gamma1 = spectral::grid(eta.size()) * (period_x / kTwoPi);
  c.gamma2 = eta;
  return c;
}

bool is_graph(const SurfaceCurve& curve) {
  if (curve.closed()) return false;
  const auto m = curve.size();
  for (Eigen::Index j = 0; j < m; ++j) {
    const double next = j + 1 < m ? curve.gamma1[j + 1] : curve.gamma1[0] + curve.period_x;
    if (!(next > curve.gamma1[j])) return false;
  }
  const Samples d1 = tangent_vectors(curve).d1;
  return (d1 > 0.0).all();
}

Samples graph_parameters(const SurfaceCurve& curve) {
  curve.validate();
  if (!is_graph(curve)) fail(ErrorKind::NotAGraph, kOverturnedMessage);
  const auto m = curve.size();
  const double x_rate = curve.period_x / kTwoPi;
  const Spectrum p = spectral::forward(curve.periodic_gamma1());
  const double spread = curve.gamma1.maxCoeff() - curve.gamma1.minCoeff();

  Samples alpha(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double x = curve.period_x * static_cast<double>(j) / static_cast<double>(m);
    auto residual = [&](double a) {
      const Jet q = evaluate_jet(p, a);
      return std::pair{x_rate * a + q.value - x, x_rate + q.first};
    };
    const double guess = x / x_rate - p[0].real() / x_rate;
    // gamma1(a) - x_rate*a is bounded by the spread of the nodes plus one period.
    const double pad = (spread + curve.period_x) / x_rate;
    alpha[j] = monotone_root(residual, guess, guess - pad, guess + pad);
  }
  return alpha;
}

Samples curve_to_graph(const SurfaceCurve& curve) {
  const Samples alpha = graph_parameters(curve);
  return spectral::interpolate(curve.gamma2, alpha);
}

SurfaceCurve normal_perturb(const SurfaceCurve& curve, const Samples& a) {
  const FrameData f = frame(curve);
  SurfaceCurve out = curve;
  out.gamma1 += a * f.normal1;
  out.gamma2 += a * f.normal2;
  frame(out);
  return out;
}

ChordArcReport chord_arc(const SurfaceCurve& curve, const Depth& depth) {
  const FrameData f = frame(curve);
  const auto m = curve.size();
  const double length = f.total_length;
  const Samples arc = spectral::grid(m) * (length / kTwoPi) + spectral::antiderivative(f.metric);

  double ratio = 1.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const double along = arc[j] - arc[i];
      const double dx = curve.gamma1[j] - curve.gamma1[i];
      const double dy = curve.gamma2[j] - curve.gamma2[i];
      const double chord = std::hypot(dx, dy);
      if (curve.closed()) {
        ratio = std::min(ratio, chord / std::min(along, length - along));
      } else {
        const double wrapped = std::hypot(curve.period_x - dx, dy);
        ratio = std::min({ratio, chord / along, wrapped / (length - along)});
      }
    }
  }
  ChordArcReport report;
  report.min_ratio = ratio;
  report.bottom_clearance = depth.is_infinite() ? std::numeric_limits<double>::infinity()
                                                : curve.gamma2.minCoeff() + depth.value();
  return report;
}

double distance_to_curve(const SurfaceCurve& curve, const Point& p) {
  const auto m = curve.size();
  Eigen::Index nearest = 0;
  double best = std::numeric_limits<double>::infinity();
  // Nodes of the neighbouring periods are candidates too.
  for (int shift = -1; shift <= 1; ++shift) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double d = std::hypot(curve.gamma1[j] + shift * curve.period_x - p.x(), curve.gamma2[j] - p.y());
      if (d < best) {
        best = d;
        nearest = j + shift * m;
      }
    }
  }
  const Spectrum c1 = spectral::forward(curve.periodic_gamma1());
  const Spectrum c2 = spectral::forward(curve.gamma2);
  const double rate = curve.closed() ? 0.0 : curve.period_x / kTwoPi;
  const double h = kTwoPi / static_cast<double>(m);
  double a = h * static_cast<double>(nearest);
  const double lo = a - h;
  const double hi = a + h;
  for (int iter = 0; iter < 50; ++iter) {
    const Jet x = evaluate_jet(c1, a);
    const Jet y = evaluate_jet(c2, a);
    const double ex = x.value + rate * a - p.x();
    const double ey = y.value - p.y();
    const double dx = x.first + rate;
    const double g = ex * dx + ey * y.first;
    const double dg = dx * dx + y.first * y.first + ex * x.second + ey * y.second;
    if (!(dg > 0.0)) break;
    const double next = std::clamp(a - g / dg, lo, hi);
    const bool done = std::abs(next - a) < 1e-15;
    a = next;
    if (done) break;
  }
  const double ex = evaluate_jet(c1, a).value + rate * a - p.x();
  const double ey = evaluate_jet(c2, a).value - p.y();
  return std::min(best, std::hypot(ex, ey));
}

SurfaceCurve flat_curve(Eigen::Index m, double period_x) { return graph_to_curve(Samples::Zero(m), period_x); }

double surface_inner(const Samples& f, const Samples& g, const Samples& metric) {
  return (f * g * metric).sum() * kTwoPi / static_cast<double>(f.size());
}

}  // namespace hamwave
