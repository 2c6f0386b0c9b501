#include "hamwave/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>
#include <vector>

namespace hamwave::spectral {
namespace {

using Complex = std::complex<double>;

Eigen::FFT<double>& engine() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

}  // namespace

Spectrum forward(const Samples& f) {
  const std::vector<double> in(f.data(), f.data() + f.size());
  std::vector<Complex> out;
  engine().fwd(out, in);
  Spectrum c(f.size());
  const double scale = 1.0 / static_cast<double>(f.size());
  for (Eigen::Index k = 0; k < f.size(); ++k) c[k] = out[static_cast<std::size_t>(k)] * scale;
  return c;
}

Samples inverse(const Spectrum& c) {
  const auto m = c.size();
  std::vector<Complex> in(static_cast<std::size_t>(m));
  for (Eigen::Index k = 0; k < m; ++k) in[static_cast<std::size_t>(k)] = c[k] * static_cast<double>(m);
  std::vector<Complex> out;
  engine().inv(out, in);
  Samples f(m);
  for (Eigen::Index j = 0; j < m; ++j) f[j] = out[static_cast<std::size_t>(j)].real();
  return f;
}

double mean(const Samples& f) { return f.mean(); }

Samples derivative(const Samples& f, int order) {
  if (order == 0) return f;
  const auto m = f.size();
  Spectrum c = forward(f);
  const Complex i(0.0, 1.0);
  for (Eigen::Index idx = 0; idx < m; ++idx) {
    const int k = wavenumber(idx, m);
    if (order % 2 == 1 && 2 * k == m) {
      c[idx] = 0.0;
      continue;
    }
    c[idx] *= std::pow(i * static_cast<double>(k), order);
  }
  return inverse(c);
}

Samples antiderivative(const Samples& f) {
  const auto m = f.size();
  Spectrum c = forward(f);
  const Complex i(0.0, 1.0);
  c[0] = 0.0;
  for (Eigen::Index idx = 1; idx < m; ++idx) {
    const int k = wavenumber(idx, m);
    if (2 * k == m) {
      c[idx] = 0.0;
    } else {
      c[idx] /= i * static_cast<double>(k);
    }
  }
  return inverse(c);
}

Samples apply_multiplier(const Samples& f, const std::function<double(double)>& symbol) {
  const auto m = f.size();
  Spectrum c = forward(f);
  for (Eigen::Index idx = 0; idx < m; ++idx) {
    c[idx] *= symbol(std::abs(static_cast<double>(wavenumber(idx, m))));
  }
  return inverse(c);
}

Samples hilbert(const Samples& f) {
  const auto m = f.size();
  Spectrum c = forward(f);
  const Complex i(0.0, 1.0);
  for (Eigen::Index idx = 0; idx < m; ++idx) {
    const int k = wavenumber(idx, m);
    if (k == 0 || 2 * k == m) {
      c[idx] = 0.0;
    } else {
      c[idx] *= k > 0 ? -i : i;
    }
  }
  return inverse(c);
}

Samples dealias(const Samples& f) {
  const auto m = f.size();
  Spectrum c = forward(f);
  for (Eigen::Index idx = 0; idx < m; ++idx) {
    if (3 * std::abs(wavenumber(idx, m)) > m) c[idx] = 0.0;
  }
  return inverse(c);
}

Samples exponential_filter(const Samples& f, int order, double strength) {
  const auto m = f.size();
  const double half = static_cast<double>(m / 2);
  return apply_multiplier(f, [=](double k) { return std::exp(-strength * std::pow(k / half, order)); });
}

ValueSlope interpolate_with_slope(const Spectrum& c, double alpha) {
  const auto m = c.size();
  const auto half = m / 2;
  const Complex step = std::polar(1.0, alpha);
  Complex phase = step;
  double value = c[0].real();
  double slope = 0.0;
  for (Eigen::Index k = 1; k < half; ++k) {
    // c_k e^{ik a} + c_{-k} e^{-ik a} = 2 Re(c_k e^{ik a}) for real data.
    const Complex term = c[k] * phase;
    value += 2.0 * term.real();
    slope += -2.0 * static_cast<double>(k) * term.imag();
    phase *= step;
  }
  // Nyquist slot taken symmetrically as c_{m/2} cos(m a / 2).
  const double nyquist = c[half].real();
  value += nyquist * std::cos(static_cast<double>(half) * alpha);
  slope -= nyquist * static_cast<double>(half) * std::sin(static_cast<double>(half) * alpha);
  return {value, slope};
}

double interpolate(const Samples& f, double alpha) {
  return interpolate_with_slope(forward(f), alpha).value;
}

Samples interpolate(const Samples& f, const Samples& alpha) {
  const Spectrum c = forward(f);
  Samples out(alpha.size());
  for (Eigen::Index j = 0; j < alpha.size(); ++j) out[j] = interpolate_with_slope(c, alpha[j]).value;
  return out;
}

Samples grid(Eigen::Index m) {
  return Samples::LinSpaced(m, 0.0, 2.0 * std::numbers::pi * static_cast<double>(m - 1) / static_cast<double>(m));
}

double tail_fraction(const Samples& f) {
  const auto m = f.size();
  const Spectrum c = forward(f);
  double peak = 0.0;
  double tail = 0.0;
  for (Eigen::Index idx = 1; idx < m; ++idx) {
    const double a = std::abs(c[idx]);
    peak = std::max(peak, a);
    if (3 * std::abs(wavenumber(idx, m)) > m) tail = std::max(tail, a);
  }
  return peak > 0.0 ? tail / peak : 0.0;
}

}  // namespace hamwave::spectral
