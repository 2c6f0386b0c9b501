#pragma once

#include <Eigen/Core>

#include <complex>
#include <functional>

namespace hamwave {

/// Nodal values on the uniform grid alpha_j = 2*pi*j/M.
using Samples = Eigen::ArrayXd;
/// Fourier coefficients in FFT order, normalized so f_j = sum_k c_k exp(i k alpha_j).
using Spectrum = Eigen::ArrayXcd;

namespace spectral {

Spectrum forward(const Samples& f);
Samples inverse(const Spectrum& c);

/// Signed wavenumber of FFT slot `index`; the Nyquist slot maps to +m/2.
inline int wavenumber(Eigen::Index index, Eigen::Index m) {
  return static_cast<int>(index <= m / 2 ? index : index - m);
}

double mean(const Samples& f);

/// d^order f / d alpha^order. Odd orders drop the Nyquist mode.
Samples derivative(const Samples& f, int order = 1);

/// Mean-zero antiderivative of f - mean(f).
Samples antiderivative(const Samples& f);

/// Applies an even Fourier multiplier `symbol(|k|)`, k the integer wavenumber.
Samples apply_multiplier(const Samples& f, const std::function<double(double)>& symbol);

/// Periodic Hilbert transform, symbol -i sign(k).
Samples hilbert(const Samples& f);

/// Zeroes every mode with |k| > M/3.
Samples dealias(const Samples& f);

/// Multiplies mode k by exp(-strength (|k| / (M/2))^order).
Samples exponential_filter(const Samples& f, int order, double strength = 36.0);

/// Evaluates the trigonometric interpolant of f at arbitrary parameters.
Samples interpolate(const Samples& f, const Samples& alpha);
double interpolate(const Samples& f, double alpha);

/// Interpolant and its first derivative at one parameter value.
struct ValueSlope {
  double value;
  double slope;
};
ValueSlope interpolate_with_slope(const Spectrum& coefficients, double alpha);

/// Node parameters alpha_j = 2*pi*j/m.
Samples grid(Eigen::Index m);

/// Largest |c_k| over the upper third of the spectrum relative to the largest |c_k| overall.
double tail_fraction(const Samples& f);

}  // namespace spectral
}  // namespace hamwave
