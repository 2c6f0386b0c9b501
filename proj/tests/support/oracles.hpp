#pragma once

// Reference values computed independently of the library's spectral and solver code.

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using Vec = Eigen::ArrayXd;

inline constexpr double kPi = 3.14159265358979323846;

/// alpha_j = 2*pi*j/m.
Vec nodes(Eigen::Index m);

/// Complex DFT coefficients c_k = (1/m) sum_j f_j exp(-i k alpha_j), k = 0..m-1, by direct summation.
Eigen::ArrayXcd naive_dft(const Vec& f);

/// Applies an even multiplier symbol(|k|) to f by direct summation (Nyquist treated as real cosine).
Vec multiplier(const Vec& f, const std::function<double(double)>& symbol);

/// Exact derivative of sum_k c_k cos(k alpha + p_k).
struct Trig {
  std::vector<int> k;
  std::vector<double> c;
  std::vector<double> p;
  Vec value(const Vec& alpha) const;
  Vec derivative(const Vec& alpha, int order = 1) const;
};

/// Random trigonometric polynomial with modes 1..modes and amplitudes ~ amplitude / k^decay.
Trig random_trig(std::mt19937_64& rng, int modes, double amplitude, double decay);

/// Flat-surface operator |k| tanh(k h) applied spectrally by direct summation; h <= 0 means infinite depth.
Vec flat_dno(const Vec& xi, double depth, double period);

/// Harmonic function phi = V(y) cos(k x) with V = exp(k y) (deep) or cosh(k(y + h)) / cosh(k h).
struct Harmonic {
  double k = 1.0;
  double depth = 0.0;  // <= 0: infinite
  double phi(double x, double y) const;
  double phi_x(double x, double y) const;
  double phi_y(double x, double y) const;
};

/// Exact N . grad(phi) on the graph y = a cos(q x), using the exact slope.
Vec graph_normal_derivative(const Harmonic& h, double a, int q, const Vec& x);

/// 1 + h + h^2/2 + h^3/6 + h^4/24.
double rk4_exponential(double h);

/// Linear standing wave eta = a cos(kx) cos(wt), xi = -(g a / w) cos(kx) sin(wt).
double linear_omega(double k, double g, double sigma, double depth);

/// Central difference (f(+eps) - f(-eps)) / (2 eps).
double central_difference(const std::function<double(double)>& f, double eps);

/// Relative L2 error of `approx` against `exact`.
double rel_l2(const Vec& approx, const Vec& exact);

/// Evaluates the trigonometric interpolant of f (given at nodes) at arbitrary alpha by direct summation.
double trig_interpolate(const Vec& f, double alpha);

/// Distance from (px, py) to the interpolated periodic curve (gamma1 with secular part period).
double distance_to_interpolant(const Vec& gamma1, const Vec& gamma2, double period, double px, double py);

}  // namespace oracle
