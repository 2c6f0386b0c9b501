#include "hamwave/spectral.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using hamwave::Samples;
namespace spectral = hamwave::spectral;

TEST(Spectral, ForwardMatchesDirectSummation) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  Samples f(32);
  for (auto& v : f) v = n(rng);
  const auto fast = spectral::forward(f);
  const auto slow = oracle::naive_dft(f);
  EXPECT_LT((fast - slow).abs().maxCoeff(), 1e-14);
  EXPECT_LT((spectral::inverse(fast) - f).abs().maxCoeff(), 1e-13);
}

TEST(Spectral, DerivativesOfTrigPolynomialAreExact) {
  std::mt19937_64 rng(5);
  const auto t = oracle::random_trig(rng, 10, 1.0, 1.0);
  const Samples a = oracle::nodes(64);
  for (int order = 1; order <= 3; ++order) {
    EXPECT_LT((spectral::derivative(t.value(a), order) - t.derivative(a, order)).abs().maxCoeff(), 1e-10)
        << "order " << order;
  }
}

TEST(Spectral, AntiderivativeHasZeroMeanAndInvertsDerivative) {
  const Samples a = oracle::nodes(32);
  const Samples f = (a).cos() + 0.3;
  const Samples g = spectral::antiderivative(f);
  EXPECT_NEAR(g.mean(), 0.0, 1e-15);
  EXPECT_LT((g - a.sin()).abs().maxCoeff(), 1e-14);
  EXPECT_LT((spectral::derivative(g) - (f - 0.3)).abs().maxCoeff(), 1e-13);
}

TEST(Spectral, MultiplierMatchesDirectSummation) {
  std::mt19937_64 rng(7);
  const Samples f = oracle::random_trig(rng, 15, 1.0, 0.5).value(oracle::nodes(48));
  auto symbol = [](double k) { return k * std::tanh(0.7 * k); };
  EXPECT_LT((spectral::apply_multiplier(f, symbol) - oracle::multiplier(f, symbol)).abs().maxCoeff(), 1e-12);
}

TEST(Spectral, HilbertTransformOfCosineIsSine) {
  const Samples a = oracle::nodes(32);
  EXPECT_LT((spectral::hilbert((3 * a).cos()) - (3 * a).sin()).abs().maxCoeff(), 1e-14);
}

TEST(Spectral, DealiasKeepsLowModesAndRemovesHighOnes) {
  const Samples a = oracle::nodes(48);
  const Samples low = (16 * a).cos();
  const Samples high = (17 * a).cos();
  EXPECT_LT((spectral::dealias(low) - low).abs().maxCoeff(), 1e-13);
  EXPECT_LT(spectral::dealias(high).abs().maxCoeff(), 1e-13);
}

TEST(Spectral, InterpolationReproducesTrigPolynomialOffGrid) {
  std::mt19937_64 rng(11);
  const auto t = oracle::random_trig(rng, 8, 1.0, 1.0);
  const Samples f = t.value(oracle::nodes(32));
  Samples probe(5);
  probe << 0.1, 1.3, 2.9, 4.4, 6.2;
  EXPECT_LT((spectral::interpolate(f, probe) - t.value(probe)).abs().maxCoeff(), 1e-13);
  const auto vs = spectral::interpolate_with_slope(spectral::forward(f), 1.3);
  EXPECT_NEAR(vs.slope, t.derivative(Samples::Constant(1, 1.3))[0], 1e-12);
}

TEST(Spectral, NyquistModeInterpolatesAsCosine) {
  const Samples a = oracle::nodes(16);
  const Samples f = (8 * a).cos();
  EXPECT_NEAR(spectral::interpolate(f, 0.1), std::cos(0.8), 1e-13);
  EXPECT_NEAR(spectral::interpolate(f, 0.1), oracle::trig_interpolate(f, 0.1), 1e-13);
}

TEST(Spectral, ExponentialFilterLeavesLowModesAlmostUntouched) {
  const Samples a = oracle::nodes(128);
  const Samples low = a.cos();
  EXPECT_LT((spectral::exponential_filter(low, 16) - low).abs().maxCoeff(), 1e-15);
  const Samples top = (63 * a).cos();
  EXPECT_LT(spectral::exponential_filter(top, 16).abs().maxCoeff(), 0.1);
}

TEST(Spectral, TailFractionDetectsUnderResolution) {
  const Samples a = oracle::nodes(30);
  EXPECT_LT(spectral::tail_fraction(a.cos()), 1e-14);
  EXPECT_NEAR(spectral::tail_fraction(a.cos() + 0.5 * (12 * a).cos()), 0.5, 1e-12);
}
