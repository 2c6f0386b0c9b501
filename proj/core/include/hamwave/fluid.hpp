#pragma once

#include <limits>
#include <numbers>

namespace hamwave {

/// Flat bottom at y = -h, or no bottom at all.
class Depth {
 public:
  static constexpr Depth infinite() { return Depth(std::numeric_limits<double>::infinity()); }
  static constexpr Depth finite(double h) { return Depth(h); }

  constexpr bool is_infinite() const { return h_ == std::numeric_limits<double>::infinity(); }
  constexpr double value() const { return h_; }

  friend constexpr bool operator==(const Depth&, const Depth&) = default;

 private:
  constexpr explicit Depth(double h) : h_(h) {}
  double h_;
};

/// Physical parameters, density-normalized.
struct FluidConfig {
  double gravity = 1.0;
  double surface_tension = 0.0;
  Depth depth = Depth::infinite();
  double period_x = 2.0 * std::numbers::pi;

  /// Throws ErrorKind::Config when a field is out of range.
  void validate() const;
};

}  // namespace hamwave
