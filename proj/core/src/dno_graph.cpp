#include "hamwave/dno.hpp"
#include "hamwave/error.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace hamwave {

// Operator expansion G_CS = sum_j G_j(eta) in self-adjoint recursive form:
//   G_0 = A_{-1},
//   G_j xi = A_{j-1} D (eta^j/j!) D xi - sum_{l=1..j} A_l (eta^l/l!) G_{j-l} xi,
// with D = -i d/dx, A_l = |D|^l for even l and |D|^l tanh(h|D|) for odd l.
Samples dno_graph_unnormalized(const Samples& eta, const Samples& xi, const FluidConfig& cfg,
                               const DnoGraphSettings& settings) {
  cfg.validate();
  if (settings.expansion_order < 0 || settings.expansion_order > kMaxExpansionOrder) {
    fail(ErrorKind::Config, "expansion_order must lie in [0, 12], got " + std::to_string(settings.expansion_order));
  }
  if (eta.size() != xi.size()) fail(ErrorKind::Config, "eta and xi differ in length");

  const double scale = 2.0 * std::numbers::pi / cfg.period_x;
  const bool deep = cfg.depth.is_infinite();
  const double h = cfg.depth.value();
  // Symbol of A_l; l = -1 gives the flat operator |D| tanh(h|D|).
  auto smoothing = [&](int l) {
    return [=](double k) {
      const double kp = k * scale;
      const double t = deep ? 1.0 : std::tanh(h * kp);
      if (l < 0) return kp * t;
      const double base = std::pow(kp, l);
      return l % 2 == 1 ? base * t : base;
    };
  };

  const int order = settings.expansion_order;
  std::vector<Samples> powers(static_cast<std::size_t>(order) + 1);
  powers[0] = Samples::Ones(eta.size());
  for (int l = 1; l <= order; ++l) powers[static_cast<std::size_t>(l)] = powers[static_cast<std::size_t>(l - 1)] * eta / l;

  const Samples xi_x = spectral::derivative(xi) * scale;
  std::vector<Samples> terms;
  terms.reserve(static_cast<std::size_t>(order) + 1);
  terms.push_back(spectral::apply_multiplier(xi, smoothing(-1)));
  Samples total = terms.front();
  for (int j = 1; j <= order; ++j) {
    const Samples flux = spectral::derivative(powers[static_cast<std::size_t>(j)] * xi_x) * scale;
    Samples term = -spectral::apply_multiplier(flux, smoothing(j - 1));
    for (int l = 1; l <= j; ++l) {
      term -= spectral::apply_multiplier(powers[static_cast<std::size_t>(l)] * terms[static_cast<std::size_t>(j - l)],
                                         smoothing(l));
    }
    total += term;
    terms.push_back(std::move(term));
  }
  return total;
}

Samples dno_graph(const Samples& eta, const Samples& xi, const FluidConfig& cfg, const DnoGraphSettings& settings) {
  const double scale = 2.0 * std::numbers::pi / cfg.period_x;
  const Samples eta_x = spectral::derivative(eta) * scale;
  return dno_graph_unnormalized(eta, xi, cfg, settings) / (1.0 + eta_x.square()).sqrt();
}

}  // namespace hamwave
