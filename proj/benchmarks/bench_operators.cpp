#include "hamwave/dno.hpp"
#include "hamwave/dynamics.hpp"
#include "hamwave/integrate.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

using namespace hamwave;

namespace {

constexpr double kX = 2.0 * std::numbers::pi;

PhaseState wave(Eigen::Index m) {
  const Samples x = spectral::grid(m);
  return {graph_to_curve(0.1 * x.cos(), kX), 0.1 * x.sin()};
}

void BM_DnoCurve(benchmark::State& st) {
  const PhaseState s = wave(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(dno_curve(s.curve, s.xi, FluidConfig{}));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_DnoCurve)->RangeMultiplier(2)->Range(32, 512)->Complexity();

void BM_DnoGraph(benchmark::State& st) {
  const PhaseState s = wave(st.range(0));
  const Samples eta = s.curve.gamma2;
  for (auto _ : st) benchmark::DoNotOptimize(dno_graph(eta, s.xi, FluidConfig{}, {}));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_DnoGraph)->RangeMultiplier(2)->Range(32, 1024)->Complexity();

void BM_RhsGraph(benchmark::State& st) {
  const PhaseState s = wave(st.range(0));
  DynamicsOptions o;
  o.dno.solver = DnoSolver::Graph;
  for (auto _ : st) benchmark::DoNotOptimize(rhs_graph(s.curve.gamma2, s.xi, FluidConfig{}, o));
}
BENCHMARK(BM_RhsGraph)->Arg(128)->Arg(256);

void BM_RhsArcLength(benchmark::State& st) {
  PhaseState s = wave(st.range(0));
  s = to_chart(s, Chart::ArcLength);
  for (auto _ : st) benchmark::DoNotOptimize(rhs_arclength(s, FluidConfig{}, {}));
}
BENCHMARK(BM_RhsArcLength)->Arg(128)->Arg(256);

void BM_StepArcLength(benchmark::State& st) {
  PhaseState s = to_chart(wave(st.range(0)), Chart::ArcLength);
  StepperConfig cfg;
  cfg.dt = 1e-3;
  for (auto _ : st) benchmark::DoNotOptimize(step(s, Chart::ArcLength, FluidConfig{}, cfg));
}
BENCHMARK(BM_StepArcLength)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
