#include "gst/carleson.hpp"
#include "gst/duality.hpp"
#include "gst/dyadic_grid.hpp"
#include "gst/entropy.hpp"
#include "gst/fixtures.hpp"
#include "gst/inner_outer.hpp"
#include "gst/privalov.hpp"
#include "gst/roberts.hpp"

#include <benchmark/benchmark.h>

using namespace gst;
namespace fx = gst::fixtures;

namespace {

const Weight kLinear = Weight::power(1.0);

void BM_EntropySumTriadic(benchmark::State& state) {
  const auto E = fx::triadic_set();
  for (auto _ : state) benchmark::DoNotOptimize(entropy_sum(E, kLinear));
}
BENCHMARK(BM_EntropySumTriadic);

void BM_EntropySumDivergent(benchmark::State& state) {
  const auto E = fx::divergent_cantor_set();
  for (auto _ : state) benchmark::DoNotOptimize(entropy_sum(E, kLinear));
}
BENCHMARK(BM_EntropySumDivergent)->Unit(benchmark::kMillisecond);

void BM_BuildGrid(benchmark::State& state) {
  const Weight w = Weight::log_power(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(build_grid(w, 4, 3.0, 2));
}
BENCHMARK(BM_BuildGrid);

// Grating the triadic measure at increasing depth: heavy arcs grow like 2^n.
void BM_GrateTriadic(benchmark::State& state) {
  const auto mu = fx::triadic_measure();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(grate(mu, n, 0.1, kLinear));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GrateTriadic)->DenseRange(8, 20, 4)->Unit(benchmark::kMillisecond);

void BM_DecomposeDivergent(benchmark::State& state) {
  const auto mu = fx::divergent_cantor_measure();
  const DyadicGrid grid{{4, 12, 36}, 3.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(decompose(mu, grid, 0.1, kLinear, 2));
}
BENCHMARK(BM_DecomposeDivergent)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_SingularInnerBuild(benchmark::State& state) {
  const auto mu = fx::triadic_measure();
  for (auto _ : state) benchmark::DoNotOptimize(SingularInner(mu));
}
BENCHMARK(BM_SingularInnerBuild)->Unit(benchmark::kMillisecond);

void BM_SingularInnerEval(benchmark::State& state) {
  const SingularInner S(fx::triadic_measure());
  const double r = 1.0 - std::ldexp(1.0, -static_cast<int>(state.range(0)));
  const Complex z = std::polar(r, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(S.eval(z, 1e-10));
}
BENCHMARK(BM_SingularInnerEval)->Arg(2)->Arg(8)->Arg(16);

void BM_PoissonBounds(benchmark::State& state) {
  const SingularInner S(fx::triadic_measure());
  const double s = std::ldexp(1.0, -static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(S.poisson_polar(s, 0.1));
}
BENCHMARK(BM_PoissonBounds)->Arg(4)->Arg(12)->Arg(20);

void BM_CarlesonBuild(benchmark::State& state) {
  const auto E = fx::triadic_set();
  for (auto _ : state) benchmark::DoNotOptimize(CarlesonOuter(E, kLinear, 8.0));
}
BENCHMARK(BM_CarlesonBuild)->Unit(benchmark::kMillisecond);

void BM_CarlesonPsi(benchmark::State& state) {
  const CarlesonOuter G(fx::triadic_set(), kLinear, 8.0);
  const Complex z = std::polar(0.99, 1.3);
  for (auto _ : state) benchmark::DoNotOptimize(G.psi_sum(z));
}
BENCHMARK(BM_CarlesonPsi);

void BM_AutoCarlesonPoint(benchmark::State& state) {
  const PrivalovDomain D(fx::point_set());
  for (auto _ : state) benchmark::DoNotOptimize(auto_carleson(D, kLinear, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_AutoCarlesonPoint)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_FwNorm(benchmark::State& state) {
  const auto f = DiscFunction::polynomial({0.0, 1.0, 0.5, 0.25});
  const Weight w = Weight::power(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(fw_norm(f, w, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_FwNorm)->Arg(16)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_KernelReproducingAtom(benchmark::State& state) {
  const ModelKernelSpec spec{DiscFunction::atomic_inner({{0.0, 1.0}}), Complex(0.2, 0.1)};
  for (auto _ : state)
    benchmark::DoNotOptimize(kernel_reproducing_check(spec, -0.3, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_KernelReproducingAtom)->Arg(1 << 12)->Arg(1 << 14);

}  // namespace
BENCHMARK_MAIN();
