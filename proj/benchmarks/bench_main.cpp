#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "lagint/kernels.hpp"
#include "lagint/laguerre_process.hpp"
#include "lagint/numerics.hpp"
#include "lagint/rmt.hpp"
#include "lagint/scalar_diffusion.hpp"

namespace {

using namespace lagint;

void BM_BesselScaled(benchmark::State& state) {
  const double nu = static_cast<double>(state.range(0)) / 4.0;
  double z = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_i_scaled(nu, z));
    z = z < 500.0 ? z * 1.37 : 0.1;
  }
}
BENCHMARK(BM_BesselScaled)->Arg(-6)->Arg(0)->Arg(10);

void BM_TransitionDensity(benchmark::State& state) {
  double y = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(transition_density(1.5, 0.5, 2.0, y));
    y = y < 20.0 ? y * 1.1 : 0.05;
  }
}
BENCHMARK(BM_TransitionDensity);

void BM_TransitionSample(benchmark::State& state) {
  RngStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(transition_sample(1.5, 0.5, 2.0, rng));
}
BENCHMARK(BM_TransitionSample);

void BM_HaarUnitary(benchmark::State& state) {
  RngStream rng(2, 0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_haar_unitary(n, rng));
}
BENCHMARK(BM_HaarUnitary)->Arg(4)->Arg(16)->Arg(64);

void BM_LaguerreEnsemble(benchmark::State& state) {
  RngStream rng(3, 0);
  const auto n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_laguerre_ensemble(n, 1.5, rng));
}
BENCHMARK(BM_LaguerreEnsemble)->Arg(2)->Arg(8)->Arg(32);

void BM_KmDensity(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back(1.0 + 1.5 * static_cast<double>(i));
    ys.push_back(0.8 + 1.7 * static_cast<double>(i));
  }
  const ChamberPoint x(xs);
  for (auto _ : state) benchmark::DoNotOptimize(km_density(1.0, 0.5, x, ys));
}
BENCHMARK(BM_KmDensity)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

void BM_SampleAlphaCorner(benchmark::State& state) {
  RngStream rng(4, 0);
  const ChamberPoint x{1.0, 2.0, 4.0, 7.0};
  for (auto _ : state) benchmark::DoNotOptimize(sample_alpha_corner(1.0, x, rng));
}
BENCHMARK(BM_SampleAlphaCorner);

void BM_KernelQuadrature(benchmark::State& state) {
  const KernelSpec kernel{KernelKind::alpha_corner, 1.0};
  const auto size = static_cast<std::size_t>(state.range(0));
  const ChamberPoint x = size == 2 ? ChamberPoint{1.0, 2.0} : size == 3 ? ChamberPoint{1.0, 2.0, 4.0}
                                                                     : ChamberPoint{1.0, 2.0, 4.0, 7.0};
  const TestFunction f = [](std::span<const double> y) {
    double s = 0.0;
    for (double v : y) s += v;
    return std::exp(-s);
  };
  for (auto _ : state) benchmark::DoNotOptimize(apply_kernel_quadrature(kernel, x, f, {2, 12}));
}
BENCHMARK(BM_KernelQuadrature)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
