#include <benchmark/benchmark.h>

#include "fgbc/connection.hpp"
#include "fgbc/metrics.hpp"
#include "fgbc/transgression.hpp"

using namespace fgbc;

namespace {

CVec vec(std::initializer_list<cplx> v) {
  CVec r(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (cplx x : v) r(k++) = x;
  return r;
}

const CVec kZ = vec({cplx(0.3, -0.2), cplx(0.5, 0.1)});
const CVec kXi = vec({cplx(0.6, 0.2), cplx(-0.4, 0.7)});

MetricPtr blend() { return make_metric("fs-product-blend", 2, 0.1); }

}  // namespace

static void BM_JetSeedOrder(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto jp = JetPoint::seed_all(kZ, kXi, order);
    benchmark::DoNotOptimize(sqrt(abs2(jp.xi()[0]) * abs2(jp.xi()[0]) + abs2(jp.xi()[1]) * abs2(jp.xi()[1])));
  }
}
BENCHMARK(BM_JetSeedOrder)->DenseRange(1, 4);

static void BM_MetricTensors(benchmark::State& state) {
  const auto m = blend();
  for (auto _ : state) benchmark::DoNotOptimize(metric_tensors(*m, kZ, kXi));
}
BENCHMARK(BM_MetricTensors);

static void BM_Curvature(benchmark::State& state) {
  const auto m = blend();
  for (auto _ : state) benchmark::DoNotOptimize(curvature(*m, kZ, kXi));
}
BENCHMARK(BM_Curvature)->Unit(benchmark::kMicrosecond);

static void BM_Volume(benchmark::State& state) {
  const auto m = blend();
  const auto rule = SphereRule::product(2, static_cast<int>(state.range(0)), 2 * static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(volume_value(*m, kZ, rule));
}
BENCHMARK(BM_Volume)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_GbcIntegrand(benchmark::State& state) {
  const auto m = blend();
  const auto X = make_field("euler-product", 2);
  const VolumeModel vol(*m, integrand_sphere_rule(2));
  for (auto _ : state) benchmark::DoNotOptimize(gbc_integrand(*m, *X, kZ, 0, vol));
}
BENCHMARK(BM_GbcIntegrand)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
