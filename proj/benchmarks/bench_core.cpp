#include <benchmark/benchmark.h>

#include <cmath>

#include "isoprofile/convex_body.hpp"
#include "isoprofile/rng.hpp"

using namespace isoprofile;

namespace {

ConvexBody ngon(int k) {
  std::vector<Vector> pts;
  for (int i = 0; i < k; ++i) {
    const double t = 2.0 * kPi * i / k;
    pts.push_back(make_vec2(std::cos(t), std::sin(t)));
  }
  return make_polytope(pts);
}

void BM_RadialFunction(benchmark::State& state) {
  auto body = ngon(static_cast<int>(state.range(0))).centered();
  Rng rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(radial_function(body, rng.unit_vector(2)));
  }
}
BENCHMARK(BM_RadialFunction)->Arg(8)->Arg(64);

void BM_MetricBallVolume2D(benchmark::State& state) {
  auto body = ngon(static_cast<int>(state.range(0)));
  const Vector x = make_vec2(0.3, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(metric_ball_volume(body, x, 0.4).value);
  }
}
BENCHMARK(BM_MetricBallVolume2D)->Arg(8)->Arg(64);

void BM_HausdorffPolytopes(benchmark::State& state) {
  auto a = ngon(static_cast<int>(state.range(0)));
  auto b = a.scaled(1.7).translated(make_vec2(0.2, -0.1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hausdorff_distance(a, b));
  }
}
BENCHMARK(BM_HausdorffPolytopes)->Arg(16)->Arg(64);

void BM_MonteCarloVolume(benchmark::State& state) {
  auto body = ngon(16);
  MonteCarloParams mc;
  mc.samples = state.range(0);
  mc.seed = 9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(volume(body, VolumeMethod::MonteCarlo, mc).value);
  }
}
BENCHMARK(BM_MonteCarloVolume)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
