#include <benchmark/benchmark.h>

#include <complex>

#include "bbkit/blowup.hpp"
#include "bbkit/flow_lab.hpp"
#include "bbkit/ideal_engine.hpp"
#include "bbkit/rng.hpp"
#include "bbkit/weights_core.hpp"

namespace {

using namespace bbkit;

void BM_act_exact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(42);
  WeightVector l = rng.weights(n, 3);
  PointE z;
  for (int k = 0; k < n; ++k) z.push_back(rng.gaussian_rational(6, 6));
  ExactScalar lambda{Rational(3, 2), Rational(-1, 5)};
  for (auto _ : state) benchmark::DoNotOptimize(act(lambda, l, z));
}
BENCHMARK(BM_act_exact)->Arg(4)->Arg(8)->Arg(16);

void BM_classify_float(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(43);
  WeightVector l = rng.weights(n, 3);
  PointC z = rng.pointc(n, 0.2, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(classify_point(l, z));
}
BENCHMARK(BM_classify_float)->Arg(4)->Arg(16);

void BM_parse_poly(benchmark::State& state) {
  const std::string text = "(3/2+1/4i)*z1^2*z3 - 5/7*z2*z4^3 + z5 - 2*z1*z2*z3*z4*z5";
  for (auto _ : state) benchmark::DoNotOptimize(parse_poly(text, 5));
}
BENCHMARK(BM_parse_poly);

void BM_strict_transform(benchmark::State& state) {
  auto ms = make_model_space(
      4, {parse_poly("z1^2 + z2^2 - z3^2 + z4^4", 4), parse_poly("z1*z2*z3 - z4^3", 4)});
  BlowupSpace b(4, 0);
  for (auto _ : state)
    for (int j : b.charts()) benchmark::DoNotOptimize(strict_transform_chart(ms, b, j));
}
BENCHMARK(BM_strict_transform);

void BM_flow_numeric(benchmark::State& state) {
  WeightVector l{1, 2, -1, 0};
  PointC z = {{0.7, 0.1}, {-0.4, 0.6}, {0.0, 0.0}, {0.3, -0.9}};
  FlowConfig cfg;
  cfg.dt = 1e-2;
  cfg.t_max = 20.0;
  for (auto _ : state) benchmark::DoNotOptimize(flow_numeric(l, z, cfg));
}
BENCHMARK(BM_flow_numeric);

void BM_krull(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<Poly> gens;
  for (int k = 1; k + 1 <= n; ++k) {
    Expo e(static_cast<std::size_t>(n), 0);
    e[k - 1] = 1;
    e[k] = 2;
    gens.push_back(Poly::monomial(n, std::move(e), ExactScalar(1)));
  }
  for (auto _ : state) benchmark::DoNotOptimize(krull_dim_monomial(gens, n));
}
BENCHMARK(BM_krull)->Arg(8)->Arg(12)->Arg(16);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
