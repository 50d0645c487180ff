#include <benchmark/benchmark.h>

#include "hmf/forms.hpp"
#include "hmf/fourier.hpp"
#include "hmf/lseries.hpp"
#include "hmf/volume.hpp"

using namespace hmf;

static void BM_MultiplyDegreeOne(benchmark::State& state) {
  const FieldDesc Q = make_field(1);
  const auto T = state.range(0);
  auto e4 = eisenstein(Q, 4, T), e6 = eisenstein(Q, 6, T);
  for (auto _ : state) benchmark::DoNotOptimize(multiply(e4, e6));
}
BENCHMARK(BM_MultiplyDegreeOne)->Arg(200)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_MultiplySqrtFive(benchmark::State& state) {
  const FieldDesc K = make_field(5);
  const auto T = state.range(0);
  auto e2 = eisenstein(K, 2, T), e4 = eisenstein(K, 4, T);
  for (auto _ : state) benchmark::DoNotOptimize(multiply(e2, e4));
}
BENCHMARK(BM_MultiplySqrtFive)->Arg(30)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

static void BM_BracketSqrtFive(benchmark::State& state) {
  const FieldDesc K = make_field(5);
  auto e2 = eisenstein(K, 2, 60), e4 = eisenstein(K, 4, 60);
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rc_bracket(e2, e4, m));
}
BENCHMARK(BM_BracketSqrtFive)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_EigencheckDelta(benchmark::State& state) {
  const FieldDesc Q = make_field(1);
  const auto T = state.range(0);
  auto e4 = eisenstein(Q, 4, T), e6 = eisenstein(Q, 6, T);
  FourierExpansion delta = normalize(construct_cusp_space({e4 * e4 * e4, e6 * e6}).at(0));
  for (auto _ : state) benchmark::DoNotOptimize(eigencheck(delta, T));
}
BENCHMARK(BM_EigencheckDelta)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_RankinSelbergTruncation(benchmark::State& state) {
  const FieldDesc Q = make_field(1);
  const HeckeTable e4 = eisenstein_table(Q, 4, 10000);
  for (auto _ : state) benchmark::DoNotOptimize(rs_l_value(e4, e4, 9.0, 10000));
}
BENCHMARK(BM_RankinSelbergTruncation)->Unit(benchmark::kMillisecond);

static void BM_SurveyRow(benchmark::State& state) {
  const FieldDesc F = make_field(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(normalized_volume(F, 10000));
}
BENCHMARK(BM_SurveyRow)->Arg(5)->Arg(101)->Arg(499)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
