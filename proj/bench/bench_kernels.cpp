// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <numeric>

#include "reefkit/correlation.hpp"
#include "reefkit/instances.hpp"
#include "reefkit/reef.hpp"
#include "reefkit/twin_primes.hpp"

using namespace reefkit;

namespace {

const SieveTables& sieve() {
  static const SieveTables s = build_sieve(2'000'016);
  return s;
}

void BM_HlCorrelationSerial(benchmark::State& state) {
  const auto n = static_cast<natural>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(serial::hl_correlation(sieve(), n, 2));
}

void BM_HlCorrelationParallel(benchmark::State& state) {
  const auto n = static_cast<natural>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hl_correlation(sieve(), n, 2));
}

void BM_SingularSerial(benchmark::State& state) {
  const auto l = static_cast<natural>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(serial::singular_series_partial(sieve(), 6, l));
}

void BM_SingularParallel(benchmark::State& state) {
  const auto l = static_cast<natural>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(singular_series_partial(sieve(), 6, l));
}

struct RationalInstance {
  TabulatedFunction<Rational> f;
  EratosthenesTransform<Rational> gp;
  FiniteExpansion<Rational> e;
  std::vector<natural> shifts;
};

const RationalInstance& instance() {
  static const RationalInstance inst = [] {
    SeededRng rng(20170905);
    auto f = random_table(rng, 150);
    auto gp = random_transform(rng, 150, 150);
    auto e = finite_expansion(gp, 150);
    std::vector<natural> shifts(60);
    std::iota(shifts.begin(), shifts.end(), natural{1});
    return RationalInstance{std::move(f), std::move(gp), std::move(e), std::move(shifts)};
  }();
  return inst;
}

void BM_ReefCoefficientsSerial(benchmark::State& state) {
  const auto& in = instance();
  for (auto _ : state) benchmark::DoNotOptimize(serial::reef_coefficients(in.f, in.e, 150));
}

void BM_ReefCoefficientsParallel(benchmark::State& state) {
  const auto& in = instance();
  for (auto _ : state) benchmark::DoNotOptimize(reef_coefficients(in.f, in.e, 150));
}

void BM_TruncatedProfileSerial(benchmark::State& state) {
  const auto& in = instance();
  for (auto _ : state) benchmark::DoNotOptimize(serial::truncated_profile(in.f, in.gp, 150, in.shifts));
}

void BM_TruncatedProfileParallel(benchmark::State& state) {
  const auto& in = instance();
  for (auto _ : state) benchmark::DoNotOptimize(truncated_profile(in.f, in.gp, 150, in.shifts));
}

void BM_ExpansionProfileSerial(benchmark::State& state) {
  const auto& in = instance();
  for (auto _ : state) benchmark::DoNotOptimize(serial::expansion_profile(in.f, in.e, 150, in.shifts));
}

void BM_ExpansionProfileParallel(benchmark::State& state) {
  const auto& in = instance();
  for (auto _ : state) benchmark::DoNotOptimize(expansion_profile(in.f, in.e, 150, in.shifts));
}

}  // namespace

BENCHMARK(BM_HlCorrelationSerial)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HlCorrelationParallel)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SingularSerial)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SingularParallel)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReefCoefficientsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReefCoefficientsParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TruncatedProfileSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TruncatedProfileParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExpansionProfileSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExpansionProfileParallel)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  sieve();  // build outside the timed loops
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
