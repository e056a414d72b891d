#include <benchmark/benchmark.h>

#include <random>

#include "pkl/multiplier.hpp"
#include "pkl/pick_analysis.hpp"
#include "pkl/proof_engine.hpp"
#include "pkl/random.hpp"

using namespace pkl;

static void BM_psd_check(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const HermitianMatrix g = assemble_gram(KernelSpec::szego(), random_disk_points(rng, n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(psd_check(g));
  }
}
BENCHMARK(BM_psd_check)->Arg(4)->Arg(16)->Arg(50);

static void BM_cpp_check(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const PointSet base = random_disk_points(rng, 10);
  const PointSet sample = random_disk_points(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cpp_check(KernelSpec::szego(), base, sample));
  }
}
BENCHMARK(BM_cpp_check)->Arg(15)->Arg(40);

static void BM_necessity_certificate(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const PointSet ordering = random_disk_points(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(necessity_certificate(KernelSpec::szego(), ordering));
  }
}
BENCHMARK(BM_necessity_certificate)->Arg(6)->Arg(20);

static void BM_multiplier_norm(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Complex> w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(random_disk_value(rng, 0.5));
  const auto data = MultiplierData::scalar(KernelSpec::szego(), random_disk_points(rng, n), w);
  for (auto _ : state) {
    benchmark::DoNotOptimize(multiplier_norm(data));
  }
}
BENCHMARK(BM_multiplier_norm)->Arg(3)->Arg(10);

static void BM_extension_disk(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        one_point_extension_disk(PointSet{0.0, Complex(0.3, 0.2)}, {0.0, 0.2}, Point(0.5, 0)));
  }
}
BENCHMARK(BM_extension_disk);

BENCHMARK_MAIN();
