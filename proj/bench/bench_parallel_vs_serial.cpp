// OpenMP kernels against the serial reference. With one core the two
// should be close; the gap grows with the thread count.

#include <benchmark/benchmark.h>

#include "walshsum/kernels.hpp"
#include "walshsum/means.hpp"
#include "walshsum/serial.hpp"
#include "walshsum/transform.hpp"

#include <random>

using namespace walshsum;

namespace {

std::vector<std::int64_t> random_ints(std::size_t n) {
  std::mt19937_64 gen(42);
  std::vector<std::int64_t> v(n);
  for (auto& x : v) x = static_cast<std::int64_t>(gen() % 2001) - 1000;
  return v;
}

StepFunction random_function(int res) {
  std::mt19937_64 gen(7);
  std::vector<Scalar> v(std::size_t{1} << res);
  for (auto& x : v) x = Scalar::ratio(static_cast<long long>(gen() % 41) - 20, static_cast<long long>(gen() % 6) + 1);
  return StepFunction(res, std::span<const Scalar>(v));
}

void BM_HadamardParallel(benchmark::State& state) {
  const auto base = random_ints(std::size_t{1} << state.range(0));
  for (auto _ : state) {
    auto a = base;
    hadamard_inplace(std::span<std::int64_t>(a));
    benchmark::DoNotOptimize(a.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(base.size()));
}

void BM_HadamardSerial(benchmark::State& state) {
  const auto base = random_ints(std::size_t{1} << state.range(0));
  for (auto _ : state) {
    auto a = base;
    serial::hadamard_butterfly(a);
    benchmark::DoNotOptimize(a.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(base.size()));
}

void BM_ConvolveParallel(benchmark::State& state) {
  const auto f = random_function(static_cast<int>(state.range(0)));
  const auto g = fejer(37, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(convolve(f, g));
}

void BM_ConvolveSerial(benchmark::State& state) {
  const auto f = random_function(static_cast<int>(state.range(0)));
  const auto g = fejer(37, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::convolve(f, g));
}

void BM_KernelSupParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernel_sup_values(static_cast<int>(state.range(0))));
}

void BM_KernelSupSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::kernel_sup_sweep(static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_HadamardParallel)->DenseRange(14, 20, 3)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_HadamardSerial)->DenseRange(14, 20, 3)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ConvolveParallel)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvolveSerial)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelSupParallel)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelSupSerial)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
