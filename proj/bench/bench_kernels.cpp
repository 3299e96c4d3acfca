// Serial-reference vs OpenMP kernel comparison, plus one end-to-end
// contraction at a supermap-application-sized workload.

#include <benchmark/benchmark.h>

#include "hoq/channel.hpp"
#include "hoq/kernels.hpp"
#include "hoq/rng.hpp"
#include "hoq/supermap.hpp"

using namespace hoq;

namespace {

std::vector<cx> random_buffer(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<cx> v(n);
  for (auto& x : v) x = rng.cgauss();
  return v;
}

void bm_gemm_serial(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  auto a = random_buffer(n * n, 1), b = random_buffer(n * n, 2);
  std::vector<cx> c(n * n);
  for (auto _ : state) {
    kernels::serial::gemm(n, n, n, a.data(), b.data(), c.data());
    benchmark::DoNotOptimize(c.data());
  }
}

void bm_gemm_parallel(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  auto a = random_buffer(n * n, 1), b = random_buffer(n * n, 2);
  std::vector<cx> c(n * n);
  for (auto _ : state) {
    kernels::gemm(n, n, n, a.data(), b.data(), c.data());
    benchmark::DoNotOptimize(c.data());
  }
}

void bm_permute_serial(benchmark::State& state) {
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  auto src = random_buffer(d * d * d * d, 3);
  std::vector<cx> dst(src.size());
  std::vector<std::size_t> dims{d, d, d, d};
  std::vector<std::size_t> strides{1, d, d * d, d * d * d};
  for (auto _ : state) {
    kernels::serial::permute_gather(dims, strides, src.data(), dst.data());
    benchmark::DoNotOptimize(dst.data());
  }
}

void bm_permute_parallel(benchmark::State& state) {
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  auto src = random_buffer(d * d * d * d, 3);
  std::vector<cx> dst(src.size());
  std::vector<std::size_t> dims{d, d, d, d};
  std::vector<std::size_t> strides{1, d, d * d, d * d * d};
  for (auto _ : state) {
    kernels::permute_gather(dims, strides, src.data(), dst.data());
    benchmark::DoNotOptimize(dst.data());
  }
}

void bm_apply_supermap(benchmark::State& state) {
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  SystemType a = SystemType::single("A", d), ap = SystemType::single("A'", d);
  SystemType b = SystemType::single("B", d), bp = SystemType::single("B'", d);
  Supermap s = comb_to_supermap(random_comb(a, ap, b, bp, 2, 5));
  SystemType x = SystemType::single("X", 3);
  Channel phi = random_channel(a.concat(x), ap.concat(x), 2, 6);
  for (auto _ : state) {
    Channel out = apply_supermap(s, phi);
    benchmark::DoNotOptimize(out.choi_matrix().data());
  }
}

}  // namespace

BENCHMARK(bm_gemm_serial)->Arg(32)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(bm_gemm_parallel)->Arg(32)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(bm_permute_serial)->Arg(8)->Arg(16)->Arg(24);
BENCHMARK(bm_permute_parallel)->Arg(8)->Arg(16)->Arg(24);
BENCHMARK(bm_apply_supermap)->Arg(2)->Arg(3)->Arg(4);

BENCHMARK_MAIN();
