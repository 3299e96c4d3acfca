#include <complex>
#include <vector>

#include "doctest.h"
#include "hoq/kernels.hpp"
#include "hoq/rng.hpp"

using namespace hoq;

TEST_CASE("gemm matches serial reference on sizes around the parallel grain") {
  for (std::size_t n : {3u, 17u, 40u, 64u}) {
    Rng rng(100 + n);
    std::vector<cx> a(n * n), b(n * n), c1(n * n), c2(n * n);
    for (auto& v : a) v = rng.cgauss();
    for (auto& v : b) v = rng.cgauss();
    kernels::serial::gemm(n, n, n, a.data(), b.data(), c1.data());
    kernels::gemm(n, n, n, a.data(), b.data(), c2.data());
    for (std::size_t i = 0; i < n * n; ++i) CHECK(c1[i] == c2[i]);
  }
}

TEST_CASE("gemm small known product") {
  // [[1,2],[3,4]] * [[5,6],[7,8]] = [[19,22],[43,50]]
  std::vector<double> a{1, 2, 3, 4}, b{5, 6, 7, 8}, c(4);
  kernels::gemm<double>(2, 2, 2, a.data(), b.data(), c.data());
  CHECK(c == std::vector<double>{19, 22, 43, 50});
}

TEST_CASE("kron matches serial reference") {
  Rng rng(7);
  const std::size_t r1 = 5, c1 = 4, r2 = 6, c2 = 7;
  std::vector<cx> a(r1 * c1), b(r2 * c2), k1(r1 * r2 * c1 * c2),
      k2(r1 * r2 * c1 * c2);
  for (auto& v : a) v = rng.cgauss();
  for (auto& v : b) v = rng.cgauss();
  kernels::serial::kron(r1, c1, r2, c2, a.data(), b.data(), k1.data());
  kernels::kron(r1, c1, r2, c2, a.data(), b.data(), k2.data());
  CHECK(k1 == k2);
}

TEST_CASE("permute_gather transposes a matrix") {
  // 2x3 row-major -> 3x2
  std::vector<double> src{1, 2, 3, 4, 5, 6}, dst(6);
  kernels::permute_gather<double>({3, 2}, {1, 3}, src.data(), dst.data());
  CHECK(dst == std::vector<double>{1, 4, 2, 5, 3, 6});
}

TEST_CASE("permute_gather parallel equals serial on larger arrays") {
  Rng rng(9);
  const std::size_t d = 20;  // 20^4 elements, over the grain
  std::vector<double> src(d * d * d * d), a(src.size()), b(src.size());
  for (auto& v : src) v = rng.gauss();
  std::vector<std::size_t> dims{d, d, d, d};
  std::vector<std::size_t> strides{1, d, d * d, d * d * d};  // full reversal
  kernels::serial::permute_gather(dims, strides, src.data(), a.data());
  kernels::permute_gather(dims, strides, src.data(), b.data());
  CHECK(a == b);
}

TEST_CASE("trace_reduce computes a matrix trace") {
  std::vector<double> src{1, 2, 3, 4};  // [[1,2],[3,4]]
  std::vector<double> out(1);
  kernels::trace_reduce<double>({}, {}, {2}, {3}, src.data(), out.data());
  CHECK(out[0] == 5);
}

TEST_CASE("trace_reduce partial trace of a 2x2 (x) 2x2 product") {
  // src = A (x) B with A=[[1,2],[3,4]], B=[[5,6],[7,8]]; Tr_B leaves tr(B)*A
  std::vector<double> a{1, 2, 3, 4}, b{5, 6, 7, 8}, src(16), out(4);
  kernels::kron<double>(2, 2, 2, 2, a.data(), b.data(), src.data());
  // axes (iA, iB, jA, jB) with strides (8,4,2,1); keep (iA,jA), trace (iB,jB)
  kernels::trace_reduce<double>({2, 2}, {8, 2}, {2}, {4 + 1}, src.data(),
                                out.data());
  CHECK(out == std::vector<double>{13, 26, 39, 52});
}
