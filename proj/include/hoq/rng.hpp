#pragma once

#include <cstdint>
#include <random>

#include "hoq/matrix.hpp"

namespace hoq {

// Seeded RNG wrapper. All randomized routines take explicit seeds; per-trial
// streams are derived with derive_seed so trial loops can run in any order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  double gauss() { return normal_(g_); }
  double uniform() { return uni_(g_); }
  std::uint64_t bits() { return g_(); }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(g_);
  }

  cx cgauss() { return cx{gauss(), gauss()}; }

  ComplexMatrix ginibre(std::size_t rows, std::size_t cols) {
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = cgauss();
    return m;
  }

  RealMatrix real_gauss(std::size_t rows, std::size_t cols) {
    RealMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = gauss();
    return m;
  }

 private:
  std::mt19937_64 g_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uni_{0.0, 1.0};
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream + 1));
}

// Columns of the result are orthonormal (rows >= cols required); built by
// modified Gram-Schmidt with one re-orthogonalization pass.
ComplexMatrix random_isometry(std::size_t rows, std::size_t cols, Rng& rng);

ComplexMatrix random_unitary(std::size_t dim, Rng& rng);

// Unit-trace PSD matrix.
ComplexMatrix random_density(std::size_t dim, Rng& rng);

// PSD matrix with O(1) entries, not normalized.
ComplexMatrix random_psd(std::size_t dim, Rng& rng);

}  // namespace hoq
