#include "hoq/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace hoq {

ComplexMatrix random_isometry(std::size_t rows, std::size_t cols, Rng& rng) {
  if (rows < cols)
    throw std::invalid_argument("random_isometry: rows < cols");
  ComplexMatrix g = rng.ginibre(rows, cols);
  // modified Gram-Schmidt, two passes
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t c = 0; c < cols; ++c) {
      for (std::size_t p = 0; p < c; ++p) {
        cx ip{};
        for (std::size_t r = 0; r < rows; ++r)
          ip += std::conj(g(r, p)) * g(r, c);
        for (std::size_t r = 0; r < rows; ++r) g(r, c) -= ip * g(r, p);
      }
      double nrm = 0;
      for (std::size_t r = 0; r < rows; ++r) nrm += std::norm(g(r, c));
      nrm = std::sqrt(nrm);
      if (nrm < 1e-12)
        throw std::runtime_error("random_isometry: rank deficiency");
      for (std::size_t r = 0; r < rows; ++r) g(r, c) /= nrm;
    }
  }
  return g;
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  return random_isometry(dim, dim, rng);
}

ComplexMatrix random_density(std::size_t dim, Rng& rng) {
  ComplexMatrix p = random_psd(dim, rng);
  const cx tr = p.trace();
  return p * (1.0 / tr.real());
}

ComplexMatrix random_psd(std::size_t dim, Rng& rng) {
  ComplexMatrix v = rng.ginibre(dim, dim);
  ComplexMatrix p = v * v.dagger();
  return p * (1.0 / static_cast<double>(dim));
}

}  // namespace hoq
