#include "doctest.h"
#include "hoq/checks.hpp"
#include "hoq/matrix.hpp"
#include "hoq/rng.hpp"

using namespace hoq;

namespace {
ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1;
  m(1, 0) = 1;
  return m;
}
ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m(0, 0) = 1;
  m(1, 1) = -1;
  return m;
}
}  // namespace

TEST_CASE("kron identity case: I2 (x) I2 = I4") {
  CHECK(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2))
            .frob_dist(ComplexMatrix::identity(4)) == 0.0);
}

TEST_CASE("trace is multiplicative over kron") {
  Rng rng(42);
  ComplexMatrix a = rng.ginibre(2, 2), b = rng.ginibre(2, 2);
  cx lhs = kron(a, b).trace();
  cx rhs = a.trace() * b.trace();
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("(X (x) Z)^2 = I4") {
  ComplexMatrix xz = kron(pauli_x(), pauli_z());
  CHECK((xz * xz).frob_dist(ComplexMatrix::identity(4)) < 1e-12);
}

TEST_CASE("kron mixed-product rule") {
  Rng rng(5);
  ComplexMatrix a = rng.ginibre(2, 3), c = rng.ginibre(3, 2);
  ComplexMatrix b = rng.ginibre(3, 2), d = rng.ginibre(2, 3);
  CHECK((kron(a, b) * kron(c, d)).frob_dist(kron(a * c, b * d)) < 1e-10);
}

TEST_CASE("dagger is an involution") {
  Rng rng(6);
  ComplexMatrix m = rng.ginibre(4, 3);
  CHECK(m.dagger().dagger().frob_dist(m) == 0.0);
}

TEST_CASE("psd_check accepts the identity") {
  CHECK(psd_check(ComplexMatrix::identity(4), 1e-9));
}

TEST_CASE("psd_check rejects diag(1, -0.1)") {
  ComplexMatrix m(2, 2);
  m(0, 0) = 1;
  m(1, 1) = -0.1;
  CHECK_FALSE(psd_check(m, 1e-9));
}

TEST_CASE("psd_check accepts Gram matrices VV^dag") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    ComplexMatrix v = rng.ginibre(4, 4);
    CHECK(psd_check(v * v.dagger(), 1e-9));
  }
}

TEST_CASE("psd_check rejects non-square input") {
  CHECK_THROWS_AS(psd_check(ComplexMatrix(2, 3), 1e-9), std::invalid_argument);
}

TEST_CASE("hermitian_check") {
  ComplexMatrix m(2, 2);
  m(0, 1) = cx{0, 1};
  m(1, 0) = cx{0, -1};
  CHECK(hermitian_check(m, 1e-12));
  m(1, 0) = cx{0, 1};
  CHECK_FALSE(hermitian_check(m, 1e-12));
}

TEST_CASE("min_hermitian_eig of Z is -1") {
  CHECK(min_hermitian_eig(pauli_z()) == doctest::Approx(-1.0).epsilon(1e-12));
}
