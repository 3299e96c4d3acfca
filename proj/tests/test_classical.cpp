#include "doctest.h"
#include "hoq/classical.hpp"

using namespace hoq;
using namespace hoq::classical;

namespace {

SystemType bit(const std::string& l) { return SystemType::single(l, 2); }

StochSupermap random_cl_supermap(std::uint64_t seed, std::size_t env = 2) {
  return cl_comb_to_supermap(
      cl_random_comb(bit("A"), bit("A'"), bit("B"), bit("B'"), env, seed));
}

}  // namespace

TEST_CASE("random stochastic matrices are stochastic and reproducible") {
  RealMatrix m = random_stochastic(3, 4, 5);
  CHECK(is_stochastic(m, 1e-12));
  CHECK(m.frob_dist(random_stochastic(3, 4, 5)) == 0.0);
  CHECK(m.frob_dist(random_stochastic(3, 4, 6)) > 1e-3);
}

TEST_CASE("column sums characterize stochasticity") {
  RealMatrix m(2, 2);
  m(0, 0) = 0.7;
  m(1, 0) = 0.3;
  m(0, 1) = 0.2;
  m(1, 1) = 0.9;
  CHECK_FALSE(is_stochastic(m, 1e-10));
  m(1, 1) = 0.8;
  CHECK(is_stochastic(m, 1e-10));
  m(0, 1) = -0.2;
  m(1, 1) = 1.2;
  CHECK(is_nonneg(RealMatrix::identity(2), 0.0));
  CHECK_FALSE(is_stochastic(m, 1e-10));
}

TEST_CASE("classical compose and tensor act as matrix product and kron") {
  RealMatrix a = random_stochastic(2, 3, 1), b = random_stochastic(3, 2, 2);
  StochChannel ca = make_stoch_channel(SystemType::single("X", 3),
                                       SystemType::single("Y", 2), a);
  StochChannel cb = make_stoch_channel(SystemType::single("Y", 2),
                                       SystemType::single("Z", 3), b);
  CHECK(cl_compose(cb, ca).matrix().frob_dist(b * a) <= 1e-12);
  CHECK(cl_tensor(ca, cb).matrix().frob_dist(kron(a, b)) <= 1e-12);
}

TEST_CASE("classical apply is matrix-vector action") {
  RealMatrix m = random_stochastic(3, 2, 7);
  StochChannel c = make_stoch_channel(SystemType::single("X", 2),
                                      SystemType::single("Y", 3), m);
  RealMatrix v(2, 1);
  v(0, 0) = 0.25;
  v(1, 0) = 0.75;
  CHECK(cl_apply(c, v).frob_dist(m * v) == 0.0);
}

TEST_CASE("basis control recovers its branches exactly") {
  StochChannel phi0 = make_stoch_channel(bit("A"), bit("A'"),
                                         random_stochastic(2, 2, 11));
  StochChannel phi1 = make_stoch_channel(bit("A"), bit("A'"),
                                         random_stochastic(2, 2, 12));
  StochChannel ctl = cl_control_channel(phi0, phi1, 2);
  CHECK(ctl.deterministic);
  // insert e_i on the control wire and discard the control output
  auto inserted = [&](std::size_t i) {
    RealMatrix e(2, 1);
    e(i, 0) = 1.0;
    StochChannel fed = cl_compose(
        ctl, cl_tensor(cl_identity(bit("A")),
                       cl_prepare(SystemType::single("Y", 2), e)));
    return cl_compose(
        cl_tensor(cl_identity(bit("A'")),
                  cl_discard(SystemType::single("Y", 2))),
        fed);
  };
  CHECK(inserted(0).matrix().frob_dist(phi0.matrix()) <= 1e-12);
  CHECK(inserted(1).matrix().frob_dist(phi1.matrix()) <= 1e-12);
}

TEST_CASE("convexity and control agree on sampled stochastic sets") {
  StochChannel phi0 = make_stoch_channel(bit("A"), bit("A'"),
                                         random_stochastic(2, 2, 21));
  StochChannel phi1 = make_stoch_channel(bit("A"), bit("A'"),
                                         random_stochastic(2, 2, 22));
  StochChannel ctl = cl_control_channel(phi0, phi1, 2);
  for (double p : {0.0, 0.25, 0.7, 1.0}) {
    RealMatrix mix(2, 1);
    mix(0, 0) = p;
    mix(1, 0) = 1.0 - p;
    StochChannel fed = cl_compose(
        ctl, cl_tensor(cl_identity(bit("A")),
                       cl_prepare(SystemType::single("Y", 2), mix)));
    StochChannel red = cl_compose(
        cl_tensor(cl_identity(bit("A'")),
                  cl_discard(SystemType::single("Y", 2))),
        fed);
    StochChannel expect = cl_add(phi0, phi1, p, 1.0 - p);
    CHECK(red.matrix().frob_dist(expect.matrix()) <= 1e-12);
  }
}

TEST_CASE("classical signaling: products pass, swap fails, one-way is one-way") {
  SystemType pin({{"A", 2}, {"B", 2}});
  SystemType pout({{"A'", 2}, {"B'", 2}});
  ClRelation rel{{"A", "B"}, {"A'", "B'"}, {{"B", "A'"}, {"A", "B'"}}};
  StochChannel f = make_stoch_channel(bit("A"), bit("A'"),
                                      random_stochastic(2, 2, 31));
  StochChannel g = make_stoch_channel(bit("B"), bit("B'"),
                                      random_stochastic(2, 2, 32));
  StochChannel prod = cl_tensor(f, g);
  StochChannel prod2{pin, pout, prod.t, true};
  CHECK(cl_check_signaling(prod2, rel, 1e-10));

  StochChannel sw = cl_swap(bit("A"), bit("B"));
  StochChannel sw2{pin, pout, sw.t, true};
  CHECK_FALSE(cl_check_signaling(sw2, rel, 1e-10));
}

TEST_CASE("classical identity supermap behaves as the identity") {
  StochSupermap id = cl_identity_supermap(bit("A"), bit("A'"));
  StochChannel phi = make_stoch_channel(bit("A"), bit("A'"),
                                        random_stochastic(2, 2, 41));
  CHECK(cl_apply_supermap(id, phi).matrix().frob_dist(phi.matrix()) <= 1e-12);
}

TEST_CASE("classical comb application equals classical supermap application") {
  ClComb c = cl_random_comb(bit("A"), bit("A'"), bit("B"), bit("B'"), 2, 51);
  StochSupermap s = cl_comb_to_supermap(c);
  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng rng(derive_seed(1200, t));
    const std::size_t dx = 1 + rng.index(3), dxp = 1 + rng.index(3);
    SystemType x = dx == 1 ? SystemType::trivial() : SystemType::single("X", dx);
    SystemType xp =
        dxp == 1 ? SystemType::trivial() : SystemType::single("X'", dxp);
    SystemType in = bit("A").concat(x), out = bit("A'").concat(xp);
    StochChannel phi = make_stoch_channel(
        in, out, random_stochastic(out.total_dim(), in.total_dim(),
                                   derive_seed(1201, t)));
    StochChannel lhs = cl_apply_comb(c, phi);
    StochChannel rhs = cl_apply_supermap(s, phi);
    CHECK(lhs.dist(rhs) <= 1e-10);
  }
}

TEST_CASE("classical extract . embed is exact on random classical combs") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    StochSupermap s = random_cl_supermap(derive_seed(1300, seed), 1 + seed % 3);
    StochSupermap back = cl_extract(cl_embed(s));
    CHECK(s.dist(back) <= 1e-10);
  }
}

TEST_CASE("classical local applicability holds for embedded supermaps") {
  StochSupermap s = random_cl_supermap(61);
  auto rep = cl_check_local_applicability(cl_embed(s), 40, 62);
  CHECK(rep.max_deviation <= 1e-9);
}

TEST_CASE("classical convex linearity holds for embedded supermaps") {
  StochSupermap s = random_cl_supermap(71);
  auto rep = cl_check_convex_linearity(cl_embed(s), 40, 72);
  CHECK(rep.max_deviation <= 1e-9);
}

TEST_CASE("effect completion is constructive: lambda sigma + sigma' = ones") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    RealMatrix sigma(1, 4);
    for (std::size_t c = 0; c < 4; ++c) {
      const double g = rng.gauss();
      sigma(0, c) = g * g;
    }
    auto [lambda, rest] = effect_completion(sigma);
    CHECK(lambda > 0.0);
    CHECK(is_nonneg(rest, 1e-12));
    RealMatrix ones(1, 4, std::vector<double>(4, 1.0));
    CHECK((sigma * lambda + rest).frob_dist(ones) <= 1e-12);
  }
}

TEST_CASE("classical swap exchanges the registers") {
  StochChannel sw = cl_swap(bit("A"), SystemType::single("B", 3));
  RealMatrix v(6, 1);
  // basis (a, b) -> (b, a)
  v(1 * 3 + 2, 0) = 1.0;  // a=1, b=2
  RealMatrix out = cl_apply(sw, v);
  CHECK(out(2 * 2 + 1, 0) == 1.0);
}
