#include "doctest.h"
#include "hoq/channel_sets.hpp"

using namespace hoq;

namespace {

SystemType qb(const std::string& l) { return SystemType::single(l, 2); }

SystemType pair_in() { return SystemType({{"A", 2}, {"B", 2}}); }
SystemType pair_out() { return SystemType({{"A'", 2}, {"B'", 2}}); }

SignalingRelation ns_rel() {
  return no_signaling_bipartite("A", "B", "A'", "B'");
}

// measure A in the computational basis, copy the outcome to A' and B',
// discard the B input
Channel classical_copy() {
  std::vector<ComplexMatrix> kraus;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      ComplexMatrix k(4, 4);
      k(a * 2 + a, a * 2 + b) = 1.0;
      kraus.push_back(k);
    }
  return choi_from_kraus(pair_in(), pair_out(), kraus);
}

}  // namespace

TEST_CASE("product channels pass every signaling relation") {
  Channel f = random_channel(qb("A"), qb("A'"), 2, 1);
  Channel g = random_channel(qb("B"), qb("B'"), 2, 2);
  Channel prod(pair_in(), pair_out(), tensor_channels(f, g).choi_matrix(),
               true);
  CHECK(check_signaling(prod, ns_rel(), 1e-9));
  CHECK(check_signaling(prod, one_way_bipartite("A", "B", "A'", "B'"), 1e-9));
}

TEST_CASE("the swap channel signals in both directions") {
  Channel sw = swap_channel(qb("A"), qb("B"));
  Channel swp(pair_in(), pair_out(), sw.choi_matrix(), true);
  SignalingRelation rel = ns_rel();
  CHECK_FALSE(check_signaling(swp, rel, 1e-9));
  CHECK(edge_signaling_deviation(swp, rel, {"B", "A'"}) > 1e-3);
  CHECK(edge_signaling_deviation(swp, rel, {"A", "B'"}) > 1e-3);
}

TEST_CASE("the classical copy channel signals A -> B' but not B -> A'") {
  Channel cc = classical_copy();
  CHECK(cc.deterministic());
  SignalingRelation rel = ns_rel();
  CHECK(edge_signaling_deviation(cc, rel, {"B", "A'"}) <= 1e-10);
  CHECK(edge_signaling_deviation(cc, rel, {"A", "B'"}) > 1e-3);
}

TEST_CASE("signaling deviation is invariant under local unitaries on free parties") {
  Channel cc = classical_copy();
  SignalingRelation rel = ns_rel();
  const double before = edge_signaling_deviation(cc, rel, {"B", "A'"});
  Rng rng(5);
  ComplexMatrix u = random_unitary(2, rng);
  // dress the A input and B' output with local unitaries
  Channel ua = tensor_channels(unitary_channel(qb("A"), qb("A"), u),
                               identity_channel(qb("B")));
  Channel ub = tensor_channels(identity_channel(qb("A'")),
                               unitary_channel(qb("B'"), qb("B'"), u));
  Channel dressed(pair_in(), pair_out(),
                  compose(ub, compose(cc, ua)).choi_matrix(), true);
  const double after = edge_signaling_deviation(dressed, rel, {"B", "A'"});
  CHECK(std::abs(before - after) <= 1e-9);
}

TEST_CASE("non-signaling members stay members under convex mixing") {
  ChannelSetSpec k = ChannelSetSpec::non_signaling(pair_in(), pair_out(),
                                                   ns_rel());
  Channel m0 = sample_member(k, 11), m1 = sample_member(k, 12);
  for (double p : {0.0, 0.3, 1.0}) {
    Channel mix = add_channels(m0, m1, cx{p}, cx{1.0 - p});
    CHECK(check_signaling(mix, k.relation, 1e-9));
    CHECK(set_member(k, mix, 1e-8));
  }
}

TEST_CASE("one-way members signal only the allowed way") {
  ChannelSetSpec k = ChannelSetSpec::one_way(pair_in(), pair_out(),
                                             one_way_bipartite("A", "B", "A'",
                                                               "B'"));
  for (std::uint64_t s = 0; s < 5; ++s) {
    Channel m = sample_member(k, 100 + s);
    CHECK(set_member(k, m, 1e-8));
  }
}

TEST_CASE("dilation extension accepts product extensions of members") {
  ChannelSetSpec k = ChannelSetSpec::all(qb("A"), qb("A'"));
  Channel phi = random_channel(qb("A"), qb("A'"), 2, 21);
  Channel ext = tensor_channels(phi, identity_channel(SystemType::single("X", 3)));
  CHECK(in_dilation_extension(ext, k, 50, 22, 1e-8));
}

TEST_CASE("dilation extension of the unconstrained set accepts any deterministic channel") {
  ChannelSetSpec k = ChannelSetSpec::all(qb("A"), qb("A'"));
  for (std::uint64_t s = 0; s < 10; ++s) {
    Channel phi = random_channel(qb("A").concat(SystemType::single("X", 2)),
                                 qb("A'").concat(SystemType::single("X'", 3)),
                                 2, 200 + s);
    CHECK(in_dilation_extension(phi, k, 25, 23 + s, 1e-8));
  }
}

TEST_CASE("the swap lies in the dilation extension of normal convex sets") {
  ChannelSetSpec k_all = ChannelSetSpec::all(qb("A"), qb("A'"));
  Channel sw = swap_channel(qb("A"), qb("A'"));
  CHECK(in_dilation_extension(sw, k_all, 200, 31, 1e-8));

  ChannelSetSpec k_ns = ChannelSetSpec::non_signaling(pair_in(), pair_out(),
                                                      ns_rel());
  Channel sw2 = swap_channel(pair_in(), pair_out());
  CHECK(in_dilation_extension(sw2, k_ns, 200, 32, 1e-8));
}

TEST_CASE("a signaling channel is refuted as an extension of the non-signaling set") {
  ChannelSetSpec k_ns = ChannelSetSpec::non_signaling(pair_in(), pair_out(),
                                                      ns_rel());
  // swap between the two parties, extended trivially: its causal reductions
  // are the swap itself, which signals
  Channel sw = swap_channel(qb("A"), qb("B"));
  Channel swp(pair_in(), pair_out(), sw.choi_matrix(), true);
  CHECK_FALSE(in_dilation_extension(swp, k_ns, 50, 33, 1e-8));
}

TEST_CASE("control channel recovers its branches exactly") {
  Channel phi0 = random_channel(qb("A"), qb("A'"), 2, 41);
  Channel phi1 = random_channel(qb("A"), qb("A'"), 2, 42);
  ControlPair pair = ControlPair::computational(2);
  Channel ctl = control_channel(phi0, phi1, pair);
  CHECK(ctl.deterministic());

  // insert rho_i on the control wire, trace the control output
  auto inserted = [&](const ComplexMatrix& rho) {
    return reduce_extended(ctl, 1, 1, rho, nullptr);
  };
  CHECK(inserted(pair.states[0]).choi_dist(phi0) <= 1e-10);
  CHECK(inserted(pair.states[1]).choi_dist(phi1) <= 1e-10);

  // mixed control state gives the convex mixture
  for (double p : {0.25, 0.6}) {
    ComplexMatrix mix = pair.states[0] * cx{p} + pair.states[1] * cx{1.0 - p};
    Channel expect = add_channels(phi0, phi1, cx{p}, cx{1.0 - p});
    CHECK(inserted(mix).choi_dist(expect) <= 1e-10);
  }
}

TEST_CASE("control of equal branches ignores the control state") {
  Channel phi = random_channel(qb("A"), qb("A'"), 2, 43);
  ControlPair pair = ControlPair::computational(2);
  Channel ctl = control_channel(phi, phi, pair);
  Rng rng(44);
  ComplexMatrix rho = random_density(2, rng);
  Channel red = reduce_extended(ctl, 1, 1, rho, nullptr);
  CHECK(red.choi_dist(phi) <= 1e-10);
}

TEST_CASE("control channel lands in the dilation extension of a convex set") {
  ChannelSetSpec k_ns = ChannelSetSpec::non_signaling(pair_in(), pair_out(),
                                                      ns_rel());
  Channel phi0 = sample_member(k_ns, 51), phi1 = sample_member(k_ns, 52);
  Channel ctl = control_channel(phi0, phi1, ControlPair::computational(2));
  CHECK(in_dilation_extension(ctl, k_ns, 200, 53, 1e-8));
}

TEST_CASE("degenerate control dimension is rejected") {
  CHECK_THROWS_AS(ControlPair::computational(1), std::invalid_argument);
}

TEST_CASE("non-distinguishable control pairs are rejected") {
  ControlPair bad = ControlPair::computational(2);
  bad.states[1] = bad.states[0];
  Channel phi0 = random_channel(qb("A"), qb("A'"), 2, 61);
  Channel phi1 = random_channel(qb("A"), qb("A'"), 2, 62);
  CHECK_THROWS_AS(control_channel(phi0, phi1, bad), std::invalid_argument);
}

TEST_CASE("sampled extended members really are dilation-extension members") {
  ChannelSetSpec k_ns = ChannelSetSpec::non_signaling(pair_in(), pair_out(),
                                                      ns_rel());
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng(1000 + s);
    SystemType x = rng.index(2) ? SystemType::single("X", 2)
                                : SystemType({{"X", 2}, {"X2", 2}});
    SystemType xp = rng.index(2) ? SystemType::single("X'", 2)
                                 : SystemType({{"X'", 3}, {"X2'", 2}});
    Channel phi = sample_extended_member(k_ns, x, xp, 2000 + s);
    CHECK(tp_deviation(phi) <= 1e-9);
    CHECK(in_dilation_extension(phi, k_ns, 25, 3000 + s, 1e-8));
  }
}
