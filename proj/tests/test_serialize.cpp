#include <cstdio>

#include "doctest.h"
#include "hoq/serialize.hpp"

using namespace hoq;

namespace {

SystemType qb(const std::string& l) { return SystemType::single(l, 2); }

}  // namespace

TEST_CASE("matrix json round trip preserves values") {
  Rng rng(1);
  ComplexMatrix m = rng.ginibre(3, 4);
  ComplexMatrix back = matrix_from_json(matrix_to_json(m));
  CHECK(back.frob_dist(m) == 0.0);
}

TEST_CASE("matrix json accepts bare numbers as real entries") {
  json j{{"rows", 1}, {"cols", 2}, {"entries", {1.5, {0.0, -2.0}}}};
  ComplexMatrix m = matrix_from_json(j);
  CHECK(m(0, 0) == cx{1.5, 0.0});
  CHECK(m(0, 1) == cx{0.0, -2.0});
}

TEST_CASE("matrix json rejects an entry count mismatch") {
  json j{{"rows", 2}, {"cols", 2}, {"entries", {1.0, 2.0, 3.0}}};
  CHECK_THROWS_AS(matrix_from_json(j), std::invalid_argument);
}

TEST_CASE("tensor json carries the legs") {
  CTensor cup = bell_cup<cx>(2, "L", "R");
  CTensor back = tensor_from_json(tensor_to_json(cup));
  CHECK(back.frob_dist(cup) == 0.0);
  CHECK(back.legs().size() == 2);
  CHECK(back.legs()[0].pol == Pol::Out);
}

TEST_CASE("channel json round trip preserves type and choi") {
  Channel c = random_channel(qb("A").concat(qb("X")), qb("B"), 2, 7);
  Channel back = channel_from_json(channel_to_json(c));
  CHECK(back.choi_dist(c) == 0.0);
  CHECK(back.in_type() == c.in_type());
  CHECK(back.out_type() == c.out_type());
  CHECK(back.deterministic() == c.deterministic());
}

TEST_CASE("relation and set spec round trip") {
  SignalingRelation rel = no_signaling_bipartite("A", "B", "A'", "B'");
  SignalingRelation rback = relation_from_json(relation_to_json(rel));
  CHECK(rback.forbidden == rel.forbidden);

  ChannelSetSpec k = ChannelSetSpec::non_signaling(
      SystemType({{"A", 2}, {"B", 2}}), SystemType({{"A'", 2}, {"B'", 2}}),
      rel);
  ChannelSetSpec kb = set_spec_from_json(set_spec_to_json(k));
  CHECK(kb.kind == SetKind::NonSignaling);
  CHECK(kb.convex);
  CHECK(kb.normal);
  CHECK(kb.base_in == k.base_in);
}

TEST_CASE("supermap json round trip") {
  Supermap s = comb_to_supermap(
      random_comb(qb("A"), qb("A'"), qb("B"), qb("B'"), 2, 13));
  Supermap back = supermap_from_json(supermap_to_json(s));
  CHECK(back.choi_dist(s) == 0.0);
}

TEST_CASE("comb json round trip preserves both stages") {
  Comb c = random_comb(qb("A"), qb("A'"), qb("B"), qb("B'"), 2, 17);
  Comb back = comb_from_json(comb_to_json(c));
  CHECK(back.pre.choi_dist(c.pre) == 0.0);
  CHECK(back.post.choi_dist(c.post) == 0.0);
  CHECK(back.env == c.env);
}

TEST_CASE("classical channel json round trip") {
  classical::StochChannel c = classical::make_stoch_channel(
      qb("A"), SystemType::single("B", 3), classical::random_stochastic(3, 2, 5));
  classical::StochChannel back = stoch_channel_from_json(stoch_channel_to_json(c));
  CHECK(back.matrix().frob_dist(c.matrix()) == 0.0);
  CHECK(back.deterministic);
}

TEST_CASE("file save and load round trip") {
  Channel c = random_channel(qb("A"), qb("B"), 2, 23);
  const std::string path = "/tmp/hoq_serialize_test.json";
  save_json_file(path, channel_to_json(c));
  Channel back = channel_from_json(load_json_file(path));
  CHECK(back.choi_dist(c) == 0.0);
  std::remove(path.c_str());
}

TEST_CASE("loading a missing file raises") {
  CHECK_THROWS(load_json_file("/tmp/definitely_not_here_42.json"));
}
