#pragma once

#include <optional>
#include <vector>

#include "hoq/channel_sets.hpp"

namespace hoq {

// A higher-order map in Choi form: a CP map A* (x) A' -> B* (x) B' that
// sends channels A -> A' (and their dilation extensions into K) to channels
// B -> B' (landing in M). Applying it to an extended channel is the link
// product of the two Choi tensors over the slot wires.
struct Supermap {
  Channel cp;  // in type A* (x) A', out type B* (x) B'
  ChannelSetSpec source;  // K on A -> A'
  ChannelSetSpec target;  // M on B -> B'

  std::size_t n_src_in() const { return source.base_in.n_factors(); }
  std::size_t n_src_out() const { return source.base_out.n_factors(); }
  const ComplexMatrix& choi_matrix() const { return cp.choi_matrix(); }
  double choi_dist(const Supermap& o) const { return cp.choi_dist(o.cp); }
};

Supermap make_supermap(Channel cp, ChannelSetSpec source,
                       ChannelSetSpec target);

Supermap identity_supermap(const SystemType& a, const SystemType& ap);

// phi: A (x) X -> A' (x) X', slot factors leading. Result: B (x) X -> B' (x) X'.
Channel apply_supermap(const Supermap& s, const Channel& phi);

// Sequential composition (second . first).
Supermap compose_supermaps(const Supermap& second, const Supermap& first);

// Pre- and post-processing joined by a memory wire: pre: B -> E (x) A,
// post: E (x) A' -> B'. Both live in CP; they are channels when
// `deterministic` is set.
struct Comb {
  Channel pre;   // B -> E (x) A   (factor order [E..., A...])
  Channel post;  // E (x) A' -> B' (factor order [E..., A'...])
  SystemType env, a_in, a_out, b_in, b_out;
};

Comb make_comb(Channel pre, Channel post, std::size_t n_env_factors);

Channel apply_comb(const Comb& c, const Channel& phi);

Supermap comb_to_supermap(const Comb& c);
Supermap comb_to_supermap(const Comb& c, ChannelSetSpec source,
                          ChannelSetSpec target);
// The cup/cap-bent comb of the correspondence; its pre and post are CP but
// not trace preserving.
Comb supermap_to_comb(const Supermap& s);

// Sequential composition of combs (second applied around the output of
// first), stacking environments.
Comb compose_combs(const Comb& second, const Comb& first);

// A deterministic comb with seeded random pre/post channels.
Comb random_comb(const SystemType& a, const SystemType& ap,
                 const SystemType& b, const SystemType& bp,
                 std::size_t env_dim, std::uint64_t seed);

struct SupermapReport {
  bool psd = false;
  int trials = 0;
  double max_tp_deviation = 0.0;
  double max_cp_violation = 0.0;
  bool target_membership = true;
  std::optional<std::uint64_t> first_failing_seed;
  bool pass() const {
    return psd && target_membership && max_cp_violation == 0.0 &&
           !first_failing_seed;
  }
};

// Randomized typing refuter: samples extended members of the source set on
// auxiliary dims {1,2,3}, applies, and checks the results are deterministic
// channels inside the target set.
SupermapReport is_supermap(const Supermap& s, int trials, std::uint64_t seed,
                           double tol);

// Multi-input supermap: slot i occupies the factor block (A_i*, A_i') of the
// CP map's input, slot-major; the target block (B*, B') is the output.
struct MultiSupermap {
  Channel cp;
  std::vector<ChannelSetSpec> slots;
  ChannelSetSpec target;

  std::size_t n_slots() const { return slots.size(); }
  const ComplexMatrix& choi_matrix() const { return cp.choi_matrix(); }
};

MultiSupermap make_multi_supermap(Channel cp,
                                  std::vector<ChannelSetSpec> slots,
                                  ChannelSetSpec target);

MultiSupermap as_multi(const Supermap& s);

// View the slot blocks as one joint slot (regrouping the input factors from
// slot-major to all-inputs-then-all-outputs). `source` overrides the joint
// slot's set; by default the unconstrained set on the joint types.
Supermap multi_as_single_slot(const MultiSupermap& s);
Supermap multi_as_single_slot(const MultiSupermap& s, ChannelSetSpec source);

Channel apply_multi_supermap(const MultiSupermap& s,
                             const std::vector<Channel>& phis);

// Fill every slot except `keep` with fixed channels; the result is a
// single-input supermap on the remaining slot.
Supermap fix_all_but_one(const MultiSupermap& s, std::size_t keep,
                         const std::vector<Channel>& fixed);

// Plug the inner supermaps into the outer one's slots.
MultiSupermap nest(const MultiSupermap& outer,
                   const std::vector<MultiSupermap>& inner);

MultiSupermap seq_enrichment(const SystemType& a, const SystemType& b,
                             const SystemType& c);
MultiSupermap par_enrichment(const SystemType& a, const SystemType& ap,
                             const SystemType& b, const SystemType& bp);

// Two-slot switch on d-dimensional systems with a qubit control as the last
// factor of the target's input and output. The quantum version composes the
// slot channels in the two orders coherently; the classical version mixes
// the two orders according to the control's diagonal.
MultiSupermap switch_supermap(std::size_t d);
MultiSupermap classical_switch_supermap(std::size_t d);

SupermapReport is_multi_supermap(const MultiSupermap& s, int trials,
                                 std::uint64_t seed, double tol);

}  // namespace hoq
