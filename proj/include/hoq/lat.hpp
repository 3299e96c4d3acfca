#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hoq/supermap.hpp"

namespace hoq {

// A black-box family of functions on extended channels: eval(X, X', phi)
// takes phi on A (x) X -> A' (x) X' (slot factors leading) and returns a
// channel B (x) X -> B' (x) X'. eval must be pure and safe to call
// concurrently with distinct arguments.
struct LatOracle {
  SystemType a, ap, b, bp;
  ChannelSetSpec source, target;
  std::function<Channel(const SystemType& x, const SystemType& xp,
                        const Channel& phi)>
      eval;
};

// The oracle induced by a supermap: eval = apply_supermap.
LatOracle embed(const Supermap& s);

// Pointwise composition: (second . first)(phi) = second(first(phi)).
LatOracle compose_oracles(const LatOracle& second, const LatOracle& first);

// Recover the supermap from the oracle: evaluate it on the swap channel
// (auxiliaries X = A', X' = A), then bend the result's B input up into the
// dual output and its A output down into the dual input. Requires a normal
// convex source so the swap lies in its dilation extension.
Supermap extract(const LatOracle& o);

struct LatCheckReport {
  std::string check;
  int trials = 0;
  double max_deviation = 0.0;
  std::optional<std::uint64_t> first_failing_seed;
  bool pass(double tol) const { return max_deviation <= tol; }
};

struct LocalApplicabilityReport {
  LatCheckReport naturality;  // dressing by f: Y -> X, g: X' -> Y'
  LatCheckReport dragging;    // eval(phi (x) psi) = eval(phi) (x) psi
  LatCheckReport combined;    // f: Y -> X (x) Z, g: X' (x) Z -> Y'
  bool pass(double tol) const {
    return naturality.pass(tol) && dragging.pass(tol) && combined.pass(tol);
  }
  double max_deviation() const {
    return std::max({naturality.max_deviation, dragging.max_deviation,
                     combined.max_deviation});
  }
};

LocalApplicabilityReport check_local_applicability(const LatOracle& o,
                                                   int trials,
                                                   std::uint64_t seed);

LatCheckReport check_convex_linearity(const LatOracle& o, int trials,
                                      std::uint64_t seed);

// A dilation-extension member together with a CP state and effect on its
// auxiliary wires; presents the CP map (id (x) sigma) . Phi . (id (x) rho).
struct CpPresentation {
  Channel phi;           // in dExt_{X,X'}(K), slot leading
  ComplexMatrix rho;     // PSD on X (1x1 scalar for trivial X)
  ComplexMatrix sigma;   // PSD on X'
};

// The CP map B -> B' presented by feeding the presentation through the
// oracle: (id (x) sigma) . eval(Phi) . (id (x) rho).
ComplexMatrix extend_to_cp(const LatOracle& o, const CpPresentation& pres);

// The CP map A -> A' the presentation denotes (for test comparisons).
ComplexMatrix presented_cp_map(const LatOracle& o, const CpPresentation& pres);

// Adversarial oracle: discards the correlation between slot and auxiliary
// wires by rebuilding the input from its reduced channels; well-typed but
// not natural.
LatOracle adversarial_reduce_oracle(const SystemType& a, const SystemType& ap);

// Adversarial oracle: mixes the input with a depolarizing channel by a
// weight that depends on the squared Frobenius norm of the input's Choi;
// well-typed but not convex linear (and not natural).
LatOracle adversarial_nonlinear_oracle(const SystemType& a,
                                       const SystemType& ap);

// Multi-input oracle: one eval over a list of extended channels.
struct MultiLatOracle {
  std::vector<ChannelSetSpec> slots;
  ChannelSetSpec target;
  std::function<Channel(const std::vector<SystemType>& xs,
                        const std::vector<SystemType>& xps,
                        const std::vector<Channel>& phis)>
      eval;
};

MultiLatOracle embed_multi(const MultiSupermap& s);

// Fix every slot except `keep` with the given channels (no auxiliaries);
// the result is a single-input oracle.
LatOracle curry_multi(const MultiLatOracle& o, std::size_t keep,
                      const std::vector<Channel>& fixed);

// Slot-by-slot extraction via swap evaluations on every slot at once.
MultiSupermap extract_multi(const MultiLatOracle& o);

}  // namespace hoq
