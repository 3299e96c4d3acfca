#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hoq/channel.hpp"

namespace hoq {

// Forbidden influence pairs between input and output parties. Parties name
// factors of the channel types, one factor per party.
struct SignalingRelation {
  std::vector<std::string> in_parties;
  std::vector<std::string> out_parties;
  std::vector<std::pair<std::string, std::string>> forbidden;  // in -> out
};

SignalingRelation no_signaling_bipartite(const std::string& a,
                                         const std::string& b,
                                         const std::string& ap,
                                         const std::string& bp);
// Signaling permitted only from the first party to the second.
SignalingRelation one_way_bipartite(const std::string& a, const std::string& b,
                                    const std::string& ap,
                                    const std::string& bp);

// Per forbidden pair (b -> a'): trace every output party except a' from the
// Choi; the channel satisfies the constraint iff the result factorizes as
// (reduced Choi with b also traced) (x) I_b.
bool check_signaling(const Channel& c, const SignalingRelation& rel,
                     double tol);
double signaling_deviation(const Channel& c, const SignalingRelation& rel);
// Deviation for a single forbidden edge.
double edge_signaling_deviation(const Channel& c, const SignalingRelation& rel,
                                const std::pair<std::string, std::string>& edge);

enum class SetKind { All, NonSignaling, OneWay, Custom };

// A constrained subset K of the deterministic channels of a fixed type.
struct ChannelSetSpec {
  SystemType base_in, base_out;
  SetKind kind = SetKind::All;
  SignalingRelation relation;  // for NonSignaling / OneWay
  std::function<bool(const Channel&, double)> predicate;  // for Custom
  bool convex = true;
  bool normal = true;

  static ChannelSetSpec all(SystemType in, SystemType out);
  static ChannelSetSpec non_signaling(SystemType in, SystemType out,
                                      SignalingRelation rel);
  static ChannelSetSpec one_way(SystemType in, SystemType out,
                                SignalingRelation rel);
  static ChannelSetSpec custom(SystemType in, SystemType out,
                               std::function<bool(const Channel&, double)> pred,
                               bool convex, bool normal);
};

// Membership of a deterministic channel in K (channel-ness plus the kind's
// constraint).
bool set_member(const ChannelSetSpec& k, const Channel& c, double tol);

// Distinguishable control states with their effects: e_i(rho_j) = delta_ij.
struct ControlPair {
  std::size_t control_dim = 2;
  std::vector<ComplexMatrix> states;
  std::vector<ComplexMatrix> effects;

  static ControlPair computational(std::size_t dim);
};

void validate_control_pair(const ControlPair& pair, double tol);

// Measure-and-reprepare control: Phi = phi0 (x) (rho0 . e0) + phi1 (x)
// (rho1 . e1) on A (x) Y -> A' (x) Y. Inserting rho_i on Y recovers phi_i.
Channel control_channel(const Channel& phi0, const Channel& phi1,
                        const ControlPair& pair);

// Randomized dilation-extension refuter for Phi on A (x) X -> A' (x) X'
// against K on A -> A'. Causal reductions (random input state on X, trace on
// X') are rescaled to trace preserving and tested for K membership; CP-effect
// reductions are additionally checked for complete positivity. Returns false
// on the first counterexample.
struct DextReport {
  bool pass = true;
  int trials = 0;
  double max_deviation = 0.0;
  std::optional<std::uint64_t> first_failing_seed;
};

DextReport in_dilation_extension_report(const Channel& phi,
                                        const ChannelSetSpec& k, int trials,
                                        std::uint64_t seed, double tol);
bool in_dilation_extension(const Channel& phi, const ChannelSetSpec& k,
                           int trials, std::uint64_t seed, double tol);

// Seeded sampling of K members; products, convex mixes and control
// combinations for the signaling kinds. Custom kinds cannot be sampled.
Channel sample_member(const ChannelSetSpec& k, std::uint64_t seed);

// Seeded sampling of dExt_{X,X'}(K): a member tensored with a random channel
// X -> X', then optionally dressed with channels on the auxiliary side,
// mixed, or control-combined.
Channel sample_extended_member(const ChannelSetSpec& k, const SystemType& x,
                               const SystemType& xp, std::uint64_t seed);

}  // namespace hoq
