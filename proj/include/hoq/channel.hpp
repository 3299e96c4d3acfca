#pragma once

#include <string>
#include <vector>

#include "hoq/checks.hpp"
#include "hoq/rng.hpp"
#include "hoq/system.hpp"
#include "hoq/tensor.hpp"

namespace hoq {

// Wire naming for channel Choi tensors: input wire k is "i<k>", output wire
// k is "o<k>". Every wire contributes a matched leg pair to the tensor: its
// ket index as an In leg and its bra index as an Out leg under the same
// label, so partial_trace over a wire label is the partial trace over that
// system and contract-after-partial_transpose over a wire label is the link
// product on that wire.
std::string in_wire(std::size_t k);
std::string out_wire(std::size_t k);

// Operator on a composite system as a labeled tensor: for each wire, the ket
// index becomes an In leg and the bra index an Out leg of the same label.
CTensor op_tensor(const ComplexMatrix& m,
                  const std::vector<std::pair<std::string, std::size_t>>& wires);

struct ChannelReport {
  bool cp = false;
  bool tp = false;
  double tp_deviation = 0.0;
  double min_eig = 0.0;
};

// A CP map in Choi form. The Choi operator lives on (in x out) with input
// factors first: C = sum_ij |i><j|_in (x) Phi(|i><j|). Trace preservation is
// Tr_out C = I_in. `deterministic` records whether the map is meant to be
// trace preserving; is_channel() verifies.
class Channel {
 public:
  Channel() = default;
  Channel(SystemType in_type, SystemType out_type, CTensor choi,
          bool deterministic);
  Channel(SystemType in_type, SystemType out_type, const ComplexMatrix& choi,
          bool deterministic);

  const SystemType& in_type() const { return in_type_; }
  const SystemType& out_type() const { return out_type_; }
  const CTensor& choi() const { return choi_; }
  bool deterministic() const { return deterministic_; }
  void set_deterministic(bool v) { deterministic_ = v; }

  std::size_t d_in() const { return in_type_.total_dim(); }
  std::size_t d_out() const { return out_type_.total_dim(); }

  // Grouped Choi operator matrix, rows/cols indexed by (in, out) kets/bras.
  const ComplexMatrix& choi_matrix() const { return choi_.mat(); }

  double choi_dist(const Channel& o) const {
    return choi_matrix().frob_dist(o.choi_matrix());
  }

 private:
  SystemType in_type_, out_type_;
  CTensor choi_;
  bool deterministic_ = false;
};

Channel choi_from_kraus(const SystemType& in_type, const SystemType& out_type,
                        const std::vector<ComplexMatrix>& kraus);

Channel identity_channel(const SystemType& type);
Channel unitary_channel(const SystemType& in_type, const SystemType& out_type,
                        const ComplexMatrix& u);
// Trace out the whole input.
Channel discard_channel(const SystemType& type);
// Prepare a fixed state (no input).
Channel prepare_channel(const SystemType& type, const ComplexMatrix& state);
// Discard the input, then prepare `state`.
Channel discard_prepare_channel(const SystemType& in_type,
                                const SystemType& out_type,
                                const ComplexMatrix& state);
// A (x) B -> B (x) A.
Channel swap_channel(const SystemType& a, const SystemType& b);

ComplexMatrix apply_channel(const Channel& c, const ComplexMatrix& rho);

ChannelReport is_channel(const Channel& c, double tol);

// Deterministic channel from a seeded random isometry into out (x) env.
// env_dim is raised to the smallest feasible value if out*env < in.
Channel random_channel(const SystemType& in_type, const SystemType& out_type,
                       std::size_t env_dim, std::uint64_t seed);

Channel compose(const Channel& second, const Channel& first);
Channel tensor_channels(const Channel& a, const Channel& b);
Channel add_channels(const Channel& a, const Channel& b, cx wa, cx wb);
Channel scale_channel(const Channel& c, double s);

// Reorder the input/output factors (perm maps new position -> old position).
Channel permute_channel_factors(const Channel& c,
                                const std::vector<std::size_t>& in_perm,
                                const std::vector<std::size_t>& out_perm);

// Reduced Choi after tracing out the listed input/output wires.
Channel trace_out_wires(const Channel& c,
                        const std::vector<std::size_t>& in_wires,
                        const std::vector<std::size_t>& out_wires);

// Wire bending. Moves the selected input wires to the output side and the
// selected output wires to the input side of the map, keeping ket and bra
// indices fixed; this is the cup/cap bend of the Choi tensor, which at the
// data level is a pure leg regrouping. The moved wires are appended after
// the kept ones, preserving their original relative order.
Channel bend_channel(const Channel& c, const std::vector<std::size_t>& in_to_out,
                     const std::vector<std::size_t>& out_to_in);

// For phi on A (x) X -> A' (x) X' with the slot leading (A = first n_slot_in
// input factors, A' = first n_slot_out output factors): feed `rho_x` into X
// and apply the effect `sigma_xp` on X' (tr(sigma .) as a functional;
// nullptr means the trace effect). Returns the reduced map A -> A'.
Channel reduce_extended(const Channel& phi, std::size_t n_slot_in,
                        std::size_t n_slot_out, const ComplexMatrix& rho_x,
                        const ComplexMatrix* sigma_xp);

double tp_deviation(const Channel& c);

}  // namespace hoq
