#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hoq/rng.hpp"
#include "hoq/system.hpp"
#include "hoq/tensor.hpp"

// Classical counterpart of the quantum stack: channels are column-stochastic
// matrices, the positivity cone is entrywise nonnegativity, the trace effect
// is the all-ones row, and the cup is the copy-basis pairing. Wires carry a
// single index, so all link products are plain contractions.
namespace hoq::classical {

bool is_nonneg(const RealMatrix& m, double tol);
// Every column sums to one (and entries are nonnegative).
bool is_stochastic(const RealMatrix& m, double tol);
double stochastic_deviation(const RealMatrix& m);

RealMatrix random_stochastic(std::size_t rows, std::size_t cols,
                             std::uint64_t seed);

// A nonnegative map in tensor form; t legs: one In leg per input wire
// ("i<k>"), one Out leg per output wire ("o<k>"). t[(in),(out)] = M[out,in]
// for the usual act-by-left-multiplication matrix M.
struct StochChannel {
  SystemType in_type, out_type;
  RTensor t;
  bool deterministic = false;

  std::size_t d_in() const { return in_type.total_dim(); }
  std::size_t d_out() const { return out_type.total_dim(); }
  RealMatrix matrix() const;  // M[out,in]
  double dist(const StochChannel& o) const;
};

StochChannel make_stoch_channel(const SystemType& in, const SystemType& out,
                                const RealMatrix& m);
StochChannel cl_identity(const SystemType& type);
StochChannel cl_discard(const SystemType& type);
StochChannel cl_prepare(const SystemType& type, const RealMatrix& dist);
StochChannel cl_discard_prepare(const SystemType& in, const SystemType& out,
                                const RealMatrix& dist);
StochChannel cl_swap(const SystemType& a, const SystemType& b);

RealMatrix cl_apply(const StochChannel& c, const RealMatrix& v);
StochChannel cl_compose(const StochChannel& second, const StochChannel& first);
StochChannel cl_tensor(const StochChannel& a, const StochChannel& b);
StochChannel cl_add(const StochChannel& a, const StochChannel& b, double wa,
                    double wb);
double cl_tp_deviation(const StochChannel& c);

struct ClRelation {
  std::vector<std::string> in_parties;
  std::vector<std::string> out_parties;
  std::vector<std::pair<std::string, std::string>> forbidden;
};

double cl_signaling_deviation(const StochChannel& c, const ClRelation& rel);
bool cl_check_signaling(const StochChannel& c, const ClRelation& rel,
                        double tol);

// Basis control: states e_0, e_1 with row effects delta_i.
StochChannel cl_control_channel(const StochChannel& phi0,
                                const StochChannel& phi1,
                                std::size_t control_dim);

struct ClSetSpec {
  SystemType base_in, base_out;
  bool non_signaling = false;
  ClRelation relation;
  bool convex = true;
  bool normal = true;

  static ClSetSpec all(SystemType in, SystemType out);
};

StochChannel cl_sample_member(const ClSetSpec& k, std::uint64_t seed);
StochChannel cl_sample_extended_member(const ClSetSpec& k, const SystemType& x,
                                       const SystemType& xp,
                                       std::uint64_t seed);

// Nonnegative-matrix supermap: cp maps (A* (x) A') to (B* (x) B').
struct StochSupermap {
  StochChannel cp;
  ClSetSpec source, target;
  double dist(const StochSupermap& o) const { return cp.dist(o.cp); }
};

StochSupermap cl_make_supermap(StochChannel cp, ClSetSpec source,
                               ClSetSpec target);
StochSupermap cl_identity_supermap(const SystemType& a, const SystemType& ap);
StochChannel cl_apply_supermap(const StochSupermap& s, const StochChannel& phi);

struct ClComb {
  StochChannel pre;   // B -> E (x) A
  StochChannel post;  // E (x) A' -> B'
  SystemType env, a_in, a_out, b_in, b_out;
};

ClComb cl_make_comb(StochChannel pre, StochChannel post,
                    std::size_t n_env_factors);
ClComb cl_random_comb(const SystemType& a, const SystemType& ap,
                      const SystemType& b, const SystemType& bp,
                      std::size_t env_dim, std::uint64_t seed);
StochChannel cl_apply_comb(const ClComb& c, const StochChannel& phi);
StochSupermap cl_comb_to_supermap(const ClComb& c);

struct ClOracle {
  SystemType a, ap, b, bp;
  ClSetSpec source, target;
  std::function<StochChannel(const SystemType& x, const SystemType& xp,
                             const StochChannel& phi)>
      eval;
};

ClOracle cl_embed(const StochSupermap& s);
StochSupermap cl_extract(const ClOracle& o);

struct ClCheckReport {
  std::string check;
  int trials = 0;
  double max_deviation = 0.0;
  std::optional<std::uint64_t> first_failing_seed;
};

ClCheckReport cl_check_local_applicability(const ClOracle& o, int trials,
                                           std::uint64_t seed);
ClCheckReport cl_check_convex_linearity(const ClOracle& o, int trials,
                                        std::uint64_t seed);

// lambda and sigma' with lambda*sigma + sigma' equal to the all-ones row;
// lambda = 1/max(sigma).
std::pair<double, RealMatrix> effect_completion(const RealMatrix& sigma);

}  // namespace hoq::classical
