#include "hoq/channel_sets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hoq {

namespace {

std::size_t party_index(const std::vector<SysFactor>& factors,
                        const std::string& label) {
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (factors[i].label == label) return i;
  throw std::invalid_argument("signaling: unknown party " + label);
}

}  // namespace

SignalingRelation no_signaling_bipartite(const std::string& a,
                                         const std::string& b,
                                         const std::string& ap,
                                         const std::string& bp) {
  return SignalingRelation{{a, b}, {ap, bp}, {{b, ap}, {a, bp}}};
}

SignalingRelation one_way_bipartite(const std::string& a, const std::string& b,
                                    const std::string& ap,
                                    const std::string& bp) {
  return SignalingRelation{{a, b}, {ap, bp}, {{b, ap}}};
}

double edge_signaling_deviation(
    const Channel& c, const SignalingRelation& rel,
    const std::pair<std::string, std::string>& edge) {
  const auto& in_f = c.in_type().factors();
  const auto& out_f = c.out_type().factors();
  if (rel.in_parties.size() != in_f.size() ||
      rel.out_parties.size() != out_f.size())
    throw std::invalid_argument("signaling: party/factor partition mismatch");
  for (std::size_t i = 0; i < in_f.size(); ++i)
    party_index(in_f, rel.in_parties[i]);
  for (std::size_t i = 0; i < out_f.size(); ++i)
    party_index(out_f, rel.out_parties[i]);

  const std::size_t b_idx = party_index(in_f, edge.first);
  const std::size_t ap_idx = party_index(out_f, edge.second);
  const std::size_t d_b = in_f[b_idx].dim;

  // trace out every output party except a'
  std::vector<std::string> other_outs;
  for (std::size_t k = 0; k < out_f.size(); ++k)
    if (k != ap_idx) other_outs.push_back(out_wire(k));
  CTensor d = partial_trace(c.choi(), other_outs);

  // factorization: D == (Tr_b D / d_b) (x) I_b
  CTensor e = partial_trace(d, {in_wire(b_idx)});
  e *= cx{1.0 / static_cast<double>(d_b)};
  CTensor ident = op_tensor(ComplexMatrix::identity(d_b),
                            {{in_wire(b_idx), d_b}});
  CTensor candidate = tensor_product(e, ident);
  return candidate.frob_dist(d);
}

double signaling_deviation(const Channel& c, const SignalingRelation& rel) {
  double dev = 0.0;
  for (const auto& edge : rel.forbidden)
    dev = std::max(dev, edge_signaling_deviation(c, rel, edge));
  return dev;
}

bool check_signaling(const Channel& c, const SignalingRelation& rel,
                     double tol) {
  return signaling_deviation(c, rel) <= tol;
}

ChannelSetSpec ChannelSetSpec::all(SystemType in, SystemType out) {
  ChannelSetSpec k;
  k.base_in = std::move(in);
  k.base_out = std::move(out);
  k.kind = SetKind::All;
  k.convex = true;
  k.normal = true;
  return k;
}

ChannelSetSpec ChannelSetSpec::non_signaling(SystemType in, SystemType out,
                                             SignalingRelation rel) {
  ChannelSetSpec k;
  k.base_in = std::move(in);
  k.base_out = std::move(out);
  k.kind = SetKind::NonSignaling;
  k.relation = std::move(rel);
  k.convex = true;
  k.normal = true;
  return k;
}

ChannelSetSpec ChannelSetSpec::one_way(SystemType in, SystemType out,
                                       SignalingRelation rel) {
  ChannelSetSpec k = non_signaling(std::move(in), std::move(out), std::move(rel));
  k.kind = SetKind::OneWay;
  return k;
}

ChannelSetSpec ChannelSetSpec::custom(
    SystemType in, SystemType out,
    std::function<bool(const Channel&, double)> pred, bool convex,
    bool normal) {
  ChannelSetSpec k;
  k.base_in = std::move(in);
  k.base_out = std::move(out);
  k.kind = SetKind::Custom;
  k.predicate = std::move(pred);
  k.convex = convex;
  k.normal = normal;
  return k;
}

bool set_member(const ChannelSetSpec& k, const Channel& c, double tol) {
  auto rep = is_channel(c, tol);
  if (!rep.cp || !rep.tp) return false;
  switch (k.kind) {
    case SetKind::All:
      return true;
    case SetKind::NonSignaling:
    case SetKind::OneWay:
      return check_signaling(c, k.relation, tol);
    case SetKind::Custom:
      return k.predicate(c, tol);
  }
  return false;
}

ControlPair ControlPair::computational(std::size_t dim) {
  if (dim < 2)
    throw std::invalid_argument(
        "ControlPair: control requires at least two distinguishable states");
  ControlPair p;
  p.control_dim = dim;
  for (std::size_t i = 0; i < 2; ++i) {
    ComplexMatrix s(dim, dim);
    s(i, i) = 1.0;
    p.states.push_back(s);
    p.effects.push_back(s);
  }
  if (dim > 2) {
    // complete the measurement so the control channel stays deterministic
    ComplexMatrix rest(dim, dim);
    for (std::size_t i = 2; i < dim; ++i) rest(i, i) = 1.0;
    p.effects[1] += rest;
  }
  return p;
}

void validate_control_pair(const ControlPair& pair, double tol) {
  if (pair.control_dim < 2)
    throw std::invalid_argument(
        "ControlPair: control requires at least two distinguishable states");
  if (pair.states.size() != 2 || pair.effects.size() != 2)
    throw std::invalid_argument("ControlPair: exactly two states required");
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const cx v = (pair.effects[i] * pair.states[j]).trace();
      const double expect = (i == j) ? 1.0 : 0.0;
      if (std::abs(v - cx{expect}) > tol)
        throw std::invalid_argument(
            "ControlPair: states are not perfectly distinguishable");
    }
  ComplexMatrix sum = pair.effects[0] + pair.effects[1];
  if (sum.frob_dist(ComplexMatrix::identity(pair.control_dim)) > tol)
    throw std::invalid_argument("ControlPair: effects must sum to identity");
}

Channel control_channel(const Channel& phi0, const Channel& phi1,
                        const ControlPair& pair) {
  if (!phi0.in_type().same_dims(phi1.in_type()) ||
      !phi0.out_type().same_dims(phi1.out_type()))
    throw std::invalid_argument("control_channel: slot type mismatch");
  if (!phi0.deterministic() || !phi1.deterministic())
    throw std::invalid_argument("control_channel: inputs must be deterministic");
  validate_control_pair(pair, 1e-9);

  const SystemType y = SystemType::single("Y", pair.control_dim);
  // measure-and-reprepare on the control wire: alpha -> tr(e_i alpha) rho_i,
  // whose Choi is e_i^T (x) rho_i
  auto branch = [&](const Channel& phi, const ComplexMatrix& e,
                    const ComplexMatrix& rho) {
    Channel m(y, y, kron(e.transpose(), rho), false);
    return tensor_channels(phi, m);
  };
  Channel c = add_channels(branch(phi0, pair.effects[0], pair.states[0]),
                           branch(phi1, pair.effects[1], pair.states[1]),
                           cx{1.0}, cx{1.0});
  c.set_deterministic(tp_deviation(c) <= 1e-9);
  return c;
}

DextReport in_dilation_extension_report(const Channel& phi,
                                        const ChannelSetSpec& k, int trials,
                                        std::uint64_t seed, double tol) {
  DextReport rep;
  rep.trials = trials;
  const std::size_t n_a_in = k.base_in.n_factors(),
                    n_a_out = k.base_out.n_factors();
  if (!k.base_in.dims_prefix_of(phi.in_type()) ||
      !k.base_out.dims_prefix_of(phi.out_type()))
    throw std::invalid_argument("in_dilation_extension: slot type mismatch");
  const std::size_t d_x =
      phi.in_type().total_dim() / k.base_in.total_dim();
  const std::size_t d_xp =
      phi.out_type().total_dim() / k.base_out.total_dim();

  for (int t = 0; t < trials && rep.pass; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    // causal reduction: random scaled state into X, trace on X'
    const double lambda = 0.25 + 1.5 * rng.uniform();
    ComplexMatrix rho = d_x > 1 ? random_density(d_x, rng)
                                : ComplexMatrix::identity(1);
    rho *= cx{lambda};
    Channel red = reduce_extended(phi, n_a_in, n_a_out, rho, nullptr);
    Channel rescaled(red.in_type(), red.out_type(),
                     red.choi_matrix() * cx{1.0 / lambda}, true);
    // rebuild with the set's base types so party labels line up
    Channel member(k.base_in, k.base_out, rescaled.choi_matrix(), true);
    if (!set_member(k, member, tol)) {
      rep.pass = false;
      rep.first_failing_seed = derive_seed(seed, static_cast<std::uint64_t>(t));
      double dev = tp_deviation(member);
      if (k.kind == SetKind::NonSignaling || k.kind == SetKind::OneWay)
        dev = std::max(dev, signaling_deviation(member, k.relation));
      rep.max_deviation = std::max(rep.max_deviation, dev);
      break;
    }
    // CP reduction: PSD effect on X', positivity of the reduced map
    if (d_xp >= 1) {
      ComplexMatrix sigma = d_xp > 1 ? random_psd(d_xp, rng)
                                     : ComplexMatrix::identity(1);
      Channel cp_red = reduce_extended(phi, n_a_in, n_a_out, rho, &sigma);
      const double me = min_hermitian_eig(cp_red.choi_matrix());
      if (me < -tol) {
        rep.pass = false;
        rep.first_failing_seed =
            derive_seed(seed, static_cast<std::uint64_t>(t));
        rep.max_deviation = std::max(rep.max_deviation, -me);
        break;
      }
    }
  }
  return rep;
}

bool in_dilation_extension(const Channel& phi, const ChannelSetSpec& k,
                           int trials, std::uint64_t seed, double tol) {
  return in_dilation_extension_report(phi, k, trials, seed, tol).pass;
}

namespace {

Channel sample_one_way(const ChannelSetSpec& k, Rng& rng,
                       std::uint64_t seed) {
  // one-way member: a side sends through a memory into the b side
  const auto& fa = k.base_in.factors().at(0);
  const auto& fb = k.base_in.factors().at(1);
  const auto& fap = k.base_out.factors().at(0);
  const auto& fbp = k.base_out.factors().at(1);
  const std::size_t dm = 2;
  SystemType a = SystemType::single(fa.label, fa.dim);
  SystemType b = SystemType::single(fb.label, fb.dim);
  SystemType ap = SystemType::single(fap.label, fap.dim);
  SystemType bp = SystemType::single(fbp.label, fbp.dim);
  SystemType m = SystemType::single("M", dm);
  Channel v = random_channel(a, ap.concat(m), 2, derive_seed(seed, 11));
  Channel w = random_channel(m.concat(b), bp, 2, derive_seed(seed, 12));
  (void)rng;
  // (id_{A'} (x) w) . (v (x) id_B)
  Channel stage1 = tensor_channels(v, identity_channel(b));
  Channel stage2 = tensor_channels(identity_channel(ap), w);
  Channel c = compose(stage2, stage1);
  return Channel(k.base_in, k.base_out, c.choi_matrix(), true);
}

}  // namespace

Channel sample_member(const ChannelSetSpec& k, std::uint64_t seed) {
  Rng rng(seed);
  switch (k.kind) {
    case SetKind::All:
      return random_channel(k.base_in, k.base_out, 1 + seed % 2, seed);
    case SetKind::NonSignaling: {
      if (k.base_in.n_factors() != k.relation.in_parties.size())
        throw std::invalid_argument("sample_member: party partition mismatch");
      // product of per-party channels, optionally a convex mix of two
      auto product = [&](std::uint64_t s) {
        Channel c = random_channel(
            SystemType({k.base_in.factors()[0]}),
            SystemType({k.base_out.factors()[0]}), 1 + s % 2,
            derive_seed(s, 1));
        for (std::size_t p = 1; p < k.base_in.n_factors(); ++p)
          c = tensor_channels(
              c, random_channel(SystemType({k.base_in.factors()[p]}),
                                SystemType({k.base_out.factors()[p]}),
                                1 + (s + p) % 2, derive_seed(s, 1 + p)));
        return Channel(k.base_in, k.base_out, c.choi_matrix(), true);
      };
      Channel c0 = product(derive_seed(seed, 100));
      if (rng.uniform() < 0.5) return c0;
      Channel c1 = product(derive_seed(seed, 200));
      const double p = rng.uniform();
      return add_channels(c0, c1, cx{p}, cx{1.0 - p});
    }
    case SetKind::OneWay: {
      if (k.base_in.n_factors() != 2 || k.base_out.n_factors() != 2)
        throw std::invalid_argument("sample_member: one-way needs two parties");
      Channel c0 = sample_one_way(k, rng, derive_seed(seed, 300));
      if (rng.uniform() < 0.5) return c0;
      Channel c1 = sample_one_way(k, rng, derive_seed(seed, 400));
      const double p = rng.uniform();
      return add_channels(c0, c1, cx{p}, cx{1.0 - p});
    }
    case SetKind::Custom:
      throw std::invalid_argument("sample_member: custom sets are opaque");
  }
  throw std::logic_error("sample_member: unreachable");
}

Channel sample_extended_member(const ChannelSetSpec& k, const SystemType& x,
                               const SystemType& xp, std::uint64_t seed) {
  Rng rng(seed);
  const int variant = static_cast<int>(rng.index(4));

  auto base = [&](std::uint64_t s) {
    Channel m = sample_member(k, derive_seed(s, 1));
    if (x.n_factors() == 0 && xp.n_factors() == 0) return m;
    Channel aux = random_channel(x, xp, 1 + s % 2, derive_seed(s, 2));
    return tensor_channels(m, aux);
  };

  if (variant == 1) {
    // convex mix
    Channel a = base(derive_seed(seed, 10)), b = base(derive_seed(seed, 11));
    const double p = rng.uniform();
    return add_channels(a, b, cx{p}, cx{1.0 - p});
  }
  if (variant == 2 && k.convex && x.n_factors() > 0 && xp.n_factors() > 0 &&
      x.factors().back().dim == 2 && xp.factors().back().dim == 2) {
    // control combination on a dim-2 tail of the auxiliary system
    SystemType x_rest = x.slice(0, x.n_factors() - 1);
    SystemType xp_rest = xp.slice(0, xp.n_factors() - 1);
    ChannelSetSpec k_inner = k;
    Channel a = sample_extended_member(k_inner, x_rest, xp_rest,
                                       derive_seed(seed, 20));
    Channel b = sample_extended_member(k_inner, x_rest, xp_rest,
                                       derive_seed(seed, 21));
    if (a.deterministic() && b.deterministic())
      return control_channel(a, b, ControlPair::computational(2));
  }
  if (variant == 3 && x.n_factors() > 0 && xp.n_factors() > 0) {
    // dress a member on small internal auxiliaries with channels f, g
    const std::size_t dz = 1 + rng.index(3), dzp = 1 + rng.index(3);
    SystemType z = SystemType::single("Z", dz), zp = SystemType::single("Z'", dzp);
    Channel core = tensor_channels(sample_member(k, derive_seed(seed, 30)),
                                   random_channel(z, zp, 2, derive_seed(seed, 31)));
    Channel f = random_channel(x, z, 2, derive_seed(seed, 32));
    Channel g = random_channel(zp, xp, 2, derive_seed(seed, 33));
    Channel pre = tensor_channels(identity_channel(k.base_in), f);
    Channel post = tensor_channels(identity_channel(k.base_out), g);
    return compose(post, compose(core, pre));
  }
  return base(derive_seed(seed, 40));
}

}  // namespace hoq
