#include "hoq/supermap.hpp"

#include <algorithm>
#include <stdexcept>

namespace hoq {

namespace {

constexpr double kDetTol = 1e-9;

ComplexMatrix cup_operator(std::size_t d) {
  ComplexMatrix m(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i * d + i, j * d + j) = 1.0;
  return m;
}

// I -> A* (x) A, prepares the unnormalized Bell operator.
Channel bell_state_channel(const SystemType& a_star, const SystemType& a) {
  return prepare_channel(a_star.concat(a), cup_operator(a.total_dim()));
}

// A (x) A* -> I, the unnormalized Bell effect.
Channel bell_effect_channel(const SystemType& a, const SystemType& a_star) {
  return Channel(a.concat(a_star), SystemType::trivial(),
                 cup_operator(a.total_dim()), false);
}

SystemType starred(const SystemType& t) {
  std::vector<SysFactor> f;
  for (const auto& x : t.factors()) f.push_back({x.label + "*", x.dim});
  return SystemType(f);
}

std::vector<std::size_t> iota_perm(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  return p;
}

}  // namespace

Supermap make_supermap(Channel cp, ChannelSetSpec source,
                       ChannelSetSpec target) {
  const SystemType expect_in = source.base_in.concat(source.base_out);
  const SystemType expect_out = target.base_in.concat(target.base_out);
  if (!cp.in_type().same_dims(expect_in) ||
      !cp.out_type().same_dims(expect_out))
    throw std::invalid_argument("make_supermap: leg mismatch");
  return Supermap{std::move(cp), std::move(source), std::move(target)};
}

Supermap identity_supermap(const SystemType& a, const SystemType& ap) {
  return make_supermap(identity_channel(a.concat(ap)),
                       ChannelSetSpec::all(a, ap), ChannelSetSpec::all(a, ap));
}

Channel apply_supermap(const Supermap& s, const Channel& phi) {
  const std::size_t na = s.n_src_in(), nap = s.n_src_out();
  if (!s.source.base_in.dims_prefix_of(phi.in_type()) ||
      !s.source.base_out.dims_prefix_of(phi.out_type()))
    throw std::invalid_argument("apply_supermap: leg mismatch");
  const std::size_t nx = phi.in_type().n_factors() - na;
  const std::size_t nxp = phi.out_type().n_factors() - nap;

  // shared wire names for the slot, fresh names for everything else
  std::vector<std::pair<std::string, std::string>> rphi, rs;
  std::vector<std::string> slot;
  for (std::size_t k = 0; k < na; ++k) {
    rphi.emplace_back(in_wire(k), "sa" + std::to_string(k));
    rs.emplace_back(in_wire(k), "sa" + std::to_string(k));
    slot.push_back("sa" + std::to_string(k));
  }
  for (std::size_t k = 0; k < nap; ++k) {
    rphi.emplace_back(out_wire(k), "sb" + std::to_string(k));
    rs.emplace_back(in_wire(na + k), "sb" + std::to_string(k));
    slot.push_back("sb" + std::to_string(k));
  }
  for (std::size_t k = 0; k < nx; ++k)
    rphi.emplace_back(in_wire(na + k), "x" + std::to_string(k));
  for (std::size_t k = 0; k < nxp; ++k)
    rphi.emplace_back(out_wire(nap + k), "y" + std::to_string(k));
  const std::size_t nb = s.target.base_in.n_factors(),
                    nbp = s.target.base_out.n_factors();
  for (std::size_t k = 0; k < nb; ++k)
    rs.emplace_back(out_wire(k), "tb" + std::to_string(k));
  for (std::size_t k = 0; k < nbp; ++k)
    rs.emplace_back(out_wire(nb + k), "tc" + std::to_string(k));

  CTensor phit = phi.choi().relabeled(rphi);
  CTensor st = s.cp.choi().relabeled(rs);
  CTensor out = contract(partial_transpose(phit, slot), st, slot);

  // canonical wires of the result: in = (B, X), out = (B', X')
  std::vector<std::pair<std::string, std::string>> back;
  for (std::size_t k = 0; k < nb; ++k)
    back.emplace_back("tb" + std::to_string(k), in_wire(k));
  for (std::size_t k = 0; k < nx; ++k)
    back.emplace_back("x" + std::to_string(k), in_wire(nb + k));
  for (std::size_t k = 0; k < nbp; ++k)
    back.emplace_back("tc" + std::to_string(k), out_wire(k));
  for (std::size_t k = 0; k < nxp; ++k)
    back.emplace_back("y" + std::to_string(k), out_wire(nbp + k));
  out = out.relabeled(back);

  SystemType in_t = s.target.base_in.concat(
      phi.in_type().slice(na, phi.in_type().n_factors()));
  SystemType out_t = s.target.base_out.concat(
      phi.out_type().slice(nap, phi.out_type().n_factors()));
  Channel res(in_t, out_t, out, false);
  res.set_deterministic(phi.deterministic() && tp_deviation(res) <= kDetTol);
  return res;
}

Supermap compose_supermaps(const Supermap& second, const Supermap& first) {
  return make_supermap(compose(second.cp, first.cp), first.source,
                       second.target);
}

Comb make_comb(Channel pre, Channel post, std::size_t n_env_factors) {
  if (n_env_factors > pre.out_type().n_factors() ||
      n_env_factors > post.in_type().n_factors())
    throw std::invalid_argument("make_comb: bad environment size");
  Comb c;
  c.env = pre.out_type().slice(0, n_env_factors);
  if (!c.env.same_dims(post.in_type().slice(0, n_env_factors)))
    throw std::invalid_argument("make_comb: environment mismatch");
  c.a_in = pre.out_type().slice(n_env_factors, pre.out_type().n_factors());
  c.a_out = post.in_type().slice(n_env_factors, post.in_type().n_factors());
  c.b_in = pre.in_type();
  c.b_out = post.out_type();
  c.pre = std::move(pre);
  c.post = std::move(post);
  return c;
}

Channel apply_comb(const Comb& c, const Channel& phi) {
  if (!c.a_in.dims_prefix_of(phi.in_type()) ||
      !c.a_out.dims_prefix_of(phi.out_type()))
    throw std::invalid_argument("apply_comb: leg mismatch");
  SystemType x = phi.in_type().slice(c.a_in.n_factors(),
                                     phi.in_type().n_factors());
  SystemType xp = phi.out_type().slice(c.a_out.n_factors(),
                                       phi.out_type().n_factors());
  Channel stage1 = tensor_channels(c.pre, identity_channel(x));
  Channel stage2 = tensor_channels(identity_channel(c.env), phi);
  Channel stage3 = tensor_channels(c.post, identity_channel(xp));
  return compose(stage3, compose(stage2, stage1));
}

Supermap comb_to_supermap(const Comb& c) {
  return comb_to_supermap(c, ChannelSetSpec::all(c.a_in, c.a_out),
                          ChannelSetSpec::all(c.b_in, c.b_out));
}

Supermap comb_to_supermap(const Comb& c, ChannelSetSpec source,
                          ChannelSetSpec target) {
  // bend pre: B -> E (x) A into A* -> B* (x) E
  const std::size_t ne = c.env.n_factors(), nb = c.b_in.n_factors();
  std::vector<std::size_t> bend_in, bend_out;
  for (std::size_t k = 0; k < nb; ++k) bend_in.push_back(k);
  for (std::size_t k = 0; k < c.a_in.n_factors(); ++k)
    bend_out.push_back(ne + k);
  Channel bent = bend_channel(c.pre, bend_in, bend_out);
  // bent: A* -> [E..., B*...]; reorder outputs to [B*..., E...]
  std::vector<std::size_t> operm;
  for (std::size_t k = 0; k < nb; ++k) operm.push_back(ne + k);
  for (std::size_t k = 0; k < ne; ++k) operm.push_back(k);
  Channel ptil = permute_channel_factors(bent, iota_perm(bent.in_type().n_factors()), operm);

  Channel stage1 = tensor_channels(ptil, identity_channel(c.a_out));
  Channel stage2 = tensor_channels(identity_channel(c.b_in), c.post);
  return make_supermap(compose(stage2, stage1), std::move(source),
                       std::move(target));
}

Comb supermap_to_comb(const Supermap& s) {
  const SystemType a = s.source.base_in, ap = s.source.base_out;
  const SystemType b = s.target.base_in, bp = s.target.base_out;
  const SystemType astar = starred(a), bstar = starred(b);
  const std::size_t nas = astar.n_factors(), nb = b.n_factors();

  // pre: B -> (A* (x) B) (x) A
  Channel pre0 = tensor_channels(bell_state_channel(astar, a),
                                 identity_channel(b));
  // outputs currently [A*..., A..., B...]; want [A*..., B..., A...]
  std::vector<std::size_t> operm;
  for (std::size_t k = 0; k < nas; ++k) operm.push_back(k);
  for (std::size_t k = 0; k < nb; ++k) operm.push_back(nas + a.n_factors() + k);
  for (std::size_t k = 0; k < a.n_factors(); ++k) operm.push_back(nas + k);
  Channel pre = permute_channel_factors(
      pre0, iota_perm(pre0.in_type().n_factors()), operm);

  // post: (A* (x) B) (x) A' -> B'
  // inputs [A*..., B..., A'...] -> reorder to [A*..., A'..., B...]
  std::vector<std::size_t> iperm;
  for (std::size_t k = 0; k < nas; ++k) iperm.push_back(k);
  for (std::size_t k = 0; k < ap.n_factors(); ++k)
    iperm.push_back(nas + nb + k);
  for (std::size_t k = 0; k < nb; ++k) iperm.push_back(nas + k);
  Channel body = tensor_channels(s.cp, identity_channel(b));
  // body outputs [B*..., B'..., B...]; cap eats (B, B*), keep B'
  std::vector<std::size_t> operm2;
  const std::size_t nbp = bp.n_factors();
  for (std::size_t k = 0; k < nb; ++k) operm2.push_back(nb + nbp + k);  // B
  for (std::size_t k = 0; k < nb; ++k) operm2.push_back(k);             // B*
  for (std::size_t k = 0; k < nbp; ++k) operm2.push_back(nb + k);       // B'
  Channel body2 = permute_channel_factors(
      body, iota_perm(body.in_type().n_factors()), operm2);
  Channel cap = tensor_channels(bell_effect_channel(b, bstar),
                                identity_channel(bp));
  Channel post0 = compose(cap, body2);
  Channel post(SystemType(astar.concat(b)).concat(ap), post0.out_type(),
               post0.choi_matrix(), post0.deterministic());
  // post0 currently expects [A*..., A'..., B...]; reorder to [A*..., B..., A'...]
  std::vector<std::size_t> iperm2;
  for (std::size_t k = 0; k < nas; ++k) iperm2.push_back(k);
  for (std::size_t k = 0; k < nb; ++k) iperm2.push_back(nas + ap.n_factors() + k);
  for (std::size_t k = 0; k < ap.n_factors(); ++k) iperm2.push_back(nas + k);
  Channel post1 = permute_channel_factors(
      post0, iperm2, iota_perm(post0.out_type().n_factors()));

  return make_comb(pre, post1, nas + nb);
}

Comb compose_combs(const Comb& second, const Comb& first) {
  if (!first.b_in.same_dims(second.a_in) ||
      !first.b_out.same_dims(second.a_out))
    throw std::invalid_argument("compose_combs: type mismatch");
  // pre = (id_E2 (x) pre1) . pre2 : C -> E2 (x) E1 (x) A
  Channel pre = compose(tensor_channels(identity_channel(second.env), first.pre),
                        second.pre);
  // post = post2 . (id_E2 (x) post1) : E2 (x) E1 (x) A' -> C'
  Channel post = compose(second.post, tensor_channels(
                                          identity_channel(second.env),
                                          first.post));
  return make_comb(pre, post,
                   second.env.n_factors() + first.env.n_factors());
}

Comb random_comb(const SystemType& a, const SystemType& ap,
                 const SystemType& b, const SystemType& bp,
                 std::size_t env_dim, std::uint64_t seed) {
  SystemType env = SystemType::single("E", env_dim);
  Channel pre = random_channel(b, env.concat(a), 2, derive_seed(seed, 1));
  Channel post = random_channel(env.concat(ap), bp, 2, derive_seed(seed, 2));
  return make_comb(pre, post, 1);
}

SupermapReport is_supermap(const Supermap& s, int trials, std::uint64_t seed,
                           double tol) {
  SupermapReport rep;
  rep.trials = trials;
  rep.psd = psd_check(s.cp.choi_matrix(), tol);
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t st = derive_seed(seed, static_cast<std::uint64_t>(t));
    Rng rng(st);
    const std::size_t dx = 1 + rng.index(3), dxp = 1 + rng.index(3);
    SystemType x = dx == 1 ? SystemType::trivial()
                           : SystemType::single("X", dx);
    SystemType xp = dxp == 1 ? SystemType::trivial()
                             : SystemType::single("X'", dxp);
    Channel phi = sample_extended_member(s.source, x, xp, st);
    Channel psi = apply_supermap(s, phi);
    const double tp = tp_deviation(psi);
    rep.max_tp_deviation = std::max(rep.max_tp_deviation, tp);
    const double me = min_hermitian_eig(psi.choi_matrix());
    if (me < -tol) rep.max_cp_violation = std::max(rep.max_cp_violation, -me);
    bool ok = tp <= tol && me >= -tol;
    if (ok && s.target.kind != SetKind::All) {
      ok = in_dilation_extension(psi, s.target, 4, derive_seed(st, 99), tol);
      if (!ok) rep.target_membership = false;
    }
    if (!ok && !rep.first_failing_seed) rep.first_failing_seed = st;
  }
  return rep;
}

MultiSupermap make_multi_supermap(Channel cp,
                                  std::vector<ChannelSetSpec> slots,
                                  ChannelSetSpec target) {
  SystemType expect_in;
  for (const auto& k : slots)
    expect_in = expect_in.concat(k.base_in).concat(k.base_out);
  if (!cp.in_type().same_dims(expect_in) ||
      !cp.out_type().same_dims(target.base_in.concat(target.base_out)))
    throw std::invalid_argument("make_multi_supermap: leg mismatch");
  return MultiSupermap{std::move(cp), std::move(slots), std::move(target)};
}

MultiSupermap as_multi(const Supermap& s) {
  return MultiSupermap{s.cp, {s.source}, s.target};
}

Supermap multi_as_single_slot(const MultiSupermap& s) {
  SystemType jin, jout;
  for (const auto& k : s.slots) jin = jin.concat(k.base_in);
  for (const auto& k : s.slots) jout = jout.concat(k.base_out);
  return multi_as_single_slot(s, ChannelSetSpec::all(jin, jout));
}

Supermap multi_as_single_slot(const MultiSupermap& s, ChannelSetSpec source) {
  // regroup input factors from slot-major (A1,A1',A2,A2',...) to
  // (A1,A2,...,A1',A2',...)
  std::vector<std::size_t> iperm;
  std::size_t off = 0;
  std::vector<std::size_t> slot_off;
  for (const auto& k : s.slots) {
    slot_off.push_back(off);
    off += k.base_in.n_factors() + k.base_out.n_factors();
  }
  for (std::size_t i = 0; i < s.slots.size(); ++i)
    for (std::size_t k = 0; k < s.slots[i].base_in.n_factors(); ++k)
      iperm.push_back(slot_off[i] + k);
  for (std::size_t i = 0; i < s.slots.size(); ++i)
    for (std::size_t k = 0; k < s.slots[i].base_out.n_factors(); ++k)
      iperm.push_back(slot_off[i] + s.slots[i].base_in.n_factors() + k);
  Channel cp = permute_channel_factors(
      s.cp, iperm, iota_perm(s.cp.out_type().n_factors()));
  return make_supermap(std::move(cp), std::move(source), s.target);
}

Channel apply_multi_supermap(const MultiSupermap& s,
                             const std::vector<Channel>& phis) {
  if (phis.size() != s.n_slots())
    throw std::invalid_argument("apply_multi_supermap: slot count mismatch");
  // joint = phi_1 (x) ... (x) phi_n with all slot wires moved up front
  Channel joint = phis[0];
  for (std::size_t i = 1; i < phis.size(); ++i)
    joint = tensor_channels(joint, phis[i]);
  std::vector<std::size_t> iperm, operm;
  std::size_t off = 0;
  std::vector<std::size_t> in_off, out_off;
  for (const auto& p : phis) {
    in_off.push_back(off);
    off += p.in_type().n_factors();
  }
  off = 0;
  for (const auto& p : phis) {
    out_off.push_back(off);
    off += p.out_type().n_factors();
  }
  for (std::size_t i = 0; i < phis.size(); ++i)
    for (std::size_t k = 0; k < s.slots[i].base_in.n_factors(); ++k)
      iperm.push_back(in_off[i] + k);
  for (std::size_t i = 0; i < phis.size(); ++i)
    for (std::size_t k = s.slots[i].base_in.n_factors();
         k < phis[i].in_type().n_factors(); ++k)
      iperm.push_back(in_off[i] + k);
  for (std::size_t i = 0; i < phis.size(); ++i)
    for (std::size_t k = 0; k < s.slots[i].base_out.n_factors(); ++k)
      operm.push_back(out_off[i] + k);
  for (std::size_t i = 0; i < phis.size(); ++i)
    for (std::size_t k = s.slots[i].base_out.n_factors();
         k < phis[i].out_type().n_factors(); ++k)
      operm.push_back(out_off[i] + k);
  Channel grouped = permute_channel_factors(joint, iperm, operm);
  return apply_supermap(multi_as_single_slot(s), grouped);
}

Supermap fix_all_but_one(const MultiSupermap& s, std::size_t keep,
                         const std::vector<Channel>& fixed) {
  if (keep >= s.n_slots() || fixed.size() != s.n_slots() - 1)
    throw std::invalid_argument("fix_all_but_one: bad arguments");
  // link the fixed channels into their slot blocks
  CTensor t = s.cp.choi();
  std::size_t off = 0;
  std::size_t fi = 0;
  std::vector<std::pair<std::string, std::string>> keep_ren;
  for (std::size_t i = 0; i < s.n_slots(); ++i) {
    const std::size_t na = s.slots[i].base_in.n_factors();
    const std::size_t nap = s.slots[i].base_out.n_factors();
    if (i == keep) {
      for (std::size_t k = 0; k < na; ++k)
        keep_ren.emplace_back(in_wire(off + k), "#ka" + std::to_string(k));
      for (std::size_t k = 0; k < nap; ++k)
        keep_ren.emplace_back(in_wire(off + na + k),
                              "#kb" + std::to_string(k));
      off += na + nap;
      continue;
    }
    const Channel& phi = fixed[fi++];
    if (!phi.in_type().same_dims(s.slots[i].base_in) ||
        !phi.out_type().same_dims(s.slots[i].base_out))
      throw std::invalid_argument("fix_all_but_one: slot type mismatch");
    std::vector<std::pair<std::string, std::string>> rphi, rt;
    std::vector<std::string> wires;
    for (std::size_t k = 0; k < na; ++k) {
      const std::string w = "#f" + std::to_string(i) + "_" + std::to_string(k);
      rphi.emplace_back(in_wire(k), w);
      rt.emplace_back(in_wire(off + k), w);
      wires.push_back(w);
    }
    for (std::size_t k = 0; k < nap; ++k) {
      const std::string w = "#g" + std::to_string(i) + "_" + std::to_string(k);
      rphi.emplace_back(out_wire(k), w);
      rt.emplace_back(in_wire(off + na + k), w);
      wires.push_back(w);
    }
    CTensor phit = phi.choi().relabeled(rphi);
    t = contract(partial_transpose(phit, wires), t.relabeled(rt), wires);
    off += na + nap;
  }
  // remaining input wires: the kept slot block; rename to canonical order
  t = t.relabeled(keep_ren);
  std::vector<std::pair<std::string, std::string>> fin;
  const std::size_t na = s.slots[keep].base_in.n_factors();
  const std::size_t nap = s.slots[keep].base_out.n_factors();
  for (std::size_t k = 0; k < na; ++k)
    fin.emplace_back("#ka" + std::to_string(k), in_wire(k));
  for (std::size_t k = 0; k < nap; ++k)
    fin.emplace_back("#kb" + std::to_string(k), in_wire(na + k));
  t = t.relabeled(fin);
  Channel cp(s.slots[keep].base_in.concat(s.slots[keep].base_out),
             s.cp.out_type(), t, false);
  return make_supermap(std::move(cp), s.slots[keep], s.target);
}

MultiSupermap nest(const MultiSupermap& outer,
                   const std::vector<MultiSupermap>& inner) {
  if (inner.size() != outer.n_slots())
    throw std::invalid_argument("nest: slot count mismatch");
  Channel joint = inner[0].cp;
  std::vector<ChannelSetSpec> slots = inner[0].slots;
  for (std::size_t i = 1; i < inner.size(); ++i) {
    joint = tensor_channels(joint, inner[i].cp);
    slots.insert(slots.end(), inner[i].slots.begin(), inner[i].slots.end());
  }
  for (std::size_t i = 0; i < inner.size(); ++i)
    if (!inner[i].target.base_in.same_dims(outer.slots[i].base_in) ||
        !inner[i].target.base_out.same_dims(outer.slots[i].base_out))
      throw std::invalid_argument("nest: slot type mismatch");
  return make_multi_supermap(compose(outer.cp, joint), std::move(slots),
                             outer.target);
}

MultiSupermap seq_enrichment(const SystemType& a, const SystemType& b,
                             const SystemType& c) {
  // slots (A -> B), (B -> C); target A -> C
  Channel cap = bell_effect_channel(b, starred(b));
  Channel cp = tensor_channels(tensor_channels(identity_channel(starred(a)), cap),
                               identity_channel(c));
  // inputs are [A*, B, B*, C] which is exactly slot-major for the two slots
  return make_multi_supermap(
      cp, {ChannelSetSpec::all(a, b), ChannelSetSpec::all(b, c)},
      ChannelSetSpec::all(a, c));
}

MultiSupermap par_enrichment(const SystemType& a, const SystemType& ap,
                             const SystemType& b, const SystemType& bp) {
  // slots (A -> A'), (B -> B'); target A (x) B -> A' (x) B'
  SystemType in = starred(a).concat(ap).concat(starred(b)).concat(bp);
  Channel id = identity_channel(in);
  // outputs [A*, A', B*, B'] -> regroup to [A*, B*, A', B']
  const std::size_t na = a.n_factors(), nap = ap.n_factors(),
                    nb = b.n_factors(), nbp = bp.n_factors();
  std::vector<std::size_t> operm;
  for (std::size_t k = 0; k < na; ++k) operm.push_back(k);
  for (std::size_t k = 0; k < nb; ++k) operm.push_back(na + nap + k);
  for (std::size_t k = 0; k < nap; ++k) operm.push_back(na + k);
  for (std::size_t k = 0; k < nbp; ++k) operm.push_back(na + nap + nb + k);
  Channel cp = permute_channel_factors(
      id, iota_perm(id.in_type().n_factors()), operm);
  return make_multi_supermap(
      cp, {ChannelSetSpec::all(a, ap), ChannelSetSpec::all(b, bp)},
      ChannelSetSpec::all(a.concat(b), ap.concat(bp)));
}

namespace {

// The two order-routing isometry summands of the switch: on control value 0
// the signal runs through slot 1 then slot 2, on value 1 the other way.
ComplexMatrix switch_route(std::size_t d, int order) {
  // in: (i, x, j, y) over A1*, A1', A2*, A2'; out: (s, q, s', q')
  const std::size_t din = d * d * d * d, dout = d * 2 * d * 2;
  ComplexMatrix m(dout, din);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t y = 0; y < d; ++y) {
          const std::size_t col = ((i * d + x) * d + j) * d + y;
          if (order == 0) {
            // s = i, x feeds j, s' = y, q = q' = 0
            if (x == j) {
              const std::size_t row = ((i * 2 + 0) * d + y) * 2 + 0;
              m(row, col) += 1.0;
            }
          } else {
            // s = j, y feeds i, s' = x, q = q' = 1
            if (y == i) {
              const std::size_t row = ((j * 2 + 1) * d + x) * 2 + 1;
              m(row, col) += 1.0;
            }
          }
        }
  return m;
}

std::vector<ChannelSetSpec> switch_slots(std::size_t d) {
  SystemType a1 = SystemType::single("A1", d), a1p = SystemType::single("A1'", d);
  SystemType a2 = SystemType::single("A2", d), a2p = SystemType::single("A2'", d);
  return {ChannelSetSpec::all(a1, a1p), ChannelSetSpec::all(a2, a2p)};
}

ChannelSetSpec switch_target(std::size_t d) {
  SystemType bin = SystemType({{"S", d}, {"Q", 2}});
  SystemType bout = SystemType({{"S'", d}, {"Q'", 2}});
  return ChannelSetSpec::all(bin, bout);
}

SystemType switch_cp_in(std::size_t d) {
  return SystemType({{"A1*", d}, {"A1'", d}, {"A2*", d}, {"A2'", d}});
}

}  // namespace

MultiSupermap switch_supermap(std::size_t d) {
  if (d < 2) throw std::invalid_argument("switch_supermap: d must be >= 2");
  ComplexMatrix m = switch_route(d, 0) + switch_route(d, 1);
  auto tgt = switch_target(d);
  Channel cp = choi_from_kraus(switch_cp_in(d),
                               tgt.base_in.concat(tgt.base_out), {m});
  return make_multi_supermap(std::move(cp), switch_slots(d), tgt);
}

MultiSupermap classical_switch_supermap(std::size_t d) {
  if (d < 2)
    throw std::invalid_argument("classical_switch_supermap: d must be >= 2");
  auto tgt = switch_target(d);
  Channel cp = choi_from_kraus(switch_cp_in(d),
                               tgt.base_in.concat(tgt.base_out),
                               {switch_route(d, 0), switch_route(d, 1)});
  return make_multi_supermap(std::move(cp), switch_slots(d), tgt);
}

SupermapReport is_multi_supermap(const MultiSupermap& s, int trials,
                                 std::uint64_t seed, double tol) {
  SupermapReport rep;
  rep.trials = trials;
  rep.psd = psd_check(s.cp.choi_matrix(), tol);
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t st = derive_seed(seed, static_cast<std::uint64_t>(t));
    Rng rng(st);
    std::vector<Channel> phis;
    for (std::size_t i = 0; i < s.n_slots(); ++i) {
      const std::size_t dx = 1 + rng.index(3), dxp = 1 + rng.index(3);
      SystemType x = dx == 1 ? SystemType::trivial()
                             : SystemType::single("X", dx);
      SystemType xp = dxp == 1 ? SystemType::trivial()
                               : SystemType::single("X'", dxp);
      phis.push_back(sample_extended_member(s.slots[i], x, xp,
                                            derive_seed(st, 50 + i)));
    }
    Channel psi = apply_multi_supermap(s, phis);
    const double tp = tp_deviation(psi);
    rep.max_tp_deviation = std::max(rep.max_tp_deviation, tp);
    const double me = min_hermitian_eig(psi.choi_matrix());
    if (me < -tol) rep.max_cp_violation = std::max(rep.max_cp_violation, -me);
    bool ok = tp <= tol && me >= -tol;
    if (ok && s.target.kind != SetKind::All) {
      ok = in_dilation_extension(psi, s.target, 4, derive_seed(st, 99), tol);
      if (!ok) rep.target_membership = false;
    }
    if (!ok && !rep.first_failing_seed) rep.first_failing_seed = st;
  }
  return rep;
}

}  // namespace hoq
