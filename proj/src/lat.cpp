#include "hoq/lat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hoq {

namespace {

constexpr double kLatTol = 1e-9;
constexpr double kDetTol = 1e-8;

// (id (x) g) . phi . (id (x) f) with the slot factors leading.
Channel dress_aux(const Channel& phi, std::size_t n_slot_in,
                  std::size_t n_slot_out, const Channel& f, const Channel& g) {
  SystemType slot_in = phi.in_type().slice(0, n_slot_in);
  SystemType slot_out = phi.out_type().slice(0, n_slot_out);
  Channel pre = tensor_channels(identity_channel(slot_in), f);
  Channel post = tensor_channels(identity_channel(slot_out), g);
  return compose(post, compose(phi, pre));
}

SystemType aux_in(const Channel& phi, std::size_t n_slot) {
  return phi.in_type().slice(n_slot, phi.in_type().n_factors());
}
SystemType aux_out(const Channel& phi, std::size_t n_slot) {
  return phi.out_type().slice(n_slot, phi.out_type().n_factors());
}

SystemType small_aux(const std::string& label, std::size_t dim) {
  return dim == 1 ? SystemType::trivial() : SystemType::single(label, dim);
}

}  // namespace

LatOracle embed(const Supermap& s) {
  LatOracle o;
  o.a = s.source.base_in;
  o.ap = s.source.base_out;
  o.b = s.target.base_in;
  o.bp = s.target.base_out;
  o.source = s.source;
  o.target = s.target;
  o.eval = [s](const SystemType&, const SystemType&, const Channel& phi) {
    return apply_supermap(s, phi);
  };
  return o;
}

LatOracle compose_oracles(const LatOracle& second, const LatOracle& first) {
  if (!first.b.same_dims(second.a) || !first.bp.same_dims(second.ap))
    throw std::invalid_argument("compose_oracles: type mismatch");
  LatOracle o;
  o.a = first.a;
  o.ap = first.ap;
  o.b = second.b;
  o.bp = second.bp;
  o.source = first.source;
  o.target = second.target;
  auto f1 = first.eval, f2 = second.eval;
  o.eval = [f1, f2](const SystemType& x, const SystemType& xp,
                    const Channel& phi) {
    return f2(x, xp, f1(x, xp, phi));
  };
  return o;
}

Supermap extract(const LatOracle& o) {
  if (!o.source.convex || !o.source.normal)
    throw std::invalid_argument(
        "extract: the source set must be normal and convex");
  Channel swp = swap_channel(o.a, o.ap);
  Channel t = o.eval(o.ap, o.a, swp);

  const std::size_t na = o.a.n_factors(), nap = o.ap.n_factors();
  const std::size_t nb = o.b.n_factors(), nbp = o.bp.n_factors();
  if (t.in_type().n_factors() != nb + nap ||
      t.out_type().n_factors() != nbp + na ||
      !o.b.dims_prefix_of(t.in_type()) || !o.bp.dims_prefix_of(t.out_type()))
    throw std::invalid_argument("extract: oracle output has the wrong type");
  if (tp_deviation(t) > kDetTol)
    throw std::invalid_argument("extract: oracle output is not deterministic");

  // bend the B input up and the A output down
  std::vector<std::size_t> in_to_out, out_to_in;
  for (std::size_t k = 0; k < nb; ++k) in_to_out.push_back(k);
  for (std::size_t k = 0; k < na; ++k) out_to_in.push_back(nbp + k);
  Channel bent = bend_channel(t, in_to_out, out_to_in);
  // bent: in = [A'..., A...], out = [B'..., B...]; regroup to (A*, A') and
  // (B*, B')
  std::vector<std::size_t> iperm, operm;
  for (std::size_t k = 0; k < na; ++k) iperm.push_back(nap + k);
  for (std::size_t k = 0; k < nap; ++k) iperm.push_back(k);
  for (std::size_t k = 0; k < nb; ++k) operm.push_back(nbp + k);
  for (std::size_t k = 0; k < nbp; ++k) operm.push_back(k);
  Channel grouped = permute_channel_factors(bent, iperm, operm);
  Channel cp(o.source.base_in.concat(o.source.base_out),
             o.target.base_in.concat(o.target.base_out),
             grouped.choi_matrix(), false);
  return make_supermap(std::move(cp), o.source, o.target);
}

LocalApplicabilityReport check_local_applicability(const LatOracle& o,
                                                   int trials,
                                                   std::uint64_t seed) {
  LocalApplicabilityReport rep;
  rep.naturality.check = "naturality";
  rep.dragging.check = "dragging";
  rep.combined.check = "combined";
  rep.naturality.trials = rep.dragging.trials = rep.combined.trials = trials;

  std::vector<double> dev_nat(trials), dev_drag(trials), dev_comb(trials);
  const std::size_t na = o.a.n_factors(), nap = o.ap.n_factors();
  const std::size_t nb = o.b.n_factors(), nbp = o.bp.n_factors();

#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t st = derive_seed(seed, static_cast<std::uint64_t>(t));
    Rng rng(st);
    SystemType x = small_aux("X", 1 + rng.index(3));
    SystemType xp = small_aux("X'", 1 + rng.index(3));
    SystemType y = small_aux("Y", 1 + rng.index(3));
    SystemType yp = small_aux("Y'", 1 + rng.index(3));
    Channel phi = sample_extended_member(o.source, x, xp, derive_seed(st, 1));
    Channel sphi = o.eval(x, xp, phi);

    // naturality: f: Y -> X, g: X' -> Y'
    Channel f = random_channel(y, x, 2, derive_seed(st, 2));
    Channel g = random_channel(xp, yp, 2, derive_seed(st, 3));
    Channel lhs = o.eval(y, yp, dress_aux(phi, na, nap, f, g));
    Channel rhs = dress_aux(sphi, nb, nbp, f, g);
    dev_nat[t] = lhs.choi_dist(rhs);

    // dragging: eval(phi (x) psi) = eval(phi) (x) psi
    Channel psi = random_channel(y, yp, 2, derive_seed(st, 4));
    Channel lhs2 = o.eval(x.concat(y), xp.concat(yp), tensor_channels(phi, psi));
    Channel rhs2 = tensor_channels(sphi, psi);
    dev_drag[t] = lhs2.choi_dist(rhs2);

    // combined: f: Y -> X (x) Z, g: X' (x) Z -> Y'
    SystemType z = small_aux("Z", 1 + rng.index(3));
    Channel fc = random_channel(y, x.concat(z), 2, derive_seed(st, 5));
    Channel gc = random_channel(xp.concat(z), yp, 2, derive_seed(st, 6));
    Channel phi_z = tensor_channels(phi, identity_channel(z));
    Channel lhs3 = o.eval(y, yp, dress_aux(phi_z, na, nap, fc, gc));
    Channel sphi_z = tensor_channels(sphi, identity_channel(z));
    Channel rhs3 = dress_aux(sphi_z, nb, nbp, fc, gc);
    dev_comb[t] = lhs3.choi_dist(rhs3);
  }

  for (int t = 0; t < trials; ++t) {
    const std::uint64_t st = derive_seed(seed, static_cast<std::uint64_t>(t));
    rep.naturality.max_deviation =
        std::max(rep.naturality.max_deviation, dev_nat[t]);
    rep.dragging.max_deviation =
        std::max(rep.dragging.max_deviation, dev_drag[t]);
    rep.combined.max_deviation =
        std::max(rep.combined.max_deviation, dev_comb[t]);
    if (dev_nat[t] > kLatTol && !rep.naturality.first_failing_seed)
      rep.naturality.first_failing_seed = st;
    if (dev_drag[t] > kLatTol && !rep.dragging.first_failing_seed)
      rep.dragging.first_failing_seed = st;
    if (dev_comb[t] > kLatTol && !rep.combined.first_failing_seed)
      rep.combined.first_failing_seed = st;
  }
  return rep;
}

LatCheckReport check_convex_linearity(const LatOracle& o, int trials,
                                      std::uint64_t seed) {
  if (!o.source.convex)
    throw std::invalid_argument("check_convex_linearity: source not convex");
  LatCheckReport rep;
  rep.check = "convex_linearity";
  rep.trials = trials;
  std::vector<double> dev(trials);

#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t st = derive_seed(seed, static_cast<std::uint64_t>(t));
    Rng rng(st);
    SystemType x = small_aux("X", 1 + rng.index(3));
    SystemType xp = small_aux("X'", 1 + rng.index(3));
    Channel phi0 = sample_extended_member(o.source, x, xp, derive_seed(st, 1));
    Channel phi1 = sample_extended_member(o.source, x, xp, derive_seed(st, 2));
    Channel s0 = o.eval(x, xp, phi0), s1 = o.eval(x, xp, phi1);
    double worst = 0.0;
    for (double p : {0.25, 0.5, 0.9}) {
      Channel mix = add_channels(phi0, phi1, cx{p}, cx{1.0 - p});
      Channel lhs = o.eval(x, xp, mix);
      Channel rhs = add_channels(s0, s1, cx{p}, cx{1.0 - p});
      worst = std::max(worst, lhs.choi_dist(rhs));
    }
    dev[t] = worst;
  }
  for (int t = 0; t < trials; ++t) {
    rep.max_deviation = std::max(rep.max_deviation, dev[t]);
    if (dev[t] > kLatTol && !rep.first_failing_seed)
      rep.first_failing_seed = derive_seed(seed, static_cast<std::uint64_t>(t));
  }
  return rep;
}

ComplexMatrix extend_to_cp(const LatOracle& o, const CpPresentation& pres) {
  const std::size_t na = o.a.n_factors(), nap = o.ap.n_factors();
  SystemType x = aux_in(pres.phi, na), xp = aux_out(pres.phi, nap);
  Channel e = o.eval(x, xp, pres.phi);
  Channel red = reduce_extended(e, o.b.n_factors(), o.bp.n_factors(), pres.rho,
                                &pres.sigma);
  return red.choi_matrix();
}

ComplexMatrix presented_cp_map(const LatOracle& o, const CpPresentation& pres) {
  const std::size_t na = o.a.n_factors(), nap = o.ap.n_factors();
  Channel red = reduce_extended(pres.phi, na, nap, pres.rho, &pres.sigma);
  return red.choi_matrix();
}

LatOracle adversarial_reduce_oracle(const SystemType& a, const SystemType& ap) {
  LatOracle o;
  o.a = a;
  o.ap = ap;
  o.b = a;
  o.bp = ap;
  o.source = ChannelSetSpec::all(a, ap);
  o.target = ChannelSetSpec::all(a, ap);
  const std::size_t na = a.n_factors(), nap = ap.n_factors();
  o.eval = [na, nap](const SystemType& x, const SystemType& xp,
                     const Channel& phi) {
    const std::size_t dx = x.total_dim(), dxp = xp.total_dim();
    ComplexMatrix avg = ComplexMatrix::identity(dx) * cx{1.0 / double(dx)};
    Channel red = reduce_extended(phi, na, nap, avg, nullptr);
    Channel slot(red.in_type(), red.out_type(), red.choi_matrix(), true);
    if (x.n_factors() == 0 && xp.n_factors() == 0) return slot;
    // rebuild the aux side from nothing: discard X, prepare a fixed state
    ComplexMatrix ground(dxp, dxp);
    ground(0, 0) = 1.0;
    Channel aux = discard_prepare_channel(x, xp, ground);
    return tensor_channels(slot, aux);
  };
  return o;
}

LatOracle adversarial_nonlinear_oracle(const SystemType& a,
                                       const SystemType& ap) {
  LatOracle o;
  o.a = a;
  o.ap = ap;
  o.b = a;
  o.bp = ap;
  o.source = ChannelSetSpec::all(a, ap);
  o.target = ChannelSetSpec::all(a, ap);
  o.eval = [](const SystemType& x, const SystemType& xp, const Channel& phi) {
    const double w = phi.choi_matrix().frob_norm();
    const double d = static_cast<double>(phi.d_in());
    const double p = d / (d + w * w);
    ComplexMatrix mixed =
        ComplexMatrix::identity(phi.d_out()) * cx{1.0 / double(phi.d_out())};
    Channel noise = discard_prepare_channel(phi.in_type(), phi.out_type(),
                                            mixed);
    (void)x;
    (void)xp;
    return add_channels(phi, noise, cx{p}, cx{1.0 - p});
  };
  return o;
}

MultiLatOracle embed_multi(const MultiSupermap& s) {
  MultiLatOracle o;
  o.slots = s.slots;
  o.target = s.target;
  o.eval = [s](const std::vector<SystemType>&, const std::vector<SystemType>&,
               const std::vector<Channel>& phis) {
    return apply_multi_supermap(s, phis);
  };
  return o;
}

LatOracle curry_multi(const MultiLatOracle& o, std::size_t keep,
                      const std::vector<Channel>& fixed) {
  if (keep >= o.slots.size() || fixed.size() != o.slots.size() - 1)
    throw std::invalid_argument("curry_multi: bad arguments");
  LatOracle r;
  r.a = o.slots[keep].base_in;
  r.ap = o.slots[keep].base_out;
  r.b = o.target.base_in;
  r.bp = o.target.base_out;
  r.source = o.slots[keep];
  r.target = o.target;
  auto slots = o.slots;
  auto eval = o.eval;
  r.eval = [slots, eval, keep, fixed](const SystemType& x, const SystemType& xp,
                                      const Channel& phi) {
    std::vector<SystemType> xs, xps;
    std::vector<Channel> phis;
    std::size_t fi = 0;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (i == keep) {
        xs.push_back(x);
        xps.push_back(xp);
        phis.push_back(phi);
      } else {
        xs.push_back(SystemType::trivial());
        xps.push_back(SystemType::trivial());
        phis.push_back(fixed[fi++]);
      }
    }
    return eval(xs, xps, phis);
  };
  return r;
}

MultiSupermap extract_multi(const MultiLatOracle& o) {
  const std::size_t n = o.slots.size();
  std::vector<SystemType> xs, xps;
  std::vector<Channel> swaps;
  for (std::size_t i = 0; i < n; ++i) {
    if (!o.slots[i].convex || !o.slots[i].normal)
      throw std::invalid_argument(
          "extract_multi: slot sets must be normal and convex");
    xs.push_back(o.slots[i].base_out);
    xps.push_back(o.slots[i].base_in);
    swaps.push_back(swap_channel(o.slots[i].base_in, o.slots[i].base_out));
  }
  Channel t = o.eval(xs, xps, swaps);

  const std::size_t nb = o.target.base_in.n_factors(),
                    nbp = o.target.base_out.n_factors();
  if (tp_deviation(t) > kDetTol)
    throw std::invalid_argument("extract_multi: oracle output not deterministic");

  // t: B (x) A1' (x) ... (x) An' -> B' (x) A1 (x) ... (x) An
  std::vector<std::size_t> in_to_out, out_to_in;
  for (std::size_t k = 0; k < nb; ++k) in_to_out.push_back(k);
  std::size_t off = nbp;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < o.slots[i].base_in.n_factors(); ++k)
      out_to_in.push_back(off + k);
    off += o.slots[i].base_in.n_factors();
  }
  Channel bent = bend_channel(t, in_to_out, out_to_in);
  // bent: in = [A1'..An', A1..An], out = [B', B]; regroup in to slot-major
  std::vector<std::size_t> ap_off;
  off = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ap_off.push_back(off);
    off += o.slots[i].base_out.n_factors();
  }
  const std::size_t n_ap_total = off;
  std::vector<std::size_t> a_in_off;
  off = n_ap_total;
  for (std::size_t i = 0; i < n; ++i) {
    a_in_off.push_back(off);
    off += o.slots[i].base_in.n_factors();
  }
  std::vector<std::size_t> iperm, operm;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < o.slots[i].base_in.n_factors(); ++k)
      iperm.push_back(a_in_off[i] + k);
    for (std::size_t k = 0; k < o.slots[i].base_out.n_factors(); ++k)
      iperm.push_back(ap_off[i] + k);
  }
  for (std::size_t k = 0; k < nb; ++k) operm.push_back(nbp + k);
  for (std::size_t k = 0; k < nbp; ++k) operm.push_back(k);
  Channel grouped = permute_channel_factors(bent, iperm, operm);

  SystemType expect_in;
  for (const auto& k : o.slots)
    expect_in = expect_in.concat(k.base_in).concat(k.base_out);
  Channel cp(expect_in, o.target.base_in.concat(o.target.base_out),
             grouped.choi_matrix(), false);
  return make_multi_supermap(std::move(cp), o.slots, o.target);
}

}  // namespace hoq
