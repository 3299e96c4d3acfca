#include "hoq/classical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hoq::classical {

namespace {

constexpr double kClTol = 1e-10;

std::string in_wire(std::size_t k) { return "i" + std::to_string(k); }
std::string out_wire(std::size_t k) { return "o" + std::to_string(k); }

std::vector<Leg> channel_legs(const SystemType& in, const SystemType& out) {
  std::vector<Leg> legs;
  for (std::size_t k = 0; k < in.n_factors(); ++k)
    legs.push_back({in_wire(k), in.factors()[k].dim, Pol::In});
  for (std::size_t k = 0; k < out.n_factors(); ++k)
    legs.push_back({out_wire(k), out.factors()[k].dim, Pol::Out});
  return legs;
}

RTensor canonical_wire_order(const SystemType& in, const SystemType& out,
                             const RTensor& t) {
  std::vector<std::string> ins, outs;
  for (std::size_t k = 0; k < in.n_factors(); ++k) ins.push_back(in_wire(k));
  for (std::size_t k = 0; k < out.n_factors(); ++k)
    outs.push_back(out_wire(k));
  return t.with_leg_order(ins, outs);
}

StochChannel from_tensor(const SystemType& in, const SystemType& out,
                         const RTensor& t) {
  StochChannel c;
  c.in_type = in;
  c.out_type = out;
  c.t = canonical_wire_order(in, out, t);
  c.deterministic = cl_tp_deviation(c) <= kClTol;
  return c;
}

}  // namespace

bool is_nonneg(const RealMatrix& m, double tol) {
  for (const auto& v : m.entries())
    if (v < -tol) return false;
  return true;
}

double stochastic_deviation(const RealMatrix& m) {
  double dev = 0.0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      s += m(r, c);
      dev = std::max(dev, std::max(0.0, -m(r, c)));
    }
    dev = std::max(dev, std::abs(s - 1.0));
  }
  return dev;
}

bool is_stochastic(const RealMatrix& m, double tol) {
  return stochastic_deviation(m) <= tol;
}

RealMatrix random_stochastic(std::size_t rows, std::size_t cols,
                             std::uint64_t seed) {
  Rng rng(seed);
  RealMatrix m(rows, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      const double g = rng.gauss();
      m(r, c) = g * g;
      s += m(r, c);
    }
    for (std::size_t r = 0; r < rows; ++r) m(r, c) /= s;
  }
  return m;
}

RealMatrix StochChannel::matrix() const {
  return t.mat().transpose();
}

double StochChannel::dist(const StochChannel& o) const {
  return t.frob_dist(o.t);
}

StochChannel make_stoch_channel(const SystemType& in, const SystemType& out,
                                const RealMatrix& m) {
  if (m.rows() != out.total_dim() || m.cols() != in.total_dim())
    throw std::invalid_argument("make_stoch_channel: shape mismatch");
  return from_tensor(in, out, RTensor(channel_legs(in, out), m.transpose()));
}

StochChannel cl_identity(const SystemType& type) {
  return make_stoch_channel(type, type,
                            RealMatrix::identity(type.total_dim()));
}

StochChannel cl_discard(const SystemType& type) {
  RealMatrix ones(1, type.total_dim());
  for (std::size_t c = 0; c < type.total_dim(); ++c) ones(0, c) = 1.0;
  return make_stoch_channel(type, SystemType::trivial(), ones);
}

StochChannel cl_prepare(const SystemType& type, const RealMatrix& dist) {
  if (dist.rows() != type.total_dim() || dist.cols() != 1)
    throw std::invalid_argument("cl_prepare: distribution shape mismatch");
  return make_stoch_channel(SystemType::trivial(), type, dist);
}

StochChannel cl_discard_prepare(const SystemType& in, const SystemType& out,
                                const RealMatrix& dist) {
  return cl_compose(cl_prepare(out, dist), cl_discard(in));
}

StochChannel cl_swap(const SystemType& a, const SystemType& b) {
  const std::size_t da = a.total_dim(), db = b.total_dim();
  RealMatrix m(da * db, da * db);
  for (std::size_t x = 0; x < da; ++x)
    for (std::size_t y = 0; y < db; ++y) m(y * da + x, x * db + y) = 1.0;
  return make_stoch_channel(a.concat(b), b.concat(a), m);
}

RealMatrix cl_apply(const StochChannel& c, const RealMatrix& v) {
  return c.matrix() * v;
}

StochChannel cl_compose(const StochChannel& second, const StochChannel& first) {
  if (!first.out_type.same_dims(second.in_type))
    throw std::invalid_argument("cl_compose: intermediate type mismatch");
  const std::size_t nm = first.out_type.n_factors();
  std::vector<std::pair<std::string, std::string>> r1, r2;
  std::vector<std::string> mids;
  for (std::size_t k = 0; k < nm; ++k) {
    const std::string m = "m" + std::to_string(k);
    r1.emplace_back(out_wire(k), m);
    r2.emplace_back(in_wire(k), m);
    mids.push_back(m);
  }
  RTensor out = contract(first.t.relabeled(r1), second.t.relabeled(r2), mids);
  return from_tensor(first.in_type, second.out_type, out);
}

StochChannel cl_tensor(const StochChannel& a, const StochChannel& b) {
  std::vector<std::pair<std::string, std::string>> tmp1, tmp2;
  for (std::size_t k = 0; k < b.in_type.n_factors(); ++k) {
    tmp1.emplace_back(in_wire(k), "#t" + std::to_string(k));
    tmp2.emplace_back("#t" + std::to_string(k),
                      in_wire(a.in_type.n_factors() + k));
  }
  for (std::size_t k = 0; k < b.out_type.n_factors(); ++k) {
    tmp1.emplace_back(out_wire(k), "#u" + std::to_string(k));
    tmp2.emplace_back("#u" + std::to_string(k),
                      out_wire(a.out_type.n_factors() + k));
  }
  RTensor bt = b.t.relabeled(tmp1).relabeled(tmp2);
  return from_tensor(a.in_type.concat(b.in_type),
                     a.out_type.concat(b.out_type),
                     tensor_product(a.t, bt));
}

StochChannel cl_add(const StochChannel& a, const StochChannel& b, double wa,
                    double wb) {
  if (!a.in_type.same_dims(b.in_type) || !a.out_type.same_dims(b.out_type))
    throw std::invalid_argument("cl_add: type mismatch");
  RTensor t = a.t * wa + b.t.aligned_to(a.t) * wb;
  return from_tensor(a.in_type, a.out_type, t);
}

double cl_tp_deviation(const StochChannel& c) {
  // all-ones effect on every output wire
  RTensor t = c.t;
  for (std::size_t k = 0; k < c.out_type.n_factors(); ++k) {
    const std::size_t d = c.out_type.factors()[k].dim;
    RealMatrix ones(d, 1);
    for (std::size_t i = 0; i < d; ++i) ones(i, 0) = 1.0;
    RTensor eff({{out_wire(k), d, Pol::In}}, ones);
    t = contract(t, eff, {out_wire(k)});
  }
  if (c.in_type.n_factors() == 0) return std::abs(t.scalar_value() - 1.0);
  RealMatrix ones_in(c.d_in(), 1);
  for (std::size_t i = 0; i < c.d_in(); ++i) ones_in(i, 0) = 1.0;
  std::vector<std::string> ins;
  for (std::size_t k = 0; k < c.in_type.n_factors(); ++k)
    ins.push_back(in_wire(k));
  std::vector<std::string> empty;
  return t.with_leg_order(ins, empty).mat().frob_dist(ones_in);
}

double cl_signaling_deviation(const StochChannel& c, const ClRelation& rel) {
  const auto& in_f = c.in_type.factors();
  const auto& out_f = c.out_type.factors();
  if (rel.in_parties.size() != in_f.size() ||
      rel.out_parties.size() != out_f.size())
    throw std::invalid_argument("cl_signaling: partition mismatch");
  auto find = [](const std::vector<SysFactor>& fs, const std::string& l) {
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (fs[i].label == l) return i;
    throw std::invalid_argument("cl_signaling: unknown party " + l);
  };
  double dev = 0.0;
  for (const auto& [from, to] : rel.forbidden) {
    const std::size_t b_idx = find(in_f, from);
    const std::size_t ap_idx = find(out_f, to);
    const std::size_t d_b = in_f[b_idx].dim;
    RTensor d = c.t;
    for (std::size_t k = 0; k < out_f.size(); ++k) {
      if (k == ap_idx) continue;
      RealMatrix ones(out_f[k].dim, 1);
      for (std::size_t i = 0; i < out_f[k].dim; ++i) ones(i, 0) = 1.0;
      RTensor eff({{out_wire(k), out_f[k].dim, Pol::In}}, ones);
      d = contract(d, eff, {out_wire(k)});
    }
    // sum over the b input, compare with the uniform reconstruction
    RealMatrix ones_b(d_b, 1);
    for (std::size_t i = 0; i < d_b; ++i) ones_b(i, 0) = 1.0;
    RTensor unit_b({{in_wire(b_idx), d_b, Pol::Out}}, ones_b.transpose());
    RTensor e = contract(unit_b, d, {in_wire(b_idx)});
    e *= 1.0 / static_cast<double>(d_b);
    RTensor ones_row({{in_wire(b_idx), d_b, Pol::In}},
                     RealMatrix(d_b, 1, std::vector<double>(d_b, 1.0)));
    RTensor candidate = tensor_product(e, ones_row);
    dev = std::max(dev, candidate.frob_dist(d));
  }
  return dev;
}

bool cl_check_signaling(const StochChannel& c, const ClRelation& rel,
                        double tol) {
  return cl_signaling_deviation(c, rel) <= tol;
}

StochChannel cl_control_channel(const StochChannel& phi0,
                                const StochChannel& phi1,
                                std::size_t control_dim) {
  if (control_dim < 2)
    throw std::invalid_argument(
        "cl_control_channel: control requires at least two states");
  if (!phi0.in_type.same_dims(phi1.in_type) ||
      !phi0.out_type.same_dims(phi1.out_type))
    throw std::invalid_argument("cl_control_channel: slot type mismatch");
  const SystemType y = SystemType::single("Y", control_dim);
  // branch i reprepares basis state i; effect 0 reads value 0, effect 1
  // absorbs everything else so the two effects form a measurement
  auto branch = [&](const StochChannel& phi, std::size_t i) {
    RealMatrix m(control_dim, control_dim);
    for (std::size_t c = 0; c < control_dim; ++c)
      if ((c == 0 ? 0u : 1u) == i) m(i, c) = 1.0;
    return cl_tensor(phi, make_stoch_channel(y, y, m));
  };
  return cl_add(branch(phi0, 0), branch(phi1, 1), 1.0, 1.0);
}

ClSetSpec ClSetSpec::all(SystemType in, SystemType out) {
  ClSetSpec k;
  k.base_in = std::move(in);
  k.base_out = std::move(out);
  return k;
}

StochChannel cl_sample_member(const ClSetSpec& k, std::uint64_t seed) {
  if (!k.non_signaling)
    return make_stoch_channel(
        k.base_in, k.base_out,
        random_stochastic(k.base_out.total_dim(), k.base_in.total_dim(), seed));
  StochChannel c = make_stoch_channel(
      SystemType({k.base_in.factors()[0]}), SystemType({k.base_out.factors()[0]}),
      random_stochastic(k.base_out.factors()[0].dim, k.base_in.factors()[0].dim,
                        derive_seed(seed, 1)));
  for (std::size_t p = 1; p < k.base_in.n_factors(); ++p)
    c = cl_tensor(c, make_stoch_channel(
                         SystemType({k.base_in.factors()[p]}),
                         SystemType({k.base_out.factors()[p]}),
                         random_stochastic(k.base_out.factors()[p].dim,
                                           k.base_in.factors()[p].dim,
                                           derive_seed(seed, 1 + p))));
  return StochChannel{k.base_in, k.base_out,
                      canonical_wire_order(k.base_in, k.base_out, c.t), true};
}

StochChannel cl_sample_extended_member(const ClSetSpec& k, const SystemType& x,
                                       const SystemType& xp,
                                       std::uint64_t seed) {
  Rng rng(seed);
  const int variant = static_cast<int>(rng.index(3));
  auto base = [&](std::uint64_t s) {
    StochChannel m = cl_sample_member(k, derive_seed(s, 1));
    if (x.n_factors() == 0 && xp.n_factors() == 0) return m;
    StochChannel aux = make_stoch_channel(
        x, xp, random_stochastic(xp.total_dim(), x.total_dim(),
                                 derive_seed(s, 2)));
    return cl_tensor(m, aux);
  };
  if (variant == 1) {
    StochChannel a = base(derive_seed(seed, 10)),
                 b = base(derive_seed(seed, 11));
    const double p = rng.uniform();
    return cl_add(a, b, p, 1.0 - p);
  }
  if (variant == 2 && x.n_factors() > 0 && xp.n_factors() > 0) {
    const std::size_t dz = 1 + rng.index(3), dzp = 1 + rng.index(3);
    SystemType z = SystemType::single("Z", dz),
               zp = SystemType::single("Z'", dzp);
    StochChannel core =
        cl_tensor(cl_sample_member(k, derive_seed(seed, 30)),
                  make_stoch_channel(z, zp,
                                     random_stochastic(dzp, dz,
                                                       derive_seed(seed, 31))));
    StochChannel f = make_stoch_channel(
        x, z, random_stochastic(dz, x.total_dim(), derive_seed(seed, 32)));
    StochChannel g = make_stoch_channel(
        zp, xp, random_stochastic(xp.total_dim(), dzp, derive_seed(seed, 33)));
    StochChannel pre = cl_tensor(cl_identity(k.base_in), f);
    StochChannel post = cl_tensor(cl_identity(k.base_out), g);
    return cl_compose(post, cl_compose(core, pre));
  }
  return base(derive_seed(seed, 40));
}

StochSupermap cl_make_supermap(StochChannel cp, ClSetSpec source,
                               ClSetSpec target) {
  if (!cp.in_type.same_dims(source.base_in.concat(source.base_out)) ||
      !cp.out_type.same_dims(target.base_in.concat(target.base_out)))
    throw std::invalid_argument("cl_make_supermap: leg mismatch");
  return StochSupermap{std::move(cp), std::move(source), std::move(target)};
}

StochSupermap cl_identity_supermap(const SystemType& a, const SystemType& ap) {
  return cl_make_supermap(cl_identity(a.concat(ap)), ClSetSpec::all(a, ap),
                          ClSetSpec::all(a, ap));
}

StochChannel cl_apply_supermap(const StochSupermap& s, const StochChannel& phi) {
  const std::size_t na = s.source.base_in.n_factors(),
                    nap = s.source.base_out.n_factors();
  if (!s.source.base_in.dims_prefix_of(phi.in_type) ||
      !s.source.base_out.dims_prefix_of(phi.out_type))
    throw std::invalid_argument("cl_apply_supermap: leg mismatch");
  const std::size_t nx = phi.in_type.n_factors() - na;
  const std::size_t nxp = phi.out_type.n_factors() - nap;
  const std::size_t nb = s.target.base_in.n_factors(),
                    nbp = s.target.base_out.n_factors();

  std::vector<std::pair<std::string, std::string>> rphi, rs;
  std::vector<std::string> slot, flips;
  for (std::size_t k = 0; k < na; ++k) {
    rphi.emplace_back(in_wire(k), "sa" + std::to_string(k));
    rs.emplace_back(in_wire(k), "sa" + std::to_string(k));
    slot.push_back("sa" + std::to_string(k));
    flips.push_back("sa" + std::to_string(k));
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
  for (std::size_t k = 0; k < nb; ++k)
    rs.emplace_back(out_wire(k), "tb" + std::to_string(k));
  for (std::size_t k = 0; k < nbp; ++k)
    rs.emplace_back(out_wire(nb + k), "tc" + std::to_string(k));

  // bend the slot input legs out, feed them into the supermap body
  RTensor phit = flip_polarity(phi.t.relabeled(rphi), flips);
  RTensor st = s.cp.t.relabeled(rs);
  RTensor out = contract(phit, st, slot);

  std::vector<std::pair<std::string, std::string>> back;
  std::vector<std::string> unflips;
  for (std::size_t k = 0; k < nb; ++k) {
    back.emplace_back("tb" + std::to_string(k), in_wire(k));
    unflips.push_back(in_wire(k));
  }
  for (std::size_t k = 0; k < nx; ++k)
    back.emplace_back("x" + std::to_string(k), in_wire(nb + k));
  for (std::size_t k = 0; k < nbp; ++k)
    back.emplace_back("tc" + std::to_string(k), out_wire(k));
  for (std::size_t k = 0; k < nxp; ++k)
    back.emplace_back("y" + std::to_string(k), out_wire(nbp + k));
  out = flip_polarity(out.relabeled(back), unflips);

  SystemType in_t = s.target.base_in.concat(
      phi.in_type.slice(na, phi.in_type.n_factors()));
  SystemType out_t = s.target.base_out.concat(
      phi.out_type.slice(nap, phi.out_type.n_factors()));
  return from_tensor(in_t, out_t, out);
}

ClComb cl_make_comb(StochChannel pre, StochChannel post,
                    std::size_t n_env_factors) {
  ClComb c;
  c.env = pre.out_type.slice(0, n_env_factors);
  if (!c.env.same_dims(post.in_type.slice(0, n_env_factors)))
    throw std::invalid_argument("cl_make_comb: environment mismatch");
  c.a_in = pre.out_type.slice(n_env_factors, pre.out_type.n_factors());
  c.a_out = post.in_type.slice(n_env_factors, post.in_type.n_factors());
  c.b_in = pre.in_type;
  c.b_out = post.out_type;
  c.pre = std::move(pre);
  c.post = std::move(post);
  return c;
}

ClComb cl_random_comb(const SystemType& a, const SystemType& ap,
                      const SystemType& b, const SystemType& bp,
                      std::size_t env_dim, std::uint64_t seed) {
  SystemType env = SystemType::single("E", env_dim);
  StochChannel pre = make_stoch_channel(
      b, env.concat(a),
      random_stochastic(env_dim * a.total_dim(), b.total_dim(),
                        derive_seed(seed, 1)));
  StochChannel post = make_stoch_channel(
      env.concat(ap), bp,
      random_stochastic(bp.total_dim(), env_dim * ap.total_dim(),
                        derive_seed(seed, 2)));
  return cl_make_comb(pre, post, 1);
}

StochChannel cl_apply_comb(const ClComb& c, const StochChannel& phi) {
  SystemType x = phi.in_type.slice(c.a_in.n_factors(), phi.in_type.n_factors());
  SystemType xp =
      phi.out_type.slice(c.a_out.n_factors(), phi.out_type.n_factors());
  StochChannel stage1 = cl_tensor(c.pre, cl_identity(x));
  StochChannel stage2 = cl_tensor(cl_identity(c.env), phi);
  StochChannel stage3 = cl_tensor(c.post, cl_identity(xp));
  return cl_compose(stage3, cl_compose(stage2, stage1));
}

StochSupermap cl_comb_to_supermap(const ClComb& c) {
  // bend pre: B -> E (x) A into A* -> B* (x) E
  const std::size_t ne = c.env.n_factors(), nb = c.b_in.n_factors();
  const std::size_t na = c.a_in.n_factors();
  std::vector<std::pair<std::string, std::string>> ren;
  std::vector<std::string> flips;
  for (std::size_t k = 0; k < nb; ++k) {
    ren.emplace_back(in_wire(k), "#bs" + std::to_string(k));
    flips.push_back("#bs" + std::to_string(k));
  }
  for (std::size_t k = 0; k < na; ++k) {
    ren.emplace_back(out_wire(ne + k), "#as" + std::to_string(k));
    flips.push_back("#as" + std::to_string(k));
  }
  RTensor bent = flip_polarity(c.pre.t.relabeled(ren), flips);
  // legs now: In {#as...}, Out {#bs..., env o0..o_{ne-1}}
  std::vector<std::pair<std::string, std::string>> fin;
  for (std::size_t k = 0; k < na; ++k)
    fin.emplace_back("#as" + std::to_string(k), in_wire(k));
  for (std::size_t k = 0; k < nb; ++k)
    fin.emplace_back("#bs" + std::to_string(k), out_wire(k));
  for (std::size_t k = 0; k < ne; ++k)
    fin.emplace_back(out_wire(k), out_wire(nb + k));
  bent = bent.relabeled(fin);
  SystemType astar = c.a_in, bstar = c.b_in;
  StochChannel ptil = from_tensor(astar, bstar.concat(c.env), bent);

  StochChannel stage1 = cl_tensor(ptil, cl_identity(c.a_out));
  StochChannel stage2 = cl_tensor(cl_identity(bstar), c.post);
  return cl_make_supermap(cl_compose(stage2, stage1),
                          ClSetSpec::all(c.a_in, c.a_out),
                          ClSetSpec::all(c.b_in, c.b_out));
}

ClOracle cl_embed(const StochSupermap& s) {
  ClOracle o;
  o.a = s.source.base_in;
  o.ap = s.source.base_out;
  o.b = s.target.base_in;
  o.bp = s.target.base_out;
  o.source = s.source;
  o.target = s.target;
  o.eval = [s](const SystemType&, const SystemType&, const StochChannel& phi) {
    return cl_apply_supermap(s, phi);
  };
  return o;
}

StochSupermap cl_extract(const ClOracle& o) {
  StochChannel swp = cl_swap(o.a, o.ap);
  StochChannel t = o.eval(o.ap, o.a, swp);
  const std::size_t na = o.a.n_factors(), nap = o.ap.n_factors();
  const std::size_t nb = o.b.n_factors(), nbp = o.bp.n_factors();
  if (cl_tp_deviation(t) > 1e-8)
    throw std::invalid_argument("cl_extract: oracle output not deterministic");

  // t: B (x) A' -> B' (x) A; bend B up and A down
  std::vector<std::pair<std::string, std::string>> ren;
  std::vector<std::string> flips;
  for (std::size_t k = 0; k < nb; ++k) {
    ren.emplace_back(in_wire(k), "#bs" + std::to_string(k));
    flips.push_back("#bs" + std::to_string(k));
  }
  for (std::size_t k = 0; k < na; ++k) {
    ren.emplace_back(out_wire(nbp + k), "#as" + std::to_string(k));
    flips.push_back("#as" + std::to_string(k));
  }
  RTensor bent = flip_polarity(t.t.relabeled(ren), flips);
  std::vector<std::pair<std::string, std::string>> fin;
  for (std::size_t k = 0; k < na; ++k)
    fin.emplace_back("#as" + std::to_string(k), in_wire(k));
  for (std::size_t k = 0; k < nap; ++k)
    fin.emplace_back(in_wire(nb + k), in_wire(na + k));
  for (std::size_t k = 0; k < nb; ++k)
    fin.emplace_back("#bs" + std::to_string(k), out_wire(k));
  for (std::size_t k = 0; k < nbp; ++k)
    fin.emplace_back(out_wire(k), out_wire(nb + k));
  bent = bent.relabeled(fin);
  StochChannel cp = from_tensor(o.a.concat(o.ap), o.b.concat(o.bp), bent);
  return cl_make_supermap(std::move(cp), o.source, o.target);
}

ClCheckReport cl_check_local_applicability(const ClOracle& o, int trials,
                                           std::uint64_t seed) {
  ClCheckReport rep;
  rep.check = "cl_local_applicability";
  rep.trials = trials;
  const std::size_t na = o.a.n_factors(), nap = o.ap.n_factors();
  const std::size_t nb = o.b.n_factors(), nbp = o.bp.n_factors();
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t st = derive_seed(seed, static_cast<std::uint64_t>(t));
    Rng rng(st);
    auto aux = [&](const std::string& l, std::size_t d) {
      return d == 1 ? SystemType::trivial() : SystemType::single(l, d);
    };
    SystemType x = aux("X", 1 + rng.index(3)), xp = aux("X'", 1 + rng.index(3));
    SystemType y = aux("Y", 1 + rng.index(3)), yp = aux("Y'", 1 + rng.index(3));
    StochChannel phi = cl_sample_extended_member(o.source, x, xp,
                                                 derive_seed(st, 1));
    StochChannel sphi = o.eval(x, xp, phi);
    StochChannel f = make_stoch_channel(
        y, x, random_stochastic(x.total_dim(), y.total_dim(),
                                derive_seed(st, 2)));
    StochChannel g = make_stoch_channel(
        xp, yp, random_stochastic(yp.total_dim(), xp.total_dim(),
                                  derive_seed(st, 3)));
    auto dress = [&](const StochChannel& c, std::size_t ni, std::size_t no) {
      StochChannel pre = cl_tensor(cl_identity(c.in_type.slice(0, ni)), f);
      StochChannel post = cl_tensor(cl_identity(c.out_type.slice(0, no)), g);
      return cl_compose(post, cl_compose(c, pre));
    };
    StochChannel lhs = o.eval(y, yp, dress(phi, na, nap));
    StochChannel rhs = dress(sphi, nb, nbp);
    double dev = lhs.dist(rhs);
    // dragging
    StochChannel psi = make_stoch_channel(
        y, yp, random_stochastic(yp.total_dim(), y.total_dim(),
                                 derive_seed(st, 4)));
    StochChannel lhs2 = o.eval(x.concat(y), xp.concat(yp),
                               cl_tensor(phi, psi));
    StochChannel rhs2 = cl_tensor(sphi, psi);
    dev = std::max(dev, lhs2.dist(rhs2));
    rep.max_deviation = std::max(rep.max_deviation, dev);
    if (dev > 1e-9 && !rep.first_failing_seed) rep.first_failing_seed = st;
  }
  return rep;
}

ClCheckReport cl_check_convex_linearity(const ClOracle& o, int trials,
                                        std::uint64_t seed) {
  ClCheckReport rep;
  rep.check = "cl_convex_linearity";
  rep.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t st = derive_seed(seed, static_cast<std::uint64_t>(t));
    Rng rng(st);
    auto aux = [&](const std::string& l, std::size_t d) {
      return d == 1 ? SystemType::trivial() : SystemType::single(l, d);
    };
    SystemType x = aux("X", 1 + rng.index(3)), xp = aux("X'", 1 + rng.index(3));
    StochChannel phi0 = cl_sample_extended_member(o.source, x, xp,
                                                  derive_seed(st, 1));
    StochChannel phi1 = cl_sample_extended_member(o.source, x, xp,
                                                  derive_seed(st, 2));
    StochChannel s0 = o.eval(x, xp, phi0), s1 = o.eval(x, xp, phi1);
    for (double p : {0.25, 0.5, 0.9}) {
      StochChannel lhs = o.eval(x, xp, cl_add(phi0, phi1, p, 1.0 - p));
      StochChannel rhs = cl_add(s0, s1, p, 1.0 - p);
      const double dev = lhs.dist(rhs);
      rep.max_deviation = std::max(rep.max_deviation, dev);
      if (dev > 1e-9 && !rep.first_failing_seed) rep.first_failing_seed = st;
    }
  }
  return rep;
}

std::pair<double, RealMatrix> effect_completion(const RealMatrix& sigma) {
  if (sigma.rows() != 1)
    throw std::invalid_argument("effect_completion: expected a row vector");
  double mx = 0.0;
  for (const auto& v : sigma.entries()) {
    if (v < 0) throw std::invalid_argument("effect_completion: negative entry");
    mx = std::max(mx, v);
  }
  if (mx == 0.0) return {1.0, RealMatrix(1, sigma.cols(),
                                         std::vector<double>(sigma.cols(), 1.0))};
  const double lambda = 1.0 / mx;
  RealMatrix rest(1, sigma.cols());
  for (std::size_t c = 0; c < sigma.cols(); ++c)
    rest(0, c) = 1.0 - lambda * sigma(0, c);
  return {lambda, rest};
}

}  // namespace hoq::classical
