#include "hoq/channel.hpp"

#include <algorithm>
#include <stdexcept>

namespace hoq {

std::string in_wire(std::size_t k) { return "i" + std::to_string(k); }
std::string out_wire(std::size_t k) { return "o" + std::to_string(k); }

namespace {

// Canonical leg order for a channel Choi tensor: kets of all wires (inputs
// then outputs), then bras in the same order.
CTensor canonical_choi(const SystemType& in, const SystemType& out,
                       const CTensor& t) {
  std::vector<std::string> order;
  for (std::size_t k = 0; k < in.n_factors(); ++k) order.push_back(in_wire(k));
  for (std::size_t k = 0; k < out.n_factors(); ++k)
    order.push_back(out_wire(k));
  return t.with_leg_order(order, order);
}

std::vector<Leg> choi_legs(const SystemType& in, const SystemType& out) {
  std::vector<Leg> legs;
  for (std::size_t k = 0; k < in.n_factors(); ++k)
    legs.push_back({in_wire(k), in.factors()[k].dim, Pol::In});
  for (std::size_t k = 0; k < out.n_factors(); ++k)
    legs.push_back({out_wire(k), out.factors()[k].dim, Pol::In});
  for (std::size_t k = 0; k < in.n_factors(); ++k)
    legs.push_back({in_wire(k), in.factors()[k].dim, Pol::Out});
  for (std::size_t k = 0; k < out.n_factors(); ++k)
    legs.push_back({out_wire(k), out.factors()[k].dim, Pol::Out});
  return legs;
}

}  // namespace

CTensor op_tensor(const ComplexMatrix& m,
                  const std::vector<std::pair<std::string, std::size_t>>& wires) {
  std::vector<Leg> legs;
  std::size_t d = 1;
  for (const auto& [label, dim] : wires) {
    legs.push_back({label, dim, Pol::In});
    d *= dim;
  }
  for (const auto& [label, dim] : wires) legs.push_back({label, dim, Pol::Out});
  if (m.rows() != d || m.cols() != d)
    throw std::invalid_argument("op_tensor: matrix does not match wire dims");
  return CTensor(std::move(legs), m);
}

Channel::Channel(SystemType in_type, SystemType out_type, CTensor choi,
                 bool deterministic)
    : in_type_(std::move(in_type)),
      out_type_(std::move(out_type)),
      choi_(canonical_choi(in_type_, out_type_, choi)),
      deterministic_(deterministic) {
  for (std::size_t k = 0; k < in_type_.n_factors(); ++k) {
    auto leg = choi_.find(in_wire(k), Pol::In);
    if (!leg || choi_.legs()[*leg].dim != in_type_.factors()[k].dim)
      throw std::invalid_argument("Channel: choi legs do not match in type");
  }
  for (std::size_t k = 0; k < out_type_.n_factors(); ++k) {
    auto leg = choi_.find(out_wire(k), Pol::In);
    if (!leg || choi_.legs()[*leg].dim != out_type_.factors()[k].dim)
      throw std::invalid_argument("Channel: choi legs do not match out type");
  }
}

Channel::Channel(SystemType in_type, SystemType out_type,
                 const ComplexMatrix& choi, bool deterministic)
    : in_type_(std::move(in_type)),
      out_type_(std::move(out_type)),
      choi_(choi_legs(in_type_, out_type_), choi),
      deterministic_(deterministic) {}

Channel choi_from_kraus(const SystemType& in_type, const SystemType& out_type,
                        const std::vector<ComplexMatrix>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("choi_from_kraus: no Kraus ops");
  const std::size_t din = in_type.total_dim(), dout = out_type.total_dim();
  for (const auto& k : kraus)
    if (k.rows() != dout || k.cols() != din)
      throw std::invalid_argument("choi_from_kraus: Kraus shape mismatch");

  // C[(i,k),(j,b)] = sum_s K_s[k,i] conj(K_s[b,j])
  ComplexMatrix c(din * dout, din * dout);
  for (const auto& ks : kraus)
    for (std::size_t i = 0; i < din; ++i)
      for (std::size_t k = 0; k < dout; ++k)
        for (std::size_t j = 0; j < din; ++j)
          for (std::size_t b = 0; b < dout; ++b)
            c(i * dout + k, j * dout + b) += ks(k, i) * std::conj(ks(b, j));

  ComplexMatrix acc(din, din);
  for (const auto& ks : kraus) acc += ks.dagger() * ks;
  const bool det = acc.frob_dist(ComplexMatrix::identity(din)) <= 1e-10;
  return Channel(in_type, out_type, c, det);
}

Channel identity_channel(const SystemType& type) {
  return choi_from_kraus(type, type,
                         {ComplexMatrix::identity(type.total_dim())});
}

Channel unitary_channel(const SystemType& in_type, const SystemType& out_type,
                        const ComplexMatrix& u) {
  return choi_from_kraus(in_type, out_type, {u});
}

Channel discard_channel(const SystemType& type) {
  const std::size_t d = type.total_dim();
  std::vector<ComplexMatrix> kraus;
  for (std::size_t i = 0; i < d; ++i) {
    ComplexMatrix k(1, d);
    k(0, i) = 1.0;
    kraus.push_back(k);
  }
  return choi_from_kraus(type, SystemType::trivial(), kraus);
}

Channel prepare_channel(const SystemType& type, const ComplexMatrix& state) {
  const std::size_t d = type.total_dim();
  if (state.rows() != d || state.cols() != d)
    throw std::invalid_argument("prepare_channel: state dim mismatch");
  return Channel(SystemType::trivial(), type, state, std::abs(state.trace() - cx{1.0}) <= 1e-10);
}

Channel discard_prepare_channel(const SystemType& in_type,
                                const SystemType& out_type,
                                const ComplexMatrix& state) {
  return compose(prepare_channel(out_type, state), discard_channel(in_type));
}

Channel swap_channel(const SystemType& a, const SystemType& b) {
  const std::size_t da = a.total_dim(), db = b.total_dim();
  ComplexMatrix u(da * db, da * db);
  for (std::size_t x = 0; x < da; ++x)
    for (std::size_t y = 0; y < db; ++y) u(y * da + x, x * db + y) = 1.0;
  return unitary_channel(a.concat(b), b.concat(a), u);
}

ComplexMatrix apply_channel(const Channel& c, const ComplexMatrix& rho) {
  if (rho.rows() != c.d_in() || rho.cols() != c.d_in())
    throw std::invalid_argument("apply: state dim mismatch");
  std::vector<std::pair<std::string, std::size_t>> wires;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < c.in_type().n_factors(); ++k) {
    wires.emplace_back(in_wire(k), c.in_type().factors()[k].dim);
    labels.push_back(in_wire(k));
  }
  CTensor rho_t = op_tensor(rho, wires);
  CTensor out = contract(partial_transpose(rho_t, labels), c.choi(), labels);
  std::vector<std::string> order;
  for (std::size_t k = 0; k < c.out_type().n_factors(); ++k)
    order.push_back(out_wire(k));
  return out.with_leg_order(order, order).mat();
}

ChannelReport is_channel(const Channel& c, double tol) {
  ChannelReport r;
  r.min_eig = min_hermitian_eig(c.choi_matrix());
  r.cp = hermitian_check(c.choi_matrix(), tol) && r.min_eig >= -tol;
  std::vector<std::string> outs;
  for (std::size_t k = 0; k < c.out_type().n_factors(); ++k)
    outs.push_back(out_wire(k));
  CTensor red = partial_trace(c.choi(), outs);
  std::vector<std::string> ins;
  for (std::size_t k = 0; k < c.in_type().n_factors(); ++k)
    ins.push_back(in_wire(k));
  r.tp_deviation = red.with_leg_order(ins, ins).mat().frob_dist(
      ComplexMatrix::identity(c.d_in()));
  r.tp = r.tp_deviation <= tol;
  return r;
}

Channel random_channel(const SystemType& in_type, const SystemType& out_type,
                       std::size_t env_dim, std::uint64_t seed) {
  if (env_dim < 1) env_dim = 1;
  const std::size_t din = in_type.total_dim(), dout = out_type.total_dim();
  while (dout * env_dim < din) ++env_dim;
  Rng rng(seed);
  ComplexMatrix v = random_isometry(dout * env_dim, din, rng);
  // Kraus ops K_e[k,i] = V[(k,e),i]
  std::vector<ComplexMatrix> kraus(env_dim, ComplexMatrix(dout, din));
  for (std::size_t k = 0; k < dout; ++k)
    for (std::size_t e = 0; e < env_dim; ++e)
      for (std::size_t i = 0; i < din; ++i)
        kraus[e](k, i) = v(k * env_dim + e, i);
  Channel c = choi_from_kraus(in_type, out_type, kraus);
  c.set_deterministic(true);
  return c;
}

Channel compose(const Channel& second, const Channel& first) {
  if (first.out_type().total_dim() != second.in_type().total_dim() ||
      !first.out_type().same_dims(second.in_type()))
    throw std::invalid_argument("compose: intermediate type mismatch");
  const std::size_t nm = first.out_type().n_factors();
  std::vector<std::pair<std::string, std::string>> r1, r2;
  std::vector<std::string> mids;
  for (std::size_t k = 0; k < nm; ++k) {
    const std::string m = "m" + std::to_string(k);
    r1.emplace_back(out_wire(k), m);
    r2.emplace_back(in_wire(k), m);
    mids.push_back(m);
  }
  CTensor t1 = first.choi().relabeled(r1);
  CTensor t2 = second.choi().relabeled(r2);
  CTensor out = contract(partial_transpose(t1, mids), t2, mids);
  return Channel(first.in_type(), second.out_type(), out,
                 first.deterministic() && second.deterministic());
}

Channel tensor_channels(const Channel& a, const Channel& b) {
  const std::size_t nia = a.in_type().n_factors(),
                    noa = a.out_type().n_factors();
  std::vector<std::pair<std::string, std::string>> rb;
  for (std::size_t k = 0; k < b.in_type().n_factors(); ++k)
    rb.emplace_back(in_wire(k), in_wire(nia + k));
  for (std::size_t k = 0; k < b.out_type().n_factors(); ++k)
    rb.emplace_back(out_wire(k), out_wire(noa + k));
  // rename in decreasing collision risk order: do it in one pass on fresh
  // names (in/out prefixes keep the two groups disjoint)
  CTensor bt = b.choi();
  // two-step rename to avoid collisions between old and new names
  std::vector<std::pair<std::string, std::string>> tmp1, tmp2;
  for (std::size_t k = 0; k < rb.size(); ++k) {
    tmp1.emplace_back(rb[k].first, "#t" + std::to_string(k));
    tmp2.emplace_back("#t" + std::to_string(k), rb[k].second);
  }
  bt = bt.relabeled(tmp1).relabeled(tmp2);
  CTensor t = tensor_product(a.choi(), bt);
  return Channel(a.in_type().concat(b.in_type()),
                 a.out_type().concat(b.out_type()), t,
                 a.deterministic() && b.deterministic());
}

Channel add_channels(const Channel& a, const Channel& b, cx wa, cx wb) {
  if (!a.in_type().same_dims(b.in_type()) ||
      !a.out_type().same_dims(b.out_type()))
    throw std::invalid_argument("add_channels: type mismatch");
  ComplexMatrix m = a.choi_matrix() * wa + b.choi_matrix() * wb;
  return Channel(a.in_type(), a.out_type(), m,
                 a.deterministic() && b.deterministic() &&
                     std::abs(wa + wb - cx{1.0}) <= 1e-12 &&
                     std::abs(wa.imag()) <= 1e-12 &&
                     std::abs(wb.imag()) <= 1e-12);
}

Channel scale_channel(const Channel& c, double s) {
  ComplexMatrix m = c.choi_matrix() * cx{s};
  return Channel(c.in_type(), c.out_type(), m, false);
}

Channel permute_channel_factors(const Channel& c,
                                const std::vector<std::size_t>& in_perm,
                                const std::vector<std::size_t>& out_perm) {
  if (in_perm.size() != c.in_type().n_factors() ||
      out_perm.size() != c.out_type().n_factors())
    throw std::invalid_argument("permute_channel_factors: bad permutation");
  std::vector<std::pair<std::string, std::string>> ren;
  std::vector<SysFactor> nin, nout;
  for (std::size_t k = 0; k < in_perm.size(); ++k) {
    ren.emplace_back(in_wire(in_perm[k]), "#p" + std::to_string(k));
    nin.push_back(c.in_type().factors()[in_perm[k]]);
  }
  for (std::size_t k = 0; k < out_perm.size(); ++k) {
    ren.emplace_back(out_wire(out_perm[k]), "#q" + std::to_string(k));
    nout.push_back(c.out_type().factors()[out_perm[k]]);
  }
  std::vector<std::pair<std::string, std::string>> fin;
  for (std::size_t k = 0; k < in_perm.size(); ++k)
    fin.emplace_back("#p" + std::to_string(k), in_wire(k));
  for (std::size_t k = 0; k < out_perm.size(); ++k)
    fin.emplace_back("#q" + std::to_string(k), out_wire(k));
  CTensor t = c.choi().relabeled(ren).relabeled(fin);
  return Channel(SystemType(nin), SystemType(nout), t, c.deterministic());
}

Channel trace_out_wires(const Channel& c,
                        const std::vector<std::size_t>& in_wires,
                        const std::vector<std::size_t>& out_wires) {
  std::vector<std::string> traced;
  std::vector<bool> in_keep(c.in_type().n_factors(), true),
      out_keep(c.out_type().n_factors(), true);
  for (auto k : in_wires) {
    traced.push_back(in_wire(k));
    in_keep.at(k) = false;
  }
  for (auto k : out_wires) {
    traced.push_back(out_wire(k));
    out_keep.at(k) = false;
  }
  CTensor t = partial_trace(c.choi(), traced);
  std::vector<SysFactor> nin, nout;
  std::vector<std::pair<std::string, std::string>> ren, fin;
  std::size_t idx = 0;
  for (std::size_t k = 0; k < in_keep.size(); ++k)
    if (in_keep[k]) {
      ren.emplace_back(in_wire(k), "#p" + std::to_string(idx));
      fin.emplace_back("#p" + std::to_string(idx), in_wire(idx));
      nin.push_back(c.in_type().factors()[k]);
      ++idx;
    }
  idx = 0;
  for (std::size_t k = 0; k < out_keep.size(); ++k)
    if (out_keep[k]) {
      ren.emplace_back(out_wire(k), "#q" + std::to_string(idx));
      fin.emplace_back("#q" + std::to_string(idx), out_wire(idx));
      nout.push_back(c.out_type().factors()[k]);
      ++idx;
    }
  t = t.relabeled(ren).relabeled(fin);
  return Channel(SystemType(nin), SystemType(nout), t, false);
}

Channel reduce_extended(const Channel& phi, std::size_t n_slot_in,
                        std::size_t n_slot_out, const ComplexMatrix& rho_x,
                        const ComplexMatrix* sigma_xp) {
  const std::size_t n_in = phi.in_type().n_factors();
  const std::size_t n_out = phi.out_type().n_factors();
  if (n_slot_in > n_in || n_slot_out > n_out)
    throw std::invalid_argument("reduce_extended: slot larger than type");

  std::vector<std::pair<std::string, std::size_t>> x_wires, xp_wires;
  std::vector<std::string> x_labels, xp_labels;
  for (std::size_t k = n_slot_in; k < n_in; ++k) {
    x_wires.emplace_back(in_wire(k), phi.in_type().factors()[k].dim);
    x_labels.push_back(in_wire(k));
  }
  for (std::size_t k = n_slot_out; k < n_out; ++k) {
    xp_wires.emplace_back(out_wire(k), phi.out_type().factors()[k].dim);
    xp_labels.push_back(out_wire(k));
  }

  CTensor t = phi.choi();
  if (!x_labels.empty()) {
    CTensor rho_t = op_tensor(rho_x, x_wires);
    t = contract(partial_transpose(rho_t, x_labels), t, x_labels);
  } else if (std::abs(rho_x.trace() - cx{1.0}) > 1e-12) {
    t *= rho_x.trace();  // trivial aux: the "state" is a scalar weight
  }
  if (!xp_labels.empty()) {
    if (sigma_xp) {
      CTensor sig_t = op_tensor(*sigma_xp, xp_wires);
      t = contract(t, sig_t, xp_labels);
    } else {
      t = partial_trace(t, xp_labels);
    }
  } else if (sigma_xp && std::abs(sigma_xp->trace() - cx{1.0}) > 1e-12) {
    t *= sigma_xp->trace();
  }
  return Channel(phi.in_type().slice(0, n_slot_in),
                 phi.out_type().slice(0, n_slot_out), t, false);
}

double tp_deviation(const Channel& c) {
  std::vector<std::string> outs;
  for (std::size_t k = 0; k < c.out_type().n_factors(); ++k)
    outs.push_back(out_wire(k));
  CTensor red = partial_trace(c.choi(), outs);
  std::vector<std::string> ins;
  for (std::size_t k = 0; k < c.in_type().n_factors(); ++k)
    ins.push_back(in_wire(k));
  if (ins.empty()) {
    return std::abs(red.scalar_value() - cx{1.0});
  }
  return red.with_leg_order(ins, ins).mat().frob_dist(
      ComplexMatrix::identity(c.d_in()));
}

Channel bend_channel(const Channel& c,
                     const std::vector<std::size_t>& in_to_out,
                     const std::vector<std::size_t>& out_to_in) {
  std::vector<bool> in_moved(c.in_type().n_factors(), false),
      out_moved(c.out_type().n_factors(), false);
  for (auto k : in_to_out) in_moved.at(k) = true;
  for (auto k : out_to_in) out_moved.at(k) = true;

  std::vector<std::pair<std::string, std::string>> ren, fin;
  std::vector<SysFactor> nin, nout;
  std::size_t tag = 0;
  auto stage = [&](const std::string& from, const std::string& to,
                   const SysFactor& f, std::vector<SysFactor>& dst) {
    ren.emplace_back(from, "#b" + std::to_string(tag));
    fin.emplace_back("#b" + std::to_string(tag), to);
    dst.push_back(f);
    ++tag;
  };

  // kept inputs, then bent-in former outputs
  std::size_t idx = 0;
  for (std::size_t k = 0; k < in_moved.size(); ++k)
    if (!in_moved[k])
      stage(in_wire(k), in_wire(idx++), c.in_type().factors()[k], nin);
  for (auto k : out_to_in)
    stage(out_wire(k), in_wire(idx++), c.out_type().factors()[k], nin);
  // kept outputs, then bent-out former inputs
  idx = 0;
  for (std::size_t k = 0; k < out_moved.size(); ++k)
    if (!out_moved[k])
      stage(out_wire(k), out_wire(idx++), c.out_type().factors()[k], nout);
  for (auto k : in_to_out)
    stage(in_wire(k), out_wire(idx++), c.in_type().factors()[k], nout);

  CTensor t = c.choi().relabeled(ren).relabeled(fin);
  return Channel(SystemType(nin), SystemType(nout), t, false);
}

}  // namespace hoq
