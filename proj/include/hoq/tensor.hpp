#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hoq/matrix.hpp"

namespace hoq {

enum class Pol { In, Out };

struct Leg {
  std::string label;
  std::size_t dim = 0;
  Pol pol = Pol::In;

  bool operator==(const Leg& o) const {
    return label == o.label && dim == o.dim && pol == o.pol;
  }
};

// Dense tensor with named, polarized legs. Canonically all In legs precede
// all Out legs; the data is then a matrix whose row index runs over the In
// legs (row-major, list order) and whose column index over the Out legs.
// Labels are unique within each polarity; the same label appearing once as
// In and once as Out is how the two sides of one wire are paired.
template <typename T>
class LabeledTensor {
 public:
  LabeledTensor() : mat_(1, 1) {}

  // Grouped layout: mat rows = product of In dims, cols = product of Out
  // dims, regardless of how the legs are interleaved in `legs`.
  LabeledTensor(std::vector<Leg> legs, Mat<T> mat) {
    std::size_t rows = 1, cols = 1;
    for (const auto& l : legs) (l.pol == Pol::In ? rows : cols) *= l.dim;
    if (rows != mat.rows() || cols != mat.cols())
      throw std::invalid_argument("LabeledTensor: leg dims do not match data");
    // grouped strides: In legs stride over rows (times cols), Out over cols
    std::vector<std::size_t> st(legs.size(), 0);
    std::size_t acc_in = cols, acc_out = 1;
    for (std::size_t i = legs.size(); i-- > 0;) {
      if (legs[i].pol == Pol::In) {
        st[i] = acc_in;
        acc_in *= legs[i].dim;
      } else {
        st[i] = acc_out;
        acc_out *= legs[i].dim;
      }
    }
    init_canonical(std::move(legs), st, mat.data());
  }

  // Flat layout: data is row-major over the legs exactly in list order.
  static LabeledTensor from_flat(std::vector<Leg> legs, const std::vector<T>& flat) {
    std::size_t total = 1;
    for (const auto& l : legs) total *= l.dim;
    if (total != flat.size())
      throw std::invalid_argument("from_flat: size mismatch");
    std::vector<std::size_t> st(legs.size(), 1);
    for (std::size_t i = legs.size(); i-- > 1;) st[i - 1] = st[i] * legs[i].dim;
    LabeledTensor t;
    t.init_canonical(std::move(legs), st, flat.data());
    return t;
  }

  static LabeledTensor scalar(T v) {
    LabeledTensor t;
    t.mat_(0, 0) = v;
    return t;
  }

  const std::vector<Leg>& legs() const { return legs_; }
  const Mat<T>& mat() const { return mat_; }
  Mat<T>& mat() { return mat_; }

  std::size_t rank() const { return legs_.size(); }
  bool is_scalar() const { return legs_.empty(); }
  T scalar_value() const {
    if (!is_scalar()) throw std::logic_error("tensor is not a scalar");
    return mat_(0, 0);
  }

  std::optional<std::size_t> find(const std::string& label, Pol pol) const {
    for (std::size_t i = 0; i < legs_.size(); ++i)
      if (legs_[i].label == label && legs_[i].pol == pol) return i;
    return std::nullopt;
  }

  bool has_label(const std::string& label) const {
    return find(label, Pol::In) || find(label, Pol::Out);
  }

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    d.reserve(legs_.size());
    for (const auto& l : legs_) d.push_back(l.dim);
    return d;
  }

  // row-major strides over the (canonical) leg list
  std::vector<std::size_t> strides() const {
    std::vector<std::size_t> s(legs_.size(), 1);
    for (std::size_t i = legs_.size(); i-- > 1;)
      s[i - 1] = s[i] * legs_[i].dim;
    return s;
  }

  // Simultaneous renaming: each leg is matched against the pairs once, so
  // chains like {a->b, b->c} do not cascade.
  LabeledTensor relabeled(
      const std::vector<std::pair<std::string, std::string>>& renames) const {
    LabeledTensor t = *this;
    for (auto& l : t.legs_)
      for (const auto& [from, to] : renames)
        if (l.label == from) {
          l.label = to;
          break;
        }
    t.validate_labels();
    return t;
  }

  // Reorder the In legs to `in_labels` order and the Out legs to
  // `out_labels` order, permuting the data.
  LabeledTensor with_leg_order(const std::vector<std::string>& in_labels,
                               const std::vector<std::string>& out_labels) const {
    std::vector<std::size_t> order;
    for (const auto& lb : in_labels) {
      auto i = find(lb, Pol::In);
      if (!i) throw std::invalid_argument("with_leg_order: no In leg " + lb);
      order.push_back(*i);
    }
    for (const auto& lb : out_labels) {
      auto i = find(lb, Pol::Out);
      if (!i) throw std::invalid_argument("with_leg_order: no Out leg " + lb);
      order.push_back(*i);
    }
    if (order.size() != legs_.size())
      throw std::invalid_argument("with_leg_order: leg count mismatch");
    return reordered(order);
  }

  LabeledTensor& operator+=(const LabeledTensor& o) {
    mat_ += o.aligned_to(*this).mat_;
    return *this;
  }
  LabeledTensor& operator-=(const LabeledTensor& o) {
    mat_ -= o.aligned_to(*this).mat_;
    return *this;
  }
  LabeledTensor& operator*=(T s) {
    mat_ *= s;
    return *this;
  }
  friend LabeledTensor operator+(LabeledTensor a, const LabeledTensor& b) {
    return a += b;
  }
  friend LabeledTensor operator-(LabeledTensor a, const LabeledTensor& b) {
    return a -= b;
  }
  friend LabeledTensor operator*(LabeledTensor a, T s) { return a *= s; }
  friend LabeledTensor operator*(T s, LabeledTensor a) { return a *= s; }

  // Permute this tensor into `ref`'s leg order (legs must match as sets).
  LabeledTensor aligned_to(const LabeledTensor& ref) const {
    if (legs_.size() != ref.legs_.size())
      throw std::invalid_argument("aligned_to: leg count mismatch");
    std::vector<std::size_t> order;
    for (const auto& l : ref.legs_) {
      auto i = find(l.label, l.pol);
      if (!i || legs_[*i].dim != l.dim)
        throw std::invalid_argument("aligned_to: leg mismatch on " + l.label);
      order.push_back(*i);
    }
    return reordered(order);
  }

  double frob_dist(const LabeledTensor& o) const {
    return mat_.frob_dist(o.aligned_to(*this).mat_);
  }

 private:
  // Build canonical (In-first) legs/data from arbitrary-order legs plus the
  // per-leg source strides of the provided buffer.
  void init_canonical(std::vector<Leg> legs,
                      const std::vector<std::size_t>& src_strides,
                      const T* src) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < legs.size(); ++i)
      if (legs[i].pol == Pol::In) order.push_back(i);
    for (std::size_t i = 0; i < legs.size(); ++i)
      if (legs[i].pol == Pol::Out) order.push_back(i);
    std::vector<Leg> nl(order.size());
    std::vector<std::size_t> out_dims(order.size()), st(order.size());
    std::size_t rows = 1, cols = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      nl[i] = legs[order[i]];
      out_dims[i] = nl[i].dim;
      st[i] = src_strides[order[i]];
      (nl[i].pol == Pol::In ? rows : cols) *= nl[i].dim;
    }
    legs_ = std::move(nl);
    mat_ = Mat<T>(rows, cols);
    kernels::permute_gather(out_dims, st, src, mat_.data());
    validate_labels();
  }

  LabeledTensor reordered(const std::vector<std::size_t>& order) const {
    const auto st = strides();
    std::vector<Leg> nl;
    std::vector<std::size_t> nst;
    nl.reserve(order.size());
    nst.reserve(order.size());
    for (auto a : order) {
      nl.push_back(legs_[a]);
      nst.push_back(st[a]);
    }
    LabeledTensor t;
    t.init_canonical(std::move(nl), nst, mat_.data());
    return t;
  }

  void validate_labels() const {
    std::set<std::string> in_labels, out_labels;
    for (const auto& l : legs_) {
      if (l.dim == 0) throw std::invalid_argument("LabeledTensor: zero dim");
      auto& s = (l.pol == Pol::In) ? in_labels : out_labels;
      if (!s.insert(l.label).second)
        throw std::invalid_argument("LabeledTensor: duplicate label " +
                                    l.label);
    }
  }

  std::vector<Leg> legs_;
  Mat<T> mat_;
};

// Identity wire of dimension d: delta from an In leg to an Out leg.
template <typename T>
LabeledTensor<T> wire(const std::string& in_label,
                      const std::string& out_label, std::size_t d) {
  return LabeledTensor<T>({{in_label, d, Pol::In}, {out_label, d, Pol::Out}},
                          Mat<T>::identity(d));
}

// Unnormalized cup sum_i |ii>: a state with two Out legs.
template <typename T>
LabeledTensor<T> bell_cup(std::size_t d, const std::string& l1,
                          const std::string& l2) {
  if (d == 0) throw std::invalid_argument("bell_cup: dim must be >= 1");
  Mat<T> m(1, d * d);
  for (std::size_t i = 0; i < d; ++i) m(0, i * d + i) = T{1};
  return LabeledTensor<T>({{l1, d, Pol::Out}, {l2, d, Pol::Out}},
                          std::move(m));
}

// Adjoint effect of the cup: two In legs.
template <typename T>
LabeledTensor<T> bell_cap(std::size_t d, const std::string& l1,
                          const std::string& l2) {
  if (d == 0) throw std::invalid_argument("bell_cap: dim must be >= 1");
  Mat<T> m(d * d, 1);
  for (std::size_t i = 0; i < d; ++i) m(i * d + i, 0) = T{1};
  return LabeledTensor<T>({{l1, d, Pol::In}, {l2, d, Pol::In}}, std::move(m));
}

template <typename T>
LabeledTensor<T> tensor_product(const LabeledTensor<T>& a,
                                const LabeledTensor<T>& b) {
  std::vector<Leg> legs;
  for (const auto& l : a.legs())
    if (l.pol == Pol::In) legs.push_back(l);
  for (const auto& l : b.legs())
    if (l.pol == Pol::In) legs.push_back(l);
  for (const auto& l : a.legs())
    if (l.pol == Pol::Out) legs.push_back(l);
  for (const auto& l : b.legs())
    if (l.pol == Pol::Out) legs.push_back(l);
  // kron of the grouped matrices is grouped over [inA,inB] x [outA,outB]
  return LabeledTensor<T>(std::move(legs), kron(a.mat(), b.mat()));
}

// Contract shared labels: for every label L in `shared`, an Out leg named L
// in one tensor is summed against the In leg named L in the other. A label
// present with both polarities in both tensors contracts both pairs at once.
template <typename T>
LabeledTensor<T> contract(const LabeledTensor<T>& t1,
                          const LabeledTensor<T>& t2,
                          const std::vector<std::string>& shared) {
  struct Pair {
    std::size_t ax1, ax2;
  };
  std::vector<Pair> pairs;
  std::vector<bool> used1(t1.rank(), false), used2(t2.rank(), false);
  for (const auto& lb : shared) {
    auto i1i = t1.find(lb, Pol::In), i1o = t1.find(lb, Pol::Out);
    auto i2i = t2.find(lb, Pol::In), i2o = t2.find(lb, Pol::Out);
    bool any = false;
    if (i1o && i2i) {
      if (t1.legs()[*i1o].dim != t2.legs()[*i2i].dim)
        throw std::invalid_argument("contract: dim mismatch on " + lb);
      pairs.push_back({*i1o, *i2i});
      used1[*i1o] = used2[*i2i] = true;
      any = true;
    }
    if (i1i && i2o) {
      if (t1.legs()[*i1i].dim != t2.legs()[*i2o].dim)
        throw std::invalid_argument("contract: dim mismatch on " + lb);
      pairs.push_back({*i1i, *i2o});
      used1[*i1i] = used2[*i2o] = true;
      any = true;
    }
    if (!any) {
      if ((i1i || i1o) && (i2i || i2o))
        throw std::invalid_argument("contract: polarity clash on " + lb);
      throw std::invalid_argument("contract: label " + lb +
                                  " not present in both tensors");
    }
  }

  std::vector<std::size_t> free1, free2;
  for (std::size_t i = 0; i < t1.rank(); ++i)
    if (!used1[i]) free1.push_back(i);
  for (std::size_t i = 0; i < t2.rank(); ++i)
    if (!used2[i]) free2.push_back(i);

  const auto d1 = t1.dims(), d2 = t2.dims();
  const auto s1 = t1.strides(), s2 = t2.strides();

  std::size_t f1 = 1, f2 = 1, kk = 1;
  for (auto a : free1) f1 *= d1[a];
  for (auto a : free2) f2 *= d2[a];
  for (const auto& p : pairs) kk *= d1[p.ax1];

  // t1 -> (free1 x K), t2 -> (K x free2), contracted axes in pair order
  std::vector<std::size_t> od1, os1, od2, os2;
  for (auto a : free1) {
    od1.push_back(d1[a]);
    os1.push_back(s1[a]);
  }
  for (const auto& p : pairs) {
    od1.push_back(d1[p.ax1]);
    os1.push_back(s1[p.ax1]);
  }
  for (const auto& p : pairs) {
    od2.push_back(d2[p.ax2]);
    os2.push_back(s2[p.ax2]);
  }
  for (auto a : free2) {
    od2.push_back(d2[a]);
    os2.push_back(s2[a]);
  }

  std::vector<T> lhs(f1 * kk), rhs(kk * f2), out(f1 * f2);
  kernels::permute_gather(od1, os1, t1.mat().data(), lhs.data());
  kernels::permute_gather(od2, os2, t2.mat().data(), rhs.data());
  kernels::gemm(f1, kk, f2, lhs.data(), rhs.data(), out.data());

  std::vector<Leg> legs;
  for (auto a : free1) legs.push_back(t1.legs()[a]);
  for (auto a : free2) legs.push_back(t2.legs()[a]);
  return LabeledTensor<T>::from_flat(std::move(legs), out);
}

// Close the loop on each listed label: the label must appear as a matched
// In/Out pair of equal dimension, which is summed over and removed.
template <typename T>
LabeledTensor<T> partial_trace(const LabeledTensor<T>& t,
                               const std::vector<std::string>& labels) {
  std::vector<bool> traced(t.rank(), false);
  std::vector<std::size_t> tr_dims, tr_strides;
  const auto d = t.dims();
  const auto s = t.strides();
  for (const auto& lb : labels) {
    auto ai = t.find(lb, Pol::In), ao = t.find(lb, Pol::Out);
    if (!ai || !ao)
      throw std::invalid_argument("partial_trace: label " + lb +
                                  " is not a matched In/Out pair");
    if (d[*ai] != d[*ao])
      throw std::invalid_argument("partial_trace: dim mismatch on " + lb);
    traced[*ai] = traced[*ao] = true;
    tr_dims.push_back(d[*ai]);
    tr_strides.push_back(s[*ai] + s[*ao]);
  }
  std::vector<Leg> legs;
  std::vector<std::size_t> out_dims, out_strides;
  for (std::size_t i = 0; i < t.rank(); ++i)
    if (!traced[i]) {
      legs.push_back(t.legs()[i]);
      out_dims.push_back(d[i]);
      out_strides.push_back(s[i]);
    }
  std::size_t total = 1;
  for (auto v : out_dims) total *= v;
  std::vector<T> out(total);
  kernels::trace_reduce(out_dims, out_strides, tr_dims, tr_strides,
                        t.mat().data(), out.data());
  return LabeledTensor<T>::from_flat(std::move(legs), out);
}

// Swap the index values of each label's matched In/Out pair (the legs keep
// their positions and polarities; only the data moves).
template <typename T>
LabeledTensor<T> partial_transpose(const LabeledTensor<T>& t,
                                   const std::vector<std::string>& labels) {
  const auto d = t.dims();
  auto s = t.strides();
  for (const auto& lb : labels) {
    auto ai = t.find(lb, Pol::In), ao = t.find(lb, Pol::Out);
    if (!ai || !ao)
      throw std::invalid_argument("partial_transpose: label " + lb +
                                  " is not a matched In/Out pair");
    if (d[*ai] != d[*ao])
      throw std::invalid_argument("partial_transpose: dim mismatch on " + lb);
    std::swap(s[*ai], s[*ao]);
  }
  std::vector<T> out(t.mat().size());
  kernels::permute_gather(d, s, t.mat().data(), out.data());
  return LabeledTensor<T>::from_flat(t.legs(), out);
}

// Reverse the polarity of the listed legs in place (single-index wire
// bending: the flat data over the leg list is unchanged, only the grouping
// moves).
template <typename T>
LabeledTensor<T> flip_polarity(const LabeledTensor<T>& t,
                               const std::vector<std::string>& labels) {
  auto legs = t.legs();
  for (const auto& lb : labels) {
    bool found = false;
    for (auto& l : legs)
      if (l.label == lb) {
        if (found)
          throw std::invalid_argument("flip_polarity: ambiguous label " + lb);
        l.pol = (l.pol == Pol::In) ? Pol::Out : Pol::In;
        found = true;
      }
    if (!found)
      throw std::invalid_argument("flip_polarity: unknown label " + lb);
  }
  return LabeledTensor<T>::from_flat(std::move(legs), t.mat().entries());
}

template <typename T>
T full_trace(const LabeledTensor<T>& t) {
  std::set<std::string> labels;
  for (const auto& l : t.legs()) labels.insert(l.label);
  return partial_trace(t, {labels.begin(), labels.end()}).scalar_value();
}

using CTensor = LabeledTensor<cx>;
using RTensor = LabeledTensor<double>;

}  // namespace hoq
