#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hoq {

struct SysFactor {
  std::string label;
  std::size_t dim = 1;

  bool operator==(const SysFactor& o) const {
    return label == o.label && dim == o.dim;
  }
};

// An ordered list of labeled system factors; the monoidal product of objects.
class SystemType {
 public:
  SystemType() = default;
  explicit SystemType(std::vector<SysFactor> factors)
      : factors_(std::move(factors)) {
    for (const auto& f : factors_)
      if (f.dim < 1) throw std::invalid_argument("SystemType: dim must be >= 1");
  }

  static SystemType single(const std::string& label, std::size_t dim) {
    return SystemType({{label, dim}});
  }
  static SystemType trivial() { return SystemType(); }

  const std::vector<SysFactor>& factors() const { return factors_; }
  std::size_t n_factors() const { return factors_.size(); }

  std::size_t total_dim() const {
    std::size_t d = 1;
    for (const auto& f : factors_) d *= f.dim;
    return d;
  }

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    for (const auto& f : factors_) d.push_back(f.dim);
    return d;
  }

  SystemType concat(const SystemType& o) const {
    auto f = factors_;
    f.insert(f.end(), o.factors_.begin(), o.factors_.end());
    return SystemType(std::move(f));
  }

  SystemType slice(std::size_t begin, std::size_t end) const {
    if (begin > end || end > factors_.size())
      throw std::out_of_range("SystemType: bad slice");
    return SystemType(
        {factors_.begin() + static_cast<long>(begin),
         factors_.begin() + static_cast<long>(end)});
  }

  // True when o's factor dims are the leading factor dims of this type.
  bool dims_prefix_of(const SystemType& o) const {
    if (factors_.size() > o.factors_.size()) return false;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (factors_[i].dim != o.factors_[i].dim) return false;
    return true;
  }

  bool same_dims(const SystemType& o) const {
    return factors_.size() == o.factors_.size() && dims_prefix_of(o);
  }

  bool operator==(const SystemType& o) const { return factors_ == o.factors_; }

 private:
  std::vector<SysFactor> factors_;
};

}  // namespace hoq
