#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hoq/kernels.hpp"

namespace hoq {

using cx = std::complex<double>;

// Dense row-major matrix over a scalar field (complex<double> for the
// quantum side, double for the classical side).
template <typename T>
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, T{}) {}
  Mat(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows_ * cols_)
      throw std::invalid_argument("Mat: entry count does not match shape");
  }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return a_.size(); }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return a_[r * cols_ + c];
  }
  T* data() { return a_.data(); }
  const T* data() const { return a_.data(); }
  std::vector<T>& entries() { return a_; }
  const std::vector<T>& entries() const { return a_; }

  Mat& operator+=(const Mat& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Mat& operator*=(T s) {
    for (auto& v : a_) v *= s;
    return *this;
  }

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(Mat a, T s) { return a *= s; }
  friend Mat operator*(T s, Mat a) { return a *= s; }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Mat: shape mismatch");
    Mat c(a.rows_, b.cols_);
    kernels::gemm(a.rows_, a.cols_, b.cols_, a.data(), b.data(), c.data());
    return c;
  }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Mat conj() const {
    Mat m = *this;
    if constexpr (std::is_same_v<T, cx>)
      for (auto& v : m.a_) v = std::conj(v);
    return m;
  }

  Mat dagger() const { return conj().transpose(); }

  T trace() const {
    if (!square()) throw std::invalid_argument("Mat: trace of non-square");
    T acc{};
    for (std::size_t i = 0; i < rows_; ++i) acc += (*this)(i, i);
    return acc;
  }

  double frob_norm() const {
    double acc = 0;
    for (const auto& v : a_) acc += std::norm(v);
    return std::sqrt(acc);
  }

  double frob_dist(const Mat& o) const {
    check_same_shape(o);
    double acc = 0;
    for (std::size_t i = 0; i < a_.size(); ++i) acc += std::norm(a_[i] - o.a_[i]);
    return std::sqrt(acc);
  }

  double max_abs() const {
    double m = 0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  void check_same_shape(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("Mat: shape mismatch");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

template <typename T>
Mat<T> kron(const Mat<T>& a, const Mat<T>& b) {
  Mat<T> c(a.rows() * b.rows(), a.cols() * b.cols());
  kernels::kron(a.rows(), a.cols(), b.rows(), b.cols(), a.data(), b.data(),
                c.data());
  return c;
}

using ComplexMatrix = Mat<cx>;
using RealMatrix = Mat<double>;

}  // namespace hoq
