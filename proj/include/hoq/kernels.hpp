#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace hoq::kernels {

// Dense row-major building blocks for the tensor engine. Every kernel has a
// plain-loop reference in kernels::serial; the default entry points use
// OpenMP over independent output elements only, so parallel and serial runs
// produce bitwise identical results.

inline constexpr std::size_t kParGrain = 1u << 14;

namespace serial {

// c[m x n] = a[m x k] * b[k x n]
template <typename T>
void gemm(std::size_t m, std::size_t k, std::size_t n, const T* a, const T* b,
          T* c) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      T acc{};
      for (std::size_t t = 0; t < k; ++t) acc += a[i * k + t] * b[t * n + j];
      c[i * n + j] = acc;
    }
  }
}

// c[(r1*r2) x (c1*c2)] = a[r1 x c1] (x) b[r2 x c2]
template <typename T>
void kron(std::size_t r1, std::size_t c1, std::size_t r2, std::size_t c2,
          const T* a, const T* b, T* c) {
  const std::size_t cols = c1 * c2;
  for (std::size_t i1 = 0; i1 < r1; ++i1)
    for (std::size_t i2 = 0; i2 < r2; ++i2)
      for (std::size_t j1 = 0; j1 < c1; ++j1)
        for (std::size_t j2 = 0; j2 < c2; ++j2)
          c[(i1 * r2 + i2) * cols + (j1 * c2 + j2)] =
              a[i1 * c1 + j1] * b[i2 * c2 + j2];
}

// dst is row-major over out_dims; element i reads src at the strided address
// obtained from the digits of i.
template <typename T>
void permute_gather(const std::vector<std::size_t>& out_dims,
                    const std::vector<std::size_t>& src_strides, const T* src,
                    T* dst) {
  std::size_t total = 1;
  for (auto d : out_dims) total *= d;
  const std::size_t rank = out_dims.size();
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rem = i, addr = 0;
    for (std::size_t ax = rank; ax-- > 0;) {
      addr += (rem % out_dims[ax]) * src_strides[ax];
      rem /= out_dims[ax];
    }
    dst[i] = src[addr];
  }
}

// dst[i] = sum over the traced multi-index t of src[base(i) + t . tr_strides],
// where each traced axis pair contributes the sum of its two source strides.
template <typename T>
void trace_reduce(const std::vector<std::size_t>& out_dims,
                  const std::vector<std::size_t>& out_strides,
                  const std::vector<std::size_t>& tr_dims,
                  const std::vector<std::size_t>& tr_strides, const T* src,
                  T* dst) {
  std::size_t total = 1;
  for (auto d : out_dims) total *= d;
  std::size_t tr_total = 1;
  for (auto d : tr_dims) tr_total *= d;
  const std::size_t rank = out_dims.size();
  const std::size_t tr_rank = tr_dims.size();
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rem = i, base = 0;
    for (std::size_t ax = rank; ax-- > 0;) {
      base += (rem % out_dims[ax]) * out_strides[ax];
      rem /= out_dims[ax];
    }
    T acc{};
    for (std::size_t t = 0; t < tr_total; ++t) {
      std::size_t trem = t, addr = base;
      for (std::size_t ax = tr_rank; ax-- > 0;) {
        addr += (trem % tr_dims[ax]) * tr_strides[ax];
        trem /= tr_dims[ax];
      }
      acc += src[addr];
    }
    dst[i] = acc;
  }
}

}  // namespace serial

template <typename T>
void gemm(std::size_t m, std::size_t k, std::size_t n, const T* a, const T* b,
          T* c) {
  if (m * n * k < kParGrain) {
    serial::gemm(m, k, n, a, b, c);
    return;
  }
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(m); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      T acc{};
      for (std::size_t t = 0; t < k; ++t)
        acc += a[static_cast<std::size_t>(i) * k + t] * b[t * n + j];
      c[static_cast<std::size_t>(i) * n + j] = acc;
    }
  }
}

template <typename T>
void kron(std::size_t r1, std::size_t c1, std::size_t r2, std::size_t c2,
          const T* a, const T* b, T* c) {
  if (r1 * c1 * r2 * c2 < kParGrain) {
    serial::kron(r1, c1, r2, c2, a, b, c);
    return;
  }
  const std::size_t cols = c1 * c2;
#pragma omp parallel for collapse(2) schedule(static)
  for (long long i1 = 0; i1 < static_cast<long long>(r1); ++i1)
    for (long long i2 = 0; i2 < static_cast<long long>(r2); ++i2)
      for (std::size_t j1 = 0; j1 < c1; ++j1)
        for (std::size_t j2 = 0; j2 < c2; ++j2)
          c[(static_cast<std::size_t>(i1) * r2 + i2) * cols +
            (j1 * c2 + j2)] = a[static_cast<std::size_t>(i1) * c1 + j1] *
                              b[static_cast<std::size_t>(i2) * c2 + j2];
}

template <typename T>
void permute_gather(const std::vector<std::size_t>& out_dims,
                    const std::vector<std::size_t>& src_strides, const T* src,
                    T* dst) {
  std::size_t total = 1;
  for (auto d : out_dims) total *= d;
  if (total < kParGrain) {
    serial::permute_gather(out_dims, src_strides, src, dst);
    return;
  }
  const std::size_t rank = out_dims.size();
#pragma omp parallel for schedule(static)
  for (long long ii = 0; ii < static_cast<long long>(total); ++ii) {
    std::size_t rem = static_cast<std::size_t>(ii), addr = 0;
    for (std::size_t ax = rank; ax-- > 0;) {
      addr += (rem % out_dims[ax]) * src_strides[ax];
      rem /= out_dims[ax];
    }
    dst[ii] = src[addr];
  }
}

template <typename T>
void trace_reduce(const std::vector<std::size_t>& out_dims,
                  const std::vector<std::size_t>& out_strides,
                  const std::vector<std::size_t>& tr_dims,
                  const std::vector<std::size_t>& tr_strides, const T* src,
                  T* dst) {
  std::size_t total = 1;
  for (auto d : out_dims) total *= d;
  std::size_t tr_total = 1;
  for (auto d : tr_dims) tr_total *= d;
  if (total * tr_total < kParGrain) {
    serial::trace_reduce(out_dims, out_strides, tr_dims, tr_strides, src, dst);
    return;
  }
  const std::size_t rank = out_dims.size();
  const std::size_t tr_rank = tr_dims.size();
#pragma omp parallel for schedule(static)
  for (long long ii = 0; ii < static_cast<long long>(total); ++ii) {
    std::size_t rem = static_cast<std::size_t>(ii), base = 0;
    for (std::size_t ax = rank; ax-- > 0;) {
      base += (rem % out_dims[ax]) * out_strides[ax];
      rem /= out_dims[ax];
    }
    T acc{};
    for (std::size_t t = 0; t < tr_total; ++t) {
      std::size_t trem = t, addr = base;
      for (std::size_t ax = tr_rank; ax-- > 0;) {
        addr += (trem % tr_dims[ax]) * tr_strides[ax];
        trem /= tr_dims[ax];
      }
      acc += src[addr];
    }
    dst[ii] = acc;
  }
}

}  // namespace hoq::kernels
