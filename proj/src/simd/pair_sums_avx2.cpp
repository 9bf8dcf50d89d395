#include <immintrin.h>

#include <cmath>

#include "pair_sums_impl.hpp"

// AVX2 backend. Element arithmetic matches the scalar backend bit-for-bit on
// the fast paths (vector sqrt/mul/div are correctly rounded, generic powers
// fall back to lane-wise std::pow); only reduction order differs.

namespace kdist::simd::detail {
namespace {

inline double hsum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return ((lanes[0] + lanes[1]) + lanes[2]) + lanes[3];
}

struct VecPowD {
  PowPlan plan;
  __m256d scale;
  explicit VecPowD(const PowPlan& p) : plan(p), scale(_mm256_set1_pd(p.scale)) {}

  __m256d operator()(__m256d r2) const {
    switch (plan.kind) {
      case PowKind::identity:
        return _mm256_mul_pd(r2, scale);
      case PowKind::sqrt_half:
        return _mm256_mul_pd(_mm256_sqrt_pd(r2), scale);
      case PowKind::int_pow: {
        __m256d v = r2;
        for (int i = 1; i < plan.chain; ++i) v = _mm256_mul_pd(v, r2);
        if (plan.reciprocal) v = _mm256_div_pd(_mm256_set1_pd(1.0), v);
        return _mm256_mul_pd(v, scale);
      }
      case PowKind::half_int: {
        const __m256d s = _mm256_sqrt_pd(r2);
        __m256d v = s;
        for (int i = 1; i < plan.chain; ++i) v = _mm256_mul_pd(v, s);
        if (plan.reciprocal) v = _mm256_div_pd(_mm256_set1_pd(1.0), v);
        return _mm256_mul_pd(v, scale);
      }
      case PowKind::generic:
      default: {
        alignas(32) double lanes[4];
        _mm256_store_pd(lanes, r2);
        for (double& lane : lanes) lane = std::pow(lane, plan.p) * plan.scale;
        return _mm256_load_pd(lanes);
      }
    }
  }
};

struct VecPowF {
  PowPlan plan;
  __m256 scale;
  explicit VecPowF(const PowPlan& p) : plan(p), scale(_mm256_set1_ps(static_cast<float>(p.scale))) {}

  __m256 operator()(__m256 r2) const {
    switch (plan.kind) {
      case PowKind::identity:
        return _mm256_mul_ps(r2, scale);
      case PowKind::sqrt_half:
        return _mm256_mul_ps(_mm256_sqrt_ps(r2), scale);
      case PowKind::int_pow: {
        __m256 v = r2;
        for (int i = 1; i < plan.chain; ++i) v = _mm256_mul_ps(v, r2);
        if (plan.reciprocal) v = _mm256_div_ps(_mm256_set1_ps(1.0f), v);
        return _mm256_mul_ps(v, scale);
      }
      case PowKind::half_int: {
        const __m256 s = _mm256_sqrt_ps(r2);
        __m256 v = s;
        for (int i = 1; i < plan.chain; ++i) v = _mm256_mul_ps(v, s);
        if (plan.reciprocal) v = _mm256_div_ps(_mm256_set1_ps(1.0f), v);
        return _mm256_mul_ps(v, scale);
      }
      case PowKind::generic:
      default: {
        alignas(32) float lanes[8];
        _mm256_store_ps(lanes, r2);
        for (float& lane : lanes)
          lane = std::pow(lane, static_cast<float>(plan.p)) * static_cast<float>(plan.scale);
        return _mm256_load_ps(lanes);
      }
    }
  }
};

// r2 lanes for 4 consecutive columns j..j+3 against broadcast point xi.
inline __m256d r2_columns(const double* xi, const double* xt, std::size_t n, std::size_t dim,
                          std::size_t j) {
  __m256d r2 = _mm256_setzero_pd();
  for (std::size_t k = 0; k < dim; ++k) {
    const __m256d col = _mm256_loadu_pd(xt + k * n + j);
    const __m256d d = _mm256_sub_pd(_mm256_set1_pd(xi[k]), col);
    r2 = _mm256_fmadd_pd(d, d, r2);
  }
  return r2;
}

inline __m256 r2_columns_f32(const double* xi, const float* xt, std::size_t n, std::size_t dim,
                             std::size_t j) {
  __m256 r2 = _mm256_setzero_ps();
  for (std::size_t k = 0; k < dim; ++k) {
    const __m256 col = _mm256_loadu_ps(xt + k * n + j);
    const __m256 d = _mm256_sub_ps(_mm256_set1_ps(static_cast<float>(xi[k])), col);
    r2 = _mm256_fmadd_ps(d, d, r2);
  }
  return r2;
}

inline void accumulate_f32(__m256 v, __m256d& acc_lo, __m256d& acc_hi) {
  acc_lo = _mm256_add_pd(acc_lo, _mm256_cvtps_pd(_mm256_castps256_ps128(v)));
  acc_hi = _mm256_add_pd(acc_hi, _mm256_cvtps_pd(_mm256_extractf128_ps(v, 1)));
}

template <typename T>
inline T sq_dist_scalar(const double* a, const double* b, std::size_t dim) {
  T r2 = 0;
  for (std::size_t k = 0; k < dim; ++k) {
    const T d = static_cast<T>(a[k]) - static_cast<T>(b[k]);
    r2 += d * d;
  }
  return r2;
}

double pow_cross_impl(const double* x, std::size_t nx, const double* y, std::size_t ny,
                      std::size_t dim, const PowPlan& plan) {
  const VecPowD pw(plan);
  const std::vector<double> yt = transpose_points<double>(y, ny, dim);
  double total = 0.0;
  for (std::size_t i = 0; i < nx; ++i) {
    const double* xi = x + i * dim;
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= ny; j += 4) acc = _mm256_add_pd(acc, pw(r2_columns(xi, yt.data(), ny, dim, j)));
    double row = hsum(acc);
    for (; j < ny; ++j) row += apply_pow(plan, sq_dist_scalar<double>(xi, y + j * dim, dim));
    total += row;
  }
  return total;
}

double pow_within_impl(const double* x, std::size_t n, std::size_t dim, const PowPlan& plan) {
  const VecPowD pw(plan);
  const std::vector<double> xt = transpose_points<double>(x, n, dim);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double* xi = x + i * dim;
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = i + 1;
    for (; j + 4 <= n; j += 4) acc = _mm256_add_pd(acc, pw(r2_columns(xi, xt.data(), n, dim, j)));
    double row = hsum(acc);
    for (; j < n; ++j) row += apply_pow(plan, sq_dist_scalar<double>(xi, x + j * dim, dim));
    total += row;
  }
  return total;
}

double pow_paired_impl(const double* x, const double* y, std::size_t n, std::size_t dim,
                       const PowPlan& plan) {
  const VecPowD pw(plan);
  const std::vector<double> xt = transpose_points<double>(x, n, dim);
  const std::vector<double> yt = transpose_points<double>(y, n, dim);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r2 = _mm256_setzero_pd();
    for (std::size_t k = 0; k < dim; ++k) {
      const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(xt.data() + k * n + i),
                                      _mm256_loadu_pd(yt.data() + k * n + i));
      r2 = _mm256_fmadd_pd(d, d, r2);
    }
    acc = _mm256_add_pd(acc, pw(r2));
  }
  double total = hsum(acc);
  for (; i < n; ++i)
    total += apply_pow(plan, sq_dist_scalar<double>(x + i * dim, y + i * dim, dim));
  return total;
}

double pow_norm_impl(const double* x, std::size_t n, std::size_t dim, const PowPlan& plan) {
  const VecPowD pw(plan);
  const std::vector<double> xt = transpose_points<double>(x, n, dim);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r2 = _mm256_setzero_pd();
    for (std::size_t k = 0; k < dim; ++k) {
      const __m256d v = _mm256_loadu_pd(xt.data() + k * n + i);
      r2 = _mm256_fmadd_pd(v, v, r2);
    }
    acc = _mm256_add_pd(acc, pw(r2));
  }
  double total = hsum(acc);
  for (; i < n; ++i) {
    double r2 = 0.0;
    for (std::size_t k = 0; k < dim; ++k) r2 += x[i * dim + k] * x[i * dim + k];
    total += apply_pow(plan, r2);
  }
  return total;
}

DualSums dual_cross_impl(const double* x, std::size_t nx, const double* y, std::size_t ny,
                         std::size_t dim, const PowPlan& pa, const PowPlan& pb) {
  const VecPowD pwa(pa), pwb(pb);
  const std::vector<double> yt = transpose_points<double>(y, ny, dim);
  DualSums out;
  for (std::size_t i = 0; i < nx; ++i) {
    const double* xi = x + i * dim;
    __m256d acc_a = _mm256_setzero_pd(), acc_b = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= ny; j += 4) {
      const __m256d r2 = r2_columns(xi, yt.data(), ny, dim, j);
      acc_a = _mm256_add_pd(acc_a, pwa(r2));
      acc_b = _mm256_add_pd(acc_b, pwb(r2));
    }
    double row_a = hsum(acc_a), row_b = hsum(acc_b);
    for (; j < ny; ++j) {
      const double r2 = sq_dist_scalar<double>(xi, y + j * dim, dim);
      row_a += apply_pow(pa, r2);
      row_b += apply_pow(pb, r2);
    }
    out.a += row_a;
    out.b += row_b;
  }
  return out;
}

DualSums dual_within_impl(const double* x, std::size_t n, std::size_t dim, const PowPlan& pa,
                          const PowPlan& pb) {
  const VecPowD pwa(pa), pwb(pb);
  const std::vector<double> xt = transpose_points<double>(x, n, dim);
  DualSums out;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double* xi = x + i * dim;
    __m256d acc_a = _mm256_setzero_pd(), acc_b = _mm256_setzero_pd();
    std::size_t j = i + 1;
    for (; j + 4 <= n; j += 4) {
      const __m256d r2 = r2_columns(xi, xt.data(), n, dim, j);
      acc_a = _mm256_add_pd(acc_a, pwa(r2));
      acc_b = _mm256_add_pd(acc_b, pwb(r2));
    }
    double row_a = hsum(acc_a), row_b = hsum(acc_b);
    for (; j < n; ++j) {
      const double r2 = sq_dist_scalar<double>(xi, x + j * dim, dim);
      row_a += apply_pow(pa, r2);
      row_b += apply_pow(pb, r2);
    }
    out.a += row_a;
    out.b += row_b;
  }
  return out;
}

DualSums dual_paired_impl(const double* x, const double* y, std::size_t n, std::size_t dim,
                          const PowPlan& pa, const PowPlan& pb) {
  const VecPowD pwa(pa), pwb(pb);
  const std::vector<double> xt = transpose_points<double>(x, n, dim);
  const std::vector<double> yt = transpose_points<double>(y, n, dim);
  __m256d acc_a = _mm256_setzero_pd(), acc_b = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r2 = _mm256_setzero_pd();
    for (std::size_t k = 0; k < dim; ++k) {
      const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(xt.data() + k * n + i),
                                      _mm256_loadu_pd(yt.data() + k * n + i));
      r2 = _mm256_fmadd_pd(d, d, r2);
    }
    acc_a = _mm256_add_pd(acc_a, pwa(r2));
    acc_b = _mm256_add_pd(acc_b, pwb(r2));
  }
  DualSums out{hsum(acc_a), hsum(acc_b)};
  for (; i < n; ++i) {
    const double r2 = sq_dist_scalar<double>(x + i * dim, y + i * dim, dim);
    out.a += apply_pow(pa, r2);
    out.b += apply_pow(pb, r2);
  }
  return out;
}

DualSums dual_cross_f32_impl(const double* x, std::size_t nx, const double* y, std::size_t ny,
                             std::size_t dim, const PowPlan& pa, const PowPlan& pb) {
  const VecPowF pwa(pa), pwb(pb);
  const std::vector<float> yt = transpose_points<float>(y, ny, dim);
  DualSums out;
  for (std::size_t i = 0; i < nx; ++i) {
    const double* xi = x + i * dim;
    __m256d a_lo = _mm256_setzero_pd(), a_hi = _mm256_setzero_pd();
    __m256d b_lo = _mm256_setzero_pd(), b_hi = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 8 <= ny; j += 8) {
      const __m256 r2 = r2_columns_f32(xi, yt.data(), ny, dim, j);
      accumulate_f32(pwa(r2), a_lo, a_hi);
      accumulate_f32(pwb(r2), b_lo, b_hi);
    }
    double row_a = hsum(a_lo) + hsum(a_hi), row_b = hsum(b_lo) + hsum(b_hi);
    for (; j < ny; ++j) {
      const float r2 = sq_dist_scalar<float>(xi, y + j * dim, dim);
      row_a += static_cast<double>(apply_pow(pa, r2));
      row_b += static_cast<double>(apply_pow(pb, r2));
    }
    out.a += row_a;
    out.b += row_b;
  }
  return out;
}

DualSums dual_within_f32_impl(const double* x, std::size_t n, std::size_t dim, const PowPlan& pa,
                              const PowPlan& pb) {
  const VecPowF pwa(pa), pwb(pb);
  const std::vector<float> xt = transpose_points<float>(x, n, dim);
  DualSums out;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double* xi = x + i * dim;
    __m256d a_lo = _mm256_setzero_pd(), a_hi = _mm256_setzero_pd();
    __m256d b_lo = _mm256_setzero_pd(), b_hi = _mm256_setzero_pd();
    std::size_t j = i + 1;
    for (; j + 8 <= n; j += 8) {
      const __m256 r2 = r2_columns_f32(xi, xt.data(), n, dim, j);
      accumulate_f32(pwa(r2), a_lo, a_hi);
      accumulate_f32(pwb(r2), b_lo, b_hi);
    }
    double row_a = hsum(a_lo) + hsum(a_hi), row_b = hsum(b_lo) + hsum(b_hi);
    for (; j < n; ++j) {
      const float r2 = sq_dist_scalar<float>(xi, x + j * dim, dim);
      row_a += static_cast<double>(apply_pow(pa, r2));
      row_b += static_cast<double>(apply_pow(pb, r2));
    }
    out.a += row_a;
    out.b += row_b;
  }
  return out;
}

DualSums dual_paired_f32_impl(const double* x, const double* y, std::size_t n, std::size_t dim,
                              const PowPlan& pa, const PowPlan& pb) {
  const VecPowF pwa(pa), pwb(pb);
  const std::vector<float> xt = transpose_points<float>(x, n, dim);
  const std::vector<float> yt = transpose_points<float>(y, n, dim);
  __m256d a_lo = _mm256_setzero_pd(), a_hi = _mm256_setzero_pd();
  __m256d b_lo = _mm256_setzero_pd(), b_hi = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 r2 = _mm256_setzero_ps();
    for (std::size_t k = 0; k < dim; ++k) {
      const __m256 d = _mm256_sub_ps(_mm256_loadu_ps(xt.data() + k * n + i),
                                     _mm256_loadu_ps(yt.data() + k * n + i));
      r2 = _mm256_fmadd_ps(d, d, r2);
    }
    accumulate_f32(pwa(r2), a_lo, a_hi);
    accumulate_f32(pwb(r2), b_lo, b_hi);
  }
  DualSums out{hsum(a_lo) + hsum(a_hi), hsum(b_lo) + hsum(b_hi)};
  for (; i < n; ++i) {
    const float r2 = sq_dist_scalar<float>(x + i * dim, y + i * dim, dim);
    out.a += static_cast<double>(apply_pow(pa, r2));
    out.b += static_cast<double>(apply_pow(pb, r2));
  }
  return out;
}

inline __m256d vec_abs(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

double l1_cross_impl(const double* x, std::size_t nx, const double* y, std::size_t ny,
                     std::size_t dim) {
  const std::vector<double> yt = transpose_points<double>(y, ny, dim);
  double total = 0.0;
  for (std::size_t i = 0; i < nx; ++i) {
    const double* xi = x + i * dim;
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= ny; j += 4) {
      __m256d r = _mm256_setzero_pd();
      for (std::size_t k = 0; k < dim; ++k) {
        const __m256d d =
            _mm256_sub_pd(_mm256_set1_pd(xi[k]), _mm256_loadu_pd(yt.data() + k * ny + j));
        r = _mm256_add_pd(r, vec_abs(d));
      }
      acc = _mm256_add_pd(acc, r);
    }
    double row = hsum(acc);
    for (; j < ny; ++j) {
      double r = 0.0;
      for (std::size_t k = 0; k < dim; ++k) r += std::fabs(xi[k] - y[j * dim + k]);
      row += r;
    }
    total += row;
  }
  return total;
}

double l1_within_impl(const double* x, std::size_t n, std::size_t dim) {
  const std::vector<double> xt = transpose_points<double>(x, n, dim);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double* xi = x + i * dim;
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = i + 1;
    for (; j + 4 <= n; j += 4) {
      __m256d r = _mm256_setzero_pd();
      for (std::size_t k = 0; k < dim; ++k) {
        const __m256d d =
            _mm256_sub_pd(_mm256_set1_pd(xi[k]), _mm256_loadu_pd(xt.data() + k * n + j));
        r = _mm256_add_pd(r, vec_abs(d));
      }
      acc = _mm256_add_pd(acc, r);
    }
    double row = hsum(acc);
    for (; j < n; ++j) {
      double r = 0.0;
      for (std::size_t k = 0; k < dim; ++k) r += std::fabs(xi[k] - x[j * dim + k]);
      row += r;
    }
    total += row;
  }
  return total;
}

double l1_paired_impl(const double* x, const double* y, std::size_t n, std::size_t dim) {
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    for (std::size_t k = 0; k < dim; ++k) r += std::fabs(x[i * dim + k] - y[i * dim + k]);
    total += r;
  }
  return total;
}

double l1_norm_impl(const double* x, std::size_t n, std::size_t dim) {
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    for (std::size_t k = 0; k < dim; ++k) r += std::fabs(x[i * dim + k]);
    total += r;
  }
  return total;
}

}  // namespace

const Backend& avx2_backend() {
  static const Backend backend = {
      pow_cross_impl,
      pow_within_impl,
      pow_paired_impl,
      pow_norm_impl,
      dual_cross_impl,
      dual_within_impl,
      dual_paired_impl,
      dual_cross_f32_impl,
      dual_within_f32_impl,
      dual_paired_f32_impl,
      l1_cross_impl,
      l1_within_impl,
      l1_paired_impl,
      l1_norm_impl,
  };
  return backend;
}

}  // namespace kdist::simd::detail
