#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "kdist/simd.hpp"

// Shared between the scalar and AVX2 translation units. Both backends must
// classify powers identically so that per-element results agree bit-for-bit
// on the fast paths (sqrt, integer and half-integer powers are all built from
// correctly rounded primitives).

namespace kdist::simd::detail {

enum class PowKind {
  identity,   // p == 1
  sqrt_half,  // p == 0.5
  int_pow,    // p integer, |p| <= 4
  half_int,   // 2p odd integer, |2p| <= 9
  generic,    // std::pow
};

struct PowPlan {
  PowKind kind = PowKind::generic;
  int chain = 0;  // multiplication count: r2^|p| or sqrt(r2)^|2p|
  bool reciprocal = false;
  double p = 0.0;
  double scale = 1.0;
};

inline PowPlan make_pow_plan(double p, double scale) {
  PowPlan plan;
  plan.p = p;
  plan.scale = scale;
  if (p == 1.0) {
    plan.kind = PowKind::identity;
  } else if (p == 0.5) {
    plan.kind = PowKind::sqrt_half;
  } else if (p == std::nearbyint(p) && std::abs(p) <= 4.0 && p != 0.0) {
    plan.kind = PowKind::int_pow;
    plan.chain = static_cast<int>(std::abs(p));
    plan.reciprocal = p < 0.0;
  } else if (2.0 * p == std::nearbyint(2.0 * p) && std::abs(2.0 * p) <= 9.0 && p != 0.0) {
    plan.kind = PowKind::half_int;
    plan.chain = static_cast<int>(std::abs(2.0 * p));
    plan.reciprocal = p < 0.0;
  } else {
    plan.kind = PowKind::generic;
  }
  return plan;
}

template <typename T>
inline T chain_pow(T base, int n) {
  T r = base;
  for (int i = 1; i < n; ++i) r *= base;
  return r;
}

template <typename T>
inline T apply_pow(const PowPlan& plan, T r2) {
  const T scale = static_cast<T>(plan.scale);
  switch (plan.kind) {
    case PowKind::identity:
      return r2 * scale;
    case PowKind::sqrt_half:
      return std::sqrt(r2) * scale;
    case PowKind::int_pow: {
      const T v = chain_pow(r2, plan.chain);
      return (plan.reciprocal ? T(1) / v : v) * scale;
    }
    case PowKind::half_int: {
      const T v = chain_pow(std::sqrt(r2), plan.chain);
      return (plan.reciprocal ? T(1) / v : v) * scale;
    }
    case PowKind::generic:
    default:
      return std::pow(r2, static_cast<T>(plan.p)) * scale;
  }
}

// Column-major copy: out[k*n + i] = x[i*dim + k].
template <typename T>
inline std::vector<T> transpose_points(const double* x, std::size_t n, std::size_t dim) {
  std::vector<T> out(n * dim);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < dim; ++k) out[k * n + i] = static_cast<T>(x[i * dim + k]);
  return out;
}

struct Backend {
  double (*pow_cross)(const double*, std::size_t, const double*, std::size_t, std::size_t,
                      const PowPlan&);
  double (*pow_within)(const double*, std::size_t, std::size_t, const PowPlan&);
  double (*pow_paired)(const double*, const double*, std::size_t, std::size_t, const PowPlan&);
  double (*pow_norm)(const double*, std::size_t, std::size_t, const PowPlan&);
  DualSums (*dual_cross)(const double*, std::size_t, const double*, std::size_t, std::size_t,
                         const PowPlan&, const PowPlan&);
  DualSums (*dual_within)(const double*, std::size_t, std::size_t, const PowPlan&,
                          const PowPlan&);
  DualSums (*dual_paired)(const double*, const double*, std::size_t, std::size_t,
                          const PowPlan&, const PowPlan&);
  DualSums (*dual_cross_f32)(const double*, std::size_t, const double*, std::size_t,
                             std::size_t, const PowPlan&, const PowPlan&);
  DualSums (*dual_within_f32)(const double*, std::size_t, std::size_t, const PowPlan&,
                              const PowPlan&);
  DualSums (*dual_paired_f32)(const double*, const double*, std::size_t, std::size_t,
                              const PowPlan&, const PowPlan&);
  double (*l1_cross)(const double*, std::size_t, const double*, std::size_t, std::size_t);
  double (*l1_within)(const double*, std::size_t, std::size_t);
  double (*l1_paired)(const double*, const double*, std::size_t, std::size_t);
  double (*l1_norm)(const double*, std::size_t, std::size_t);
};

const Backend& scalar_backend();
#if defined(KDIST_HAVE_AVX2)
const Backend& avx2_backend();
#endif
const Backend& active_backend();

}  // namespace kdist::simd::detail
