#include <cmath>

#include "pair_sums_impl.hpp"

// Portable reference backend. Row partial sums keep the accumulation order
// fixed so results are reproducible run to run.

namespace kdist::simd::detail {
namespace {

template <typename T>
inline T sq_dist(const double* a, const double* b, std::size_t dim) {
  T r2 = 0;
  for (std::size_t k = 0; k < dim; ++k) {
    const T d = static_cast<T>(a[k]) - static_cast<T>(b[k]);
    r2 += d * d;
  }
  return r2;
}

template <typename T>
double pow_cross_impl(const double* x, std::size_t nx, const double* y, std::size_t ny,
                      std::size_t dim, const PowPlan& plan) {
  double total = 0.0;
  for (std::size_t i = 0; i < nx; ++i) {
    double row = 0.0;
    const double* xi = x + i * dim;
    for (std::size_t j = 0; j < ny; ++j)
      row += static_cast<double>(apply_pow(plan, sq_dist<T>(xi, y + j * dim, dim)));
    total += row;
  }
  return total;
}

template <typename T>
double pow_within_impl(const double* x, std::size_t n, std::size_t dim, const PowPlan& plan) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double row = 0.0;
    const double* xi = x + i * dim;
    for (std::size_t j = i + 1; j < n; ++j)
      row += static_cast<double>(apply_pow(plan, sq_dist<T>(xi, x + j * dim, dim)));
    total += row;
  }
  return total;
}

template <typename T>
double pow_paired_impl(const double* x, const double* y, std::size_t n, std::size_t dim,
                       const PowPlan& plan) {
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    total += static_cast<double>(apply_pow(plan, sq_dist<T>(x + i * dim, y + i * dim, dim)));
  return total;
}

double pow_norm_impl(const double* x, std::size_t n, std::size_t dim, const PowPlan& plan) {
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r2 = 0.0;
    for (std::size_t k = 0; k < dim; ++k) r2 += x[i * dim + k] * x[i * dim + k];
    total += apply_pow(plan, r2);
  }
  return total;
}

template <typename T>
DualSums dual_cross_impl(const double* x, std::size_t nx, const double* y, std::size_t ny,
                         std::size_t dim, const PowPlan& pa, const PowPlan& pb) {
  DualSums out;
  for (std::size_t i = 0; i < nx; ++i) {
    double ra = 0.0, rb = 0.0;
    const double* xi = x + i * dim;
    for (std::size_t j = 0; j < ny; ++j) {
      const T r2 = sq_dist<T>(xi, y + j * dim, dim);
      ra += static_cast<double>(apply_pow(pa, r2));
      rb += static_cast<double>(apply_pow(pb, r2));
    }
    out.a += ra;
    out.b += rb;
  }
  return out;
}

template <typename T>
DualSums dual_within_impl(const double* x, std::size_t n, std::size_t dim, const PowPlan& pa,
                          const PowPlan& pb) {
  DualSums out;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double ra = 0.0, rb = 0.0;
    const double* xi = x + i * dim;
    for (std::size_t j = i + 1; j < n; ++j) {
      const T r2 = sq_dist<T>(xi, x + j * dim, dim);
      ra += static_cast<double>(apply_pow(pa, r2));
      rb += static_cast<double>(apply_pow(pb, r2));
    }
    out.a += ra;
    out.b += rb;
  }
  return out;
}

template <typename T>
DualSums dual_paired_impl(const double* x, const double* y, std::size_t n, std::size_t dim,
                          const PowPlan& pa, const PowPlan& pb) {
  DualSums out;
  for (std::size_t i = 0; i < n; ++i) {
    const T r2 = sq_dist<T>(x + i * dim, y + i * dim, dim);
    out.a += static_cast<double>(apply_pow(pa, r2));
    out.b += static_cast<double>(apply_pow(pb, r2));
  }
  return out;
}

inline double l1_dist(const double* a, const double* b, std::size_t dim) {
  double r = 0.0;
  for (std::size_t k = 0; k < dim; ++k) r += std::fabs(a[k] - b[k]);
  return r;
}

double l1_cross_impl(const double* x, std::size_t nx, const double* y, std::size_t ny,
                     std::size_t dim) {
  double total = 0.0;
  for (std::size_t i = 0; i < nx; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < ny; ++j) row += l1_dist(x + i * dim, y + j * dim, dim);
    total += row;
  }
  return total;
}

double l1_within_impl(const double* x, std::size_t n, std::size_t dim) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double row = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) row += l1_dist(x + i * dim, x + j * dim, dim);
    total += row;
  }
  return total;
}

double l1_paired_impl(const double* x, const double* y, std::size_t n, std::size_t dim) {
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += l1_dist(x + i * dim, y + i * dim, dim);
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

const Backend& scalar_backend() {
  static const Backend backend = {
      pow_cross_impl<double>,
      pow_within_impl<double>,
      pow_paired_impl<double>,
      pow_norm_impl,
      dual_cross_impl<double>,
      dual_within_impl<double>,
      dual_paired_impl<double>,
      dual_cross_impl<float>,
      dual_within_impl<float>,
      dual_paired_impl<float>,
      l1_cross_impl,
      l1_within_impl,
      l1_paired_impl,
      l1_norm_impl,
  };
  return backend;
}

}  // namespace kdist::simd::detail
