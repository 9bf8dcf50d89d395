#pragma once

#include <cstddef>

namespace kdist::simd {

// Pairwise reduction kernels behind the distance estimators. Every routine has
// a portable scalar implementation and an AVX2 implementation; the active one
// is chosen at runtime (override with force_isa or KDIST_SIMD=scalar|avx2).
enum class Isa { scalar, avx2 };

Isa active_isa();
bool isa_available(Isa isa);
void force_isa(Isa isa);
void reset_isa();
const char* isa_name(Isa isa);

struct DualSums {
  double a = 0.0;
  double b = 0.0;
};

// Points are row-major: x[i*dim + k] is coordinate k of point i.
// Each term is (‖xi − yj‖²)^p · scale; p = H for fractional kernels,
// p = alpha − d/2 for Riesz kernels.
double sum_pow_cross(const double* x, std::size_t nx, const double* y, std::size_t ny,
                     std::size_t dim, double p, double scale = 1.0);
// Unordered pairs i < j.
double sum_pow_within(const double* x, std::size_t n, std::size_t dim, double p,
                      double scale = 1.0);
double sum_pow_paired(const double* x, const double* y, std::size_t n, std::size_t dim,
                      double p, double scale = 1.0);
// Terms (‖xi‖²)^p · scale.
double sum_pow_norm(const double* x, std::size_t n, std::size_t dim, double p,
                    double scale = 1.0);

// One pass over the pair squared distances feeding two transforms at once.
DualSums sum_dual_pow_cross(const double* x, std::size_t nx, const double* y, std::size_t ny,
                            std::size_t dim, double pa, double sa, double pb, double sb);
DualSums sum_dual_pow_within(const double* x, std::size_t n, std::size_t dim, double pa,
                             double sa, double pb, double sb);
DualSums sum_dual_pow_paired(const double* x, const double* y, std::size_t n, std::size_t dim,
                             double pa, double sa, double pb, double sb);

// Same pair sums with all element arithmetic (difference, square, power,
// scale) carried out in float32; only the accumulators are double. This is
// the reduced-precision study mode, so overflow to inf/NaN is intentional.
DualSums sum_dual_pow_cross_f32(const double* x, std::size_t nx, const double* y,
                                std::size_t ny, std::size_t dim, double pa, double sa,
                                double pb, double sb);
DualSums sum_dual_pow_within_f32(const double* x, std::size_t n, std::size_t dim, double pa,
                                 double sa, double pb, double sb);
DualSums sum_dual_pow_paired_f32(const double* x, const double* y, std::size_t n,
                                 std::size_t dim, double pa, double sa, double pb, double sb);

// Terms ‖xi − yj‖₁ (additive kernels).
double sum_l1_cross(const double* x, std::size_t nx, const double* y, std::size_t ny,
                    std::size_t dim);
double sum_l1_within(const double* x, std::size_t n, std::size_t dim);
double sum_l1_paired(const double* x, const double* y, std::size_t n, std::size_t dim);
double sum_l1_norm(const double* x, std::size_t n, std::size_t dim);

}  // namespace kdist::simd
