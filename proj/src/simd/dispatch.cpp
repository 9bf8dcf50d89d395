#include <atomic>
#include <cstdlib>
#include <cstring>

#include "kdist/errors.hpp"
#include "pair_sums_impl.hpp"

namespace kdist::simd {

namespace detail {
namespace {

Isa detect_isa() {
#if defined(KDIST_HAVE_AVX2)
  if (const char* env = std::getenv("KDIST_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
    if (std::strcmp(env, "avx2") == 0) return Isa::avx2;
  }
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::avx2;
#endif
  return Isa::scalar;
}

std::atomic<Isa>& isa_state() {
  static std::atomic<Isa> state{detect_isa()};
  return state;
}

}  // namespace

const Backend& active_backend() {
#if defined(KDIST_HAVE_AVX2)
  if (isa_state().load(std::memory_order_relaxed) == Isa::avx2) return avx2_backend();
#endif
  return scalar_backend();
}

}  // namespace detail

Isa active_isa() { return detail::isa_state().load(std::memory_order_relaxed); }

bool isa_available(Isa isa) {
  if (isa == Isa::scalar) return true;
#if defined(KDIST_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

void force_isa(Isa isa) {
  if (!isa_available(isa)) throw validation_error("requested instruction set is not available");
  detail::isa_state().store(isa, std::memory_order_relaxed);
}

void reset_isa() { detail::isa_state().store(detail::detect_isa(), std::memory_order_relaxed); }

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

using detail::make_pow_plan;

double sum_pow_cross(const double* x, std::size_t nx, const double* y, std::size_t ny,
                     std::size_t dim, double p, double scale) {
  return detail::active_backend().pow_cross(x, nx, y, ny, dim, make_pow_plan(p, scale));
}

double sum_pow_within(const double* x, std::size_t n, std::size_t dim, double p, double scale) {
  return detail::active_backend().pow_within(x, n, dim, make_pow_plan(p, scale));
}

double sum_pow_paired(const double* x, const double* y, std::size_t n, std::size_t dim, double p,
                      double scale) {
  return detail::active_backend().pow_paired(x, y, n, dim, make_pow_plan(p, scale));
}

double sum_pow_norm(const double* x, std::size_t n, std::size_t dim, double p, double scale) {
  return detail::active_backend().pow_norm(x, n, dim, make_pow_plan(p, scale));
}

DualSums sum_dual_pow_cross(const double* x, std::size_t nx, const double* y, std::size_t ny,
                            std::size_t dim, double pa, double sa, double pb, double sb) {
  return detail::active_backend().dual_cross(x, nx, y, ny, dim, make_pow_plan(pa, sa),
                                             make_pow_plan(pb, sb));
}

DualSums sum_dual_pow_within(const double* x, std::size_t n, std::size_t dim, double pa,
                             double sa, double pb, double sb) {
  return detail::active_backend().dual_within(x, n, dim, make_pow_plan(pa, sa),
                                              make_pow_plan(pb, sb));
}

DualSums sum_dual_pow_paired(const double* x, const double* y, std::size_t n, std::size_t dim,
                             double pa, double sa, double pb, double sb) {
  return detail::active_backend().dual_paired(x, y, n, dim, make_pow_plan(pa, sa),
                                              make_pow_plan(pb, sb));
}

DualSums sum_dual_pow_cross_f32(const double* x, std::size_t nx, const double* y, std::size_t ny,
                                std::size_t dim, double pa, double sa, double pb, double sb) {
  return detail::active_backend().dual_cross_f32(x, nx, y, ny, dim, make_pow_plan(pa, sa),
                                                 make_pow_plan(pb, sb));
}

DualSums sum_dual_pow_within_f32(const double* x, std::size_t n, std::size_t dim, double pa,
                                 double sa, double pb, double sb) {
  return detail::active_backend().dual_within_f32(x, n, dim, make_pow_plan(pa, sa),
                                                  make_pow_plan(pb, sb));
}

DualSums sum_dual_pow_paired_f32(const double* x, const double* y, std::size_t n,
                                 std::size_t dim, double pa, double sa, double pb, double sb) {
  return detail::active_backend().dual_paired_f32(x, y, n, dim, make_pow_plan(pa, sa),
                                                  make_pow_plan(pb, sb));
}

double sum_l1_cross(const double* x, std::size_t nx, const double* y, std::size_t ny,
                    std::size_t dim) {
  return detail::active_backend().l1_cross(x, nx, y, ny, dim);
}

double sum_l1_within(const double* x, std::size_t n, std::size_t dim) {
  return detail::active_backend().l1_within(x, n, dim);
}

double sum_l1_paired(const double* x, const double* y, std::size_t n, std::size_t dim) {
  return detail::active_backend().l1_paired(x, y, n, dim);
}

double sum_l1_norm(const double* x, std::size_t n, std::size_t dim) {
  return detail::active_backend().l1_norm(x, n, dim);
}

}  // namespace kdist::simd
