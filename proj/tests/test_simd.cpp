#include <doctest.h>

#include <cmath>
#include <vector>

#include "kdist/rng.hpp"
#include "kdist/simd.hpp"

using namespace kdist;

TEST_SUITE_BEGIN("simd");

namespace {

// Independent long-double brute force over the same pair sets.
long double brute_pow_cross(const std::vector<double>& x, std::size_t nx,
                            const std::vector<double>& y, std::size_t ny, std::size_t dim,
                            double p, double scale) {
  long double total = 0.0L;
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) {
      long double r2 = 0.0L;
      for (std::size_t k = 0; k < dim; ++k) {
        const long double d =
            static_cast<long double>(x[i * dim + k]) - static_cast<long double>(y[j * dim + k]);
        r2 += d * d;
      }
      total += powl(r2, static_cast<long double>(p)) * static_cast<long double>(scale);
    }
  return total;
}

std::vector<double> random_points(RngStream& rng, std::size_t n, std::size_t dim) {
  std::vector<double> pts(n * dim);
  for (auto& v : pts) v = rng.uniform(-3.0, 3.0);
  return pts;
}

struct IsaGuard {
  ~IsaGuard() { simd::reset_isa(); }
};

}  // namespace

TEST_CASE("pow pair sums match a long-double brute force") {
  RngStream rng(SeedSpec{11, 0});
  for (std::size_t dim : {std::size_t{1}, std::size_t{2}, std::size_t{16}}) {
    const std::size_t nx = 23;
    const std::size_t ny = 17;
    const auto x = random_points(rng, nx, dim);
    const auto y = random_points(rng, ny, dim);
    for (double p : {0.5, 1.0, -3.0, -2.5, 0.37}) {
      const double expected =
          static_cast<double>(brute_pow_cross(x, nx, y, ny, dim, p, 0.75));
      const double got = simd::sum_pow_cross(x.data(), nx, y.data(), ny, dim, p, 0.75);
      CHECK(got == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("scalar and active backends agree") {
  IsaGuard guard;
  if (!simd::isa_available(simd::Isa::avx2)) {
    MESSAGE("avx2 not available; dispatch test degenerates to scalar==scalar");
  }
  RngStream rng(SeedSpec{12, 0});
  for (std::size_t dim : {std::size_t{1}, std::size_t{3}, std::size_t{16}}) {
    for (std::size_t n : {std::size_t{2}, std::size_t{7}, std::size_t{64}, std::size_t{129}}) {
      const auto x = random_points(rng, n, dim);
      const auto y = random_points(rng, n, dim);
      for (double p : {0.5, 1.0, -3.0, -2.5, 0.37, 2.0}) {
        simd::force_isa(simd::Isa::scalar);
        const double s_within = simd::sum_pow_within(x.data(), n, dim, p);
        const double s_cross = simd::sum_pow_cross(x.data(), n, y.data(), n, dim, p);
        const double s_paired = simd::sum_pow_paired(x.data(), y.data(), n, dim, p);
        const double s_norm = simd::sum_pow_norm(x.data(), n, dim, p);
        const double s_l1 = simd::sum_l1_cross(x.data(), n, y.data(), n, dim);
        simd::reset_isa();
        if (simd::isa_available(simd::Isa::avx2)) simd::force_isa(simd::Isa::avx2);
        CHECK(simd::sum_pow_within(x.data(), n, dim, p) ==
              doctest::Approx(s_within).epsilon(1e-11));
        CHECK(simd::sum_pow_cross(x.data(), n, y.data(), n, dim, p) ==
              doctest::Approx(s_cross).epsilon(1e-11));
        CHECK(simd::sum_pow_paired(x.data(), y.data(), n, dim, p) ==
              doctest::Approx(s_paired).epsilon(1e-11));
        CHECK(simd::sum_pow_norm(x.data(), n, dim, p) == doctest::Approx(s_norm).epsilon(1e-11));
        CHECK(simd::sum_l1_cross(x.data(), n, y.data(), n, dim) ==
              doctest::Approx(s_l1).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("dual sums equal two single sums") {
  RngStream rng(SeedSpec{13, 0});
  const std::size_t n = 41;
  const std::size_t dim = 16;
  const auto x = random_points(rng, n, dim);
  const auto y = random_points(rng, n, dim);
  const simd::DualSums within = simd::sum_dual_pow_within(x.data(), n, dim, 0.5, 1.0, -3.0, 2.0);
  CHECK(within.a ==
        doctest::Approx(simd::sum_pow_within(x.data(), n, dim, 0.5, 1.0)).epsilon(1e-12));
  CHECK(within.b ==
        doctest::Approx(simd::sum_pow_within(x.data(), n, dim, -3.0, 2.0)).epsilon(1e-12));
  const simd::DualSums paired =
      simd::sum_dual_pow_paired(x.data(), y.data(), n, dim, 0.5, 1.0, -3.0, 2.0);
  CHECK(paired.a ==
        doctest::Approx(simd::sum_pow_paired(x.data(), y.data(), n, dim, 0.5, 1.0)).epsilon(1e-12));
  CHECK(paired.b ==
        doctest::Approx(simd::sum_pow_paired(x.data(), y.data(), n, dim, -3.0, 2.0)).epsilon(1e-12));
}

TEST_CASE("within sums relate to cross sums on identical inputs") {
  RngStream rng(SeedSpec{14, 0});
  const std::size_t n = 33;
  const std::size_t dim = 2;
  const auto x = random_points(rng, n, dim);
  // cross(x, x) counts every ordered pair including the zero diagonal.
  const double cross = simd::sum_pow_cross(x.data(), n, x.data(), n, dim, 0.5);
  const double within = simd::sum_pow_within(x.data(), n, dim, 0.5);
  CHECK(cross == doctest::Approx(2.0 * within).epsilon(1e-11));
}

TEST_CASE("float32 dual sums: scalar vs active backend and overflow semantics") {
  IsaGuard guard;
  RngStream rng(SeedSpec{15, 0});
  const std::size_t n = 37;
  const std::size_t dim = 16;
  const auto x = random_points(rng, n, dim);
  const auto y = random_points(rng, n, dim);

  simd::force_isa(simd::Isa::scalar);
  const simd::DualSums scalar =
      simd::sum_dual_pow_within_f32(x.data(), n, dim, 0.5, 1.0, -3.0, 1.0);
  simd::reset_isa();
  if (simd::isa_available(simd::Isa::avx2)) simd::force_isa(simd::Isa::avx2);
  const simd::DualSums active =
      simd::sum_dual_pow_within_f32(x.data(), n, dim, 0.5, 1.0, -3.0, 1.0);
  CHECK(active.a == doctest::Approx(scalar.a).epsilon(1e-5));
  CHECK(active.b == doctest::Approx(scalar.b).epsilon(1e-5));

  // A coordinate beyond float range must poison the H=1/2 sum but leave the
  // negative-power sum finite (the overflowed pair contributes zero).
  auto huge = x;
  huge[0] = 3e38;
  const simd::DualSums poisoned =
      simd::sum_dual_pow_cross_f32(huge.data(), n, y.data(), n, dim, 0.5, 1.0, -3.0, 1.0);
  CHECK(!std::isfinite(poisoned.a));
  CHECK(std::isfinite(poisoned.b));
}

TEST_SUITE_END();
