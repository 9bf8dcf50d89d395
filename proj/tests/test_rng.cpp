#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "kdist/rng.hpp"

using namespace kdist;

TEST_SUITE_BEGIN("rng");

TEST_CASE("streams replay bit-identically") {
  RngStream a(SeedSpec{42, 7});
  RngStream b(SeedSpec{42, 7});
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct streams differ") {
  RngStream a(SeedSpec{42, 7});
  RngStream b(SeedSpec{42, 8});
  RngStream c(SeedSpec{43, 7});
  int same_ab = 0;
  int same_ac = 0;
  for (int i = 0; i < 256; ++i) {
    const auto va = a.next_u64();
    if (va == b.next_u64()) ++same_ab;
    if (va == c.next_u64()) ++same_ac;
  }
  CHECK(same_ab == 0);
  CHECK(same_ac == 0);
}

TEST_CASE("substream derivation is collision-free over a tree slice") {
  std::set<std::uint64_t> seen;
  const SeedSpec root{9, 3};
  for (std::uint64_t k = 0; k < 2000; ++k) seen.insert(root.substream(k).stream_index);
  for (std::uint64_t k = 0; k < 50; ++k) {
    const SeedSpec child = root.substream(k);
    for (std::uint64_t j = 0; j < 40; ++j) seen.insert(child.substream(j).stream_index);
  }
  CHECK(seen.size() == 2000 + 50 * 40);
}

TEST_CASE("uniform01 lies in (0,1] and fills the unit interval") {
  RngStream rng(SeedSpec{1, 0});
  double lo = 1.0;
  double hi = 0.0;
  double mean = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    mean += u;
  }
  mean /= n;
  CHECK(lo < 1e-4);
  CHECK(hi > 1.0 - 1e-4);
  CHECK(std::abs(mean - 0.5) < 4.0 / std::sqrt(12.0 * n));
}

TEST_CASE("gaussian moments") {
  RngStream rng(SeedSpec{2, 0});
  const int n = 200000;
  double sum = 0.0;
  double sum_sq = 0.0;
  double sum_4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.gaussian();
    sum += z;
    sum_sq += z * z;
    sum_4 += z * z * z * z;
  }
  CHECK(std::abs(sum / n) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(sum_sq / n == doctest::Approx(1.0).epsilon(0.02));
  CHECK(sum_4 / n == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("gamma matches its mean and variance, including shape < 1") {
  for (double shape : {0.125, 0.6, 1.0, 2.5, 8.0}) {
    RngStream rng(SeedSpec{3, static_cast<std::uint64_t>(shape * 1000)});
    const int n = 200000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double g = rng.gamma(shape);
      CHECK(g >= 0.0);
      sum += g;
      sum_sq += g * g;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(mean == doctest::Approx(shape).epsilon(0.03));
    CHECK(var == doctest::Approx(shape).epsilon(0.08));
  }
}

TEST_CASE("chi squared dof accounting") {
  RngStream rng(SeedSpec{4, 0});
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rng.chi_squared(3.0);
  CHECK(sum / n == doctest::Approx(3.0).epsilon(0.03));
}

TEST_SUITE_END();
