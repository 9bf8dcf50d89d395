#include <doctest.h>

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <vector>

#include "kdist/errors.hpp"
#include "kdist/measures.hpp"

using namespace kdist;

TEST_SUITE_BEGIN("measures");

TEST_CASE("point mass sampling is degenerate") {
  const EmpiricalMeasure m = sample_distribution(PointMass{{3.0}}, 2, SeedSpec{1, 0});
  REQUIRE(m.size() == 2);
  CHECK(m.coord(0, 0) == 3.0);
  CHECK(m.coord(1, 0) == 3.0);
}

TEST_CASE("gaussian sampling obeys CLT error bounds") {
  const std::size_t n = 100000;
  const EmpiricalMeasure m = sample_distribution(Gaussian1D{0.0, 1.0}, n, SeedSpec{2, 0});
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += m.coord(i, 0);
    sum_sq += m.coord(i, 0) * m.coord(i, 0);
  }
  const double mean = sum / static_cast<double>(n);
  const double var = sum_sq / static_cast<double>(n) - mean * mean;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}

namespace {

// Reference Student-t sampler along an independent route: chi²(3) as a sum of
// three squared normals, plain rand48-free normals from the same stream type.
double reference_t3_variance(std::size_t n) {
  RngStream rng(SeedSpec{77, 0});
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = rng.gaussian();
    const double c1 = rng.gaussian();
    const double c2 = rng.gaussian();
    const double c3 = rng.gaussian();
    const double s = c1 * c1 + c2 * c2 + c3 * c3;
    const double t = z / std::sqrt(s / 3.0);
    sum += t;
    sum_sq += t * t;
  }
  const double mean = sum / static_cast<double>(n);
  return sum_sq / static_cast<double>(n) - mean * mean;
}

}  // namespace

TEST_CASE("student-t sampling matches the f/(f-2) variance and a reference sampler") {
  const std::size_t n = 100000;
  const MultivariateStudentT spec{3.0, Eigen::MatrixXd::Identity(2, 2)};
  const EmpiricalMeasure m = sample_distribution(spec, n, SeedSpec{3, 0});
  REQUIRE(m.dim() == 2);
  for (int k = 0; k < 2; ++k) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += m.coord(i, k);
      sum_sq += m.coord(i, k) * m.coord(i, k);
    }
    const double mean = sum / static_cast<double>(n);
    const double var = sum_sq / static_cast<double>(n) - mean * mean;
    CHECK(var == doctest::Approx(3.0).epsilon(0.10));
  }
  CHECK(reference_t3_variance(n) == doctest::Approx(3.0).epsilon(0.10));
}

TEST_CASE("student-t tails are heavy: fourth moment exceeds the gaussian value") {
  const std::size_t n = 100000;
  const MultivariateStudentT spec{3.0, Eigen::MatrixXd::Identity(1, 1)};
  const EmpiricalMeasure m = sample_distribution(spec, n, SeedSpec{4, 0});
  double sum_sq = 0.0;
  double sum_4 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = m.coord(i, 0);
    sum_sq += v * v;
    sum_4 += v * v * v * v;
  }
  const double var = sum_sq / static_cast<double>(n);
  const double kurtosis = sum_4 / static_cast<double>(n) / (var * var);
  CHECK(kurtosis > 3.0);
}

TEST_CASE("sampling is deterministic per (seed, stream)") {
  const DistributionSpec spec = Gaussian1D{0.5, 2.0};
  const EmpiricalMeasure a = sample_distribution(spec, 64, SeedSpec{10, 5});
  const EmpiricalMeasure b = sample_distribution(spec, 64, SeedSpec{10, 5});
  const EmpiricalMeasure c = sample_distribution(spec, 64, SeedSpec{10, 6});
  for (std::size_t i = 0; i < 64; ++i) CHECK(a.coord(i, 0) == b.coord(i, 0));
  int diff = 0;
  for (std::size_t i = 0; i < 64; ++i) diff += a.coord(i, 0) != c.coord(i, 0);
  CHECK(diff == 64);
}

TEST_CASE("student scale matrix entries and positive definiteness") {
  const std::vector<double> sigma(16, 1.0);
  const Eigen::MatrixXd gamma = build_student_scale(16, 0.05, sigma);
  for (int i = 0; i < 16; ++i) CHECK(gamma(i, i) == doctest::Approx(1.0));
  CHECK(gamma(0, 1) == doctest::Approx(std::exp(-1.0 / (0.8 * 0.8))).epsilon(1e-12));
  CHECK(gamma(0, 1) == doctest::Approx(0.2096).epsilon(1e-3));
  Eigen::LLT<Eigen::MatrixXd> llt(gamma);
  CHECK(llt.info() == Eigen::Success);
}

TEST_CASE("student scale validation") {
  CHECK_THROWS_AS(build_student_scale(4, 0.0, {1, 1, 1, 1}), validation_error);
  CHECK_THROWS_AS(build_student_scale(4, 0.1, {1, -1, 1, 1}), validation_error);
  CHECK_THROWS_AS(build_student_scale(4, 0.1, {1, 1}), validation_error);
}

TEST_CASE("cdf difference integral: hand values") {
  const auto x0 = EmpiricalMeasure::from_1d({0.0});
  const auto y1 = EmpiricalMeasure::from_1d({1.0});
  CHECK(empirical_cdf_diff_l2(x0, y1) == doctest::Approx(1.0).epsilon(1e-15));

  const auto x = EmpiricalMeasure::from_1d({0.0, 2.0});
  const auto y = EmpiricalMeasure::from_1d({1.0, 3.0});
  CHECK(empirical_cdf_diff_l2(x, y) == doctest::Approx(0.5).epsilon(1e-15));

  const auto z = EmpiricalMeasure::from_1d({-1.0, 0.7, 3.2});
  CHECK(empirical_cdf_diff_l2(z, z) == 0.0);
}

TEST_CASE("cdf difference integral: symmetry, positivity, zero iff equal multisets") {
  RngStream rng(SeedSpec{5, 0});
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t nx = 1 + rng.next_u64() % 12;
    const std::size_t ny = 1 + rng.next_u64() % 12;
    std::vector<double> xs(nx);
    std::vector<double> ys(ny);
    for (auto& v : xs) v = rng.uniform(-5, 5);
    for (auto& v : ys) v = rng.uniform(-5, 5);
    const auto x = EmpiricalMeasure::from_1d(xs);
    const auto y = EmpiricalMeasure::from_1d(ys);
    const double fwd = empirical_cdf_diff_l2(x, y);
    const double rev = empirical_cdf_diff_l2(y, x);
    CHECK(fwd == doctest::Approx(rev).epsilon(1e-14));
    CHECK(fwd >= 0.0);
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    if (xs == ys) CHECK(fwd == 0.0);
    if (nx == ny && xs != ys) CHECK(fwd > 0.0);
  }
}

TEST_CASE("cdf difference rejects multivariate input") {
  const EmpiricalMeasure m2({0.0, 0.0}, 2);
  CHECK_THROWS_AS(empirical_cdf_diff_l2(m2, m2), validation_error);
}

TEST_CASE("empirical characteristic function values") {
  const auto m = EmpiricalMeasure::from_1d({0.0, M_PI});
  const double zero = 0.0;
  CHECK(empirical_char_fn(m, std::span(&zero, 1)) == std::complex<double>(1.0, 0.0));
  const double one = 1.0;
  CHECK(std::abs(empirical_char_fn(m, std::span(&one, 1))) < 1e-15);

  const auto single = EmpiricalMeasure::from_1d({1.0});
  const double half_pi = M_PI / 2.0;
  const auto v = empirical_char_fn(single, std::span(&half_pi, 1));
  CHECK(v.real() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(v.imag() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("characteristic function modulus never exceeds one") {
  RngStream rng(SeedSpec{6, 0});
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> xs(1 + rng.next_u64() % 20);
    for (auto& v : xs) v = rng.uniform(-10, 10);
    const auto m = EmpiricalMeasure::from_1d(xs);
    const double omega = rng.uniform(-50, 50);
    CHECK(std::abs(empirical_char_fn(m, std::span(&omega, 1))) <= 1.0 + 1e-12);
  }
}

TEST_CASE("validation errors") {
  CHECK_THROWS_AS(sample_distribution(Gaussian1D{}, 0, SeedSpec{}), validation_error);
  Eigen::MatrixXd bad(2, 2);
  bad << 1.0, 2.0, 2.0, 1.0;  // indefinite
  CHECK_THROWS_AS(sample_distribution(MultivariateStudentT{1.0, bad}, 4, SeedSpec{}),
                  validation_error);
  CHECK_THROWS_AS(sample_distribution(DiscretePmf{{0.5, 0.4}}, 4, SeedSpec{}), validation_error);
  const auto m = EmpiricalMeasure::from_1d({1.0});
  const std::vector<double> omega2{1.0, 2.0};
  CHECK_THROWS_AS(empirical_char_fn(m, omega2), validation_error);
}

TEST_CASE("discrete pmf sampling hits the right frequencies") {
  const DiscretePmf pmf{{0.2, 0.5, 0.3}};
  const std::size_t n = 100000;
  const EmpiricalMeasure m = sample_distribution(pmf, n, SeedSpec{8, 0});
  std::vector<double> freq(3, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const int level = static_cast<int>(m.coord(i, 0));
    REQUIRE(level >= 1);
    REQUIRE(level <= 3);
    freq[level - 1] += 1.0;
  }
  for (int k = 0; k < 3; ++k)
    CHECK(freq[k] / static_cast<double>(n) == doctest::Approx(pmf.probs[k]).epsilon(0.03));
}

TEST_SUITE_END();
