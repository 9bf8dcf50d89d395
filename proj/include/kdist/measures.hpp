#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "kdist/rng.hpp"

namespace kdist {

// Uniformly weighted point cloud standing in for (1/N) Σ δ_{x_n}.
class EmpiricalMeasure {
 public:
  EmpiricalMeasure(std::vector<double> flat, int dim);
  static EmpiricalMeasure from_1d(std::vector<double> values);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] std::size_t size() const { return flat_.size() / static_cast<std::size_t>(dim_); }
  [[nodiscard]] const double* data() const { return flat_.data(); }
  [[nodiscard]] std::span<const double> point(std::size_t i) const {
    return {flat_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  [[nodiscard]] double coord(std::size_t i, int k) const {
    return flat_[i * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(k)];
  }
  [[nodiscard]] EmpiricalMeasure marginal(int k) const;

 private:
  std::vector<double> flat_;
  int dim_;
};

struct Gaussian1D {
  double mean = 0.0;
  double stddev = 1.0;
};

// Base N(0,1) perturbed by a mean shift and/or a scale factor on the stddev.
struct PerturbedGaussian1D {
  double mean_shift = 0.0;
  double std_scale = 1.0;
};

struct MultivariateStudentT {
  double dof = 1.0;
  Eigen::MatrixXd scale;  // symmetric positive definite
};

struct PointMass {
  std::vector<double> location;
};

// Probabilities over the levels {1, ..., K}.
struct DiscretePmf {
  std::vector<double> probs;
};

using DistributionSpec =
    std::variant<Gaussian1D, PerturbedGaussian1D, MultivariateStudentT, PointMass, DiscretePmf>;

void validate_distribution(const DistributionSpec& spec);

// n i.i.d. draws. Student-t is sampled as Z / sqrt(S/f), Z ~ N(0, Γ),
// S ~ chi²(f). Bit-identical for identical (spec, n, seed).
EmpiricalMeasure sample_distribution(const DistributionSpec& spec, std::size_t n, SeedSpec seed);

// Γ(i,j) = σ_i σ_j exp{−(|i−j|/(d·tau))²}.
Eigen::MatrixXd build_student_scale(int d, double tau, const std::vector<double>& sigma);

// ∫ (F_x(t) − F_y(t))² dt, exact for step CDFs via sorted breakpoints.
double empirical_cdf_diff_l2(const EmpiricalMeasure& x, const EmpiricalMeasure& y);

// (1/N) Σ exp(i ω·x_n).
std::complex<double> empirical_char_fn(const EmpiricalMeasure& m, std::span<const double> omega);

}  // namespace kdist
