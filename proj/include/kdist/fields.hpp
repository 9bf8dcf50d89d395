#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "kdist/kernels.hpp"
#include "kdist/linalg.hpp"
#include "kdist/measures.hpp"
#include "kdist/rng.hpp"

namespace kdist {

struct Fbm {
  double hurst = 0.5;
  int dim = 1;
};

// Truncated Neumann eigenexpansion on [0,1]:
// G(x) = Σ_{k=1..K} ξ_k √2 cos(kπx) / (kπ).
struct GffNeumann1d {
  int modes = 1000;
};

struct AdditiveBm {
  int dim = 1;
};

// Independent N(0, 2^{-k}) level values on {1..K}.
struct DiscreteField {
  int levels = 2;
};

using FieldSpec = std::variant<Fbm, GffNeumann1d, AdditiveBm, DiscreteField>;

// The covariance kernel a field's joint Gaussian law must match.
KernelSpec field_covariance_kernel(const FieldSpec& spec);

struct FieldRealization {
  EmpiricalMeasure locations;
  std::vector<double> values;
  SeedSpec seed{};
};

// Joint Gaussian draw at arbitrary locations via Cholesky of the covariance
// built from field_covariance_kernel. Duplicate locations and pinned points
// reproduce exactly (zero-pivot columns).
FieldRealization sample_field_at(const FieldSpec& spec, const EmpiricalMeasure& locations,
                                 SeedSpec seed);

// Reusable factor for repeated draws at fixed locations.
class FieldSampler {
 public:
  FieldSampler(const FieldSpec& spec, EmpiricalMeasure locations);
  // Realization `rep` on stream seed.substream(rep).
  [[nodiscard]] std::vector<double> sample(SeedSpec seed, std::uint64_t rep) const;
  // values(:, j) = realization j for reps [first, first+count).
  [[nodiscard]] Eigen::MatrixXd sample_block(SeedSpec seed, std::uint64_t first,
                                             std::size_t count) const;
  [[nodiscard]] const EmpiricalMeasure& locations() const { return locations_; }
  [[nodiscard]] const Eigen::MatrixXd& factor() const { return factor_; }

 private:
  EmpiricalMeasure locations_;
  Eigen::MatrixXd factor_;  // n x m mixing matrix, values = factor * z
};

// Exact-in-distribution fBm on a uniform grid t0 + h*i, pinned to 0 at
// pin_index, via circulant embedding of the fractional noise increments.
// Falls back to the Cholesky path when the embedding has eigenvalues below
// -1e-9 * max (does not happen for fractional noise in practice).
class FbmGridSampler {
 public:
  FbmGridSampler(double hurst, double t0, double step, std::size_t n_points,
                 std::size_t pin_index);

  [[nodiscard]] bool used_cholesky_fallback() const { return fallback_; }
  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] std::vector<double> grid() const;

  // Realizations 2p and 2p+1 share the FFT of stream seed.substream(p).
  void sample_pair(SeedSpec seed, std::uint64_t pair_index, std::vector<double>& a,
                   std::vector<double>& b) const;
  [[nodiscard]] std::vector<double> sample(SeedSpec seed, std::uint64_t rep) const;

  ~FbmGridSampler();
  FbmGridSampler(const FbmGridSampler&) = delete;
  FbmGridSampler& operator=(const FbmGridSampler&) = delete;

 private:
  void increments_to_values(const double* increments, std::vector<double>& out) const;

  double hurst_;
  double t0_;
  double step_;
  std::size_t n_;
  std::size_t pin_;
  bool fallback_ = false;
  std::vector<double> spectrum_scale_;  // sqrt(lambda_k / L) when using the embedding
  struct FftPlan;
  std::unique_ptr<FftPlan> fft_;
  std::unique_ptr<FieldSampler> cholesky_;
};

// Spec-level convenience: grid from 0 with the stated step.
FieldRealization sample_fbm_grid_1d(double hurst, double step, std::size_t n_points,
                                    SeedSpec seed);

// Truncated Neumann series on a grid in [0,1].
class GffSeriesSampler {
 public:
  GffSeriesSampler(int modes, std::vector<double> grid);
  [[nodiscard]] std::vector<double> sample(SeedSpec seed, std::uint64_t rep) const;
  [[nodiscard]] Eigen::MatrixXd sample_block(SeedSpec seed, std::uint64_t first,
                                             std::size_t count) const;
  [[nodiscard]] const std::vector<double>& grid() const { return grid_; }
  // n x K matrix with column k equal to √2 cos((k+1)πx) / ((k+1)π) on the grid.
  [[nodiscard]] const Eigen::MatrixXd& basis() const { return basis_; }
  // Variance of ⟨G, weights⟩ from the truncated expansion (no sampling).
  [[nodiscard]] double pairing_variance(const std::vector<double>& weights) const;
  // Bound on the truncation error of a mass-zero pairing variance:
  // (Σ|w|)² Σ_{k>K} 2/(kπ)².
  [[nodiscard]] double pairing_tail_bound(const std::vector<double>& weights) const;

 private:
  int modes_;
  std::vector<double> grid_;
  Eigen::MatrixXd basis_;  // n x K, column k: √2 cos((k+1)πx) / ((k+1)π)
};

FieldRealization sample_gff_series(int modes, const std::vector<double>& grid, SeedSpec seed);

// (1/Nx) Σ U(x_n) − (1/Ny) Σ U(y_m); every point must match a field location
// coordinate-exactly.
double pair_field_empirical(const FieldRealization& field, const EmpiricalMeasure& x,
                            const EmpiricalMeasure& y);

// Trapezoid ∫ U(t) q(t) dt over the realization's uniform 1-d grid.
double pair_field_density(const FieldRealization& field, std::span<const double> density);

}  // namespace kdist
