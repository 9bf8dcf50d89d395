#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kdist/fields.hpp"
#include "kdist/kernels.hpp"
#include "kdist/measures.hpp"

namespace kdist {

enum class EstimatorKind {
  unbiased_paper,
  unbiased_corrected,
  biased_paper,
  v_statistic,
  field_mc,
  fourier,
  cvm,
};

const char* estimator_name(EstimatorKind kind);

enum class Convention { paper, corrected };
enum class CrossTerm { paired, full };

// Element arithmetic width for the kernel pair sums. float32 reproduces the
// reduced-precision failure modes; accumulators stay double either way.
enum class SumPrecision { f64, f32 };

struct DistanceEstimate {
  double value = 0.0;
  EstimatorKind kind = EstimatorKind::v_statistic;
  std::size_t n_x = 0;
  std::size_t n_y = 0;
  std::size_t replications = 0;
  std::optional<double> std_error;
  double scale_factor = 1.0;
  std::vector<std::pair<std::string, std::string>> metadata;
};

// Paper-convention unbiased estimate: within average (1/(2N(N-1)))Σ_{n≠m},
// paired cross term (1/N)Σ k(X_n, Y_n); expectation is D²/2. `corrected`
// doubles both pieces so the expectation is exactly the kernel-form D².
// CrossTerm::full replaces the paired cross term with the full double sum
// and admits n_x ≠ n_y.
DistanceEstimate unbiased_kernel_distance(const EmpiricalMeasure& x, const EmpiricalMeasure& y,
                                          const KernelSpec& kernel,
                                          Convention convention = Convention::corrected,
                                          CrossTerm cross = CrossTerm::paired,
                                          SumPrecision precision = SumPrecision::f64);

// (1/(2N²))Σ_{n≠m}(k_X + k_Y) − (1/N)Σ k(X_n, Y_n).
DistanceEstimate biased_kernel_distance(const EmpiricalMeasure& x, const EmpiricalMeasure& y,
                                        const KernelSpec& kernel,
                                        SumPrecision precision = SumPrecision::f64);

// Full double-sum expansion of E_U⟨U, μ_N − ν_N⟩²; refuses kernels that are
// singular on the diagonal. Sample sizes may differ.
DistanceEstimate v_statistic_distance(const EmpiricalMeasure& x, const EmpiricalMeasure& y,
                                      const KernelSpec& kernel);

// (1/M) Σ_j ⟨U_j, μ_N − ν_N⟩² with U_j drawn jointly at all points of x ∪ y.
DistanceEstimate field_mc_distance(const EmpiricalMeasure& x, const EmpiricalMeasure& y,
                                   const FieldSpec& spec, std::size_t replications,
                                   SeedSpec seed);

struct QuadratureConfig {
  double omega_min_scale = 1e-6;  // omega_min = this / diameter
  double phase_budget = 6.0;      // max panel width * diameter (radians)
  double log_growth = 1.18;       // panel growth while below the phase budget
  int nodes_per_panel = 16;       // Gauss-Legendre nodes
  double omega_floor = 256.0;     // minimum Omega
  double omega_gap_factor = 48.0; // Omega >= this / smallest distinct gap
  double omega_cap = 2e5;         // hard ceiling on Omega
  double tail_tolerance = 1e-5;   // warn when bound > this * value
};

// 2∫_0^Ω |μ̂−ν̂|²(ω) φ_H(ω) dω plus an analytic ω→0 segment and an exact
// completion of the equal-point tail mass; metadata reports Ω and the
// conservative |μ̂−ν̂|² ≤ 4 truncation bound.
DistanceEstimate fourier_distance_1d(const EmpiricalMeasure& x, const EmpiricalMeasure& y,
                                     double hurst, const QuadratureConfig& quad = {});

// C_H = √π Γ(H+1/2) / (2^{d/2} H Γ(2H) sin(πH) Γ(H+d/2)), via log-gamma.
double c_h_constant(int dim, double hurst);

// Closed-form energy distance (H = 1/2) between N(0,1) and N(δ, σ²), built
// from E|N(m,s²)| = s√(2/π)exp(−m²/2s²) + m(2Φ(m/s)−1).
double gaussian_energy_oracle(double mean_shift, double std_ratio);

// Σ_i of the one-dimensional H=1/2 V-statistic over marginals; identical
// arithmetic to the AdditiveL1 V-statistic, rearranged.
DistanceEstimate additive_distance(const EmpiricalMeasure& x, const EmpiricalMeasure& y);

enum class DiscreteWeighting {
  geometric,  // weights 2^{-k} over levels {1..K}
  binary,     // two-state score, both weights 1/2 (K must be 2)
};

double discrete_distance(const DiscretePmf& p, const DiscretePmf& q,
                         DiscreteWeighting weighting = DiscreteWeighting::geometric);

// Exact Cramér-von-Mises integral as an estimator (1-d only).
DistanceEstimate cvm_distance(const EmpiricalMeasure& x, const EmpiricalMeasure& y);

// Shared pair-sum core (within averages and the cross term) for power-law
// kernels; exposed for the experiment harness.
struct KernelPairStats {
  double within_x = 0.0;  // (1/(Nx(Nx-1))) Σ_{n≠m} k
  double within_y = 0.0;
  double cross = 0.0;     // paired: (1/N) Σ_n k ; full: (1/(NxNy)) ΣΣ k
  bool finite = true;
};

KernelPairStats kernel_pair_stats(const EmpiricalMeasure& x, const EmpiricalMeasure& y,
                                  const KernelSpec& kernel, CrossTerm cross,
                                  SumPrecision precision);

}  // namespace kdist
