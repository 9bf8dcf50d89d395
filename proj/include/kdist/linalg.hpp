#pragma once

#include <Eigen/Dense>
#include <span>

namespace kdist {

// Lower-triangular factor of a positive semidefinite matrix. Exact-zero
// pivots (duplicate points, pinned origins) produce zero columns instead of
// failing, so L·z reproduces those degeneracies exactly. Indefinite inputs
// go through the jitter ladder 1e-12..1e-6 (times trace/n) before failing.
struct PsdCholesky {
  Eigen::MatrixXd lower;
  double jitter = 0.0;        // diagonal shift actually applied
  double min_pivot = 0.0;     // most negative pivot residual seen on attempt 0
};

PsdCholesky psd_cholesky(const Eigen::MatrixXd& matrix);

// Fixed-order pairwise (cascade) summation; deterministic and accurate.
double pairwise_sum(std::span<const double> values);

}  // namespace kdist
