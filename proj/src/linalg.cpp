#include "kdist/linalg.hpp"

#include <cmath>
#include <sstream>

#include "kdist/errors.hpp"

namespace kdist {

namespace {

// Returns false when a pivot residual drops below -neg_tol. Pivots within
// [-neg_tol, zero_tol] are treated as exact zeros with a zeroed column.
bool try_factor(const Eigen::MatrixXd& a, double zero_tol, double neg_tol, double col_tol,
                Eigen::MatrixXd& lower, double& min_pivot) {
  const Eigen::Index n = a.rows();
  lower = Eigen::MatrixXd::Zero(n, n);
  min_pivot = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    double pivot = a(j, j);
    for (Eigen::Index k = 0; k < j; ++k) pivot -= lower(j, k) * lower(j, k);
    min_pivot = std::min(min_pivot, pivot);
    if (pivot < -neg_tol) return false;
    if (pivot <= zero_tol) {
      // Zero column: valid only if the remaining rows are consistent with it.
      for (Eigen::Index i = j + 1; i < n; ++i) {
        double v = a(i, j);
        for (Eigen::Index k = 0; k < j; ++k) v -= lower(i, k) * lower(j, k);
        if (std::abs(v) > col_tol) return false;
      }
      continue;
    }
    const double root = std::sqrt(pivot);
    lower(j, j) = root;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double v = a(i, j);
      for (Eigen::Index k = 0; k < j; ++k) v -= lower(i, k) * lower(j, k);
      lower(i, j) = v / root;
    }
  }
  return true;
}

}  // namespace

PsdCholesky psd_cholesky(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols()) throw validation_error("psd_cholesky: matrix not square");
  const Eigen::Index n = matrix.rows();
  const double scale = std::max(matrix.trace() / static_cast<double>(n), 1e-300);

  PsdCholesky result;
  double worst_pivot = 0.0;
  double jitter = 0.0;
  for (int attempt = 0; attempt <= 7; ++attempt) {
    Eigen::MatrixXd a = matrix;
    if (jitter > 0.0) a.diagonal().array() += jitter;
    const double zero_tol = 1e-13 * scale * static_cast<double>(n);
    const double neg_tol = 1e-10 * scale * static_cast<double>(n);
    const double col_tol = 1e-9 * scale * static_cast<double>(n);
    double min_pivot = 0.0;
    if (try_factor(a, zero_tol, neg_tol, col_tol, result.lower, min_pivot)) {
      result.jitter = jitter;
      if (attempt == 0) result.min_pivot = min_pivot;
      return result;
    }
    if (attempt == 0) worst_pivot = min_pivot;
    jitter = (jitter == 0.0) ? 1e-12 * scale : jitter * 10.0;
    if (jitter > 1e-6 * scale) break;
  }
  std::ostringstream os;
  os << "psd_cholesky: matrix is not positive semidefinite (smallest pivot estimate "
     << worst_pivot << ")";
  throw numerical_error(os.str());
}

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double total = 0.0;
    for (double v : values) total += v;
    return total;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace kdist
