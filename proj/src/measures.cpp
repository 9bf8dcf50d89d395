#include "kdist/measures.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>

#include "kdist/errors.hpp"

namespace kdist {

EmpiricalMeasure::EmpiricalMeasure(std::vector<double> flat, int dim)
    : flat_(std::move(flat)), dim_(dim) {
  if (dim_ < 1) throw validation_error("EmpiricalMeasure: dimension must be >= 1");
  if (flat_.empty() || flat_.size() % static_cast<std::size_t>(dim_) != 0)
    throw validation_error("EmpiricalMeasure: need at least one point of the stated dimension");
  for (double v : flat_)
    if (!std::isfinite(v)) throw validation_error("EmpiricalMeasure: nonfinite coordinate");
}

EmpiricalMeasure EmpiricalMeasure::from_1d(std::vector<double> values) {
  return EmpiricalMeasure(std::move(values), 1);
}

EmpiricalMeasure EmpiricalMeasure::marginal(int k) const {
  if (k < 0 || k >= dim_) throw validation_error("marginal: coordinate out of range");
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = coord(i, k);
  return from_1d(std::move(out));
}

void validate_distribution(const DistributionSpec& spec) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Gaussian1D>) {
          if (!(s.stddev > 0.0)) throw validation_error("Gaussian1D: stddev must be > 0");
        } else if constexpr (std::is_same_v<T, PerturbedGaussian1D>) {
          if (!(s.std_scale > 0.0))
            throw validation_error("PerturbedGaussian1D: std scale must be > 0");
        } else if constexpr (std::is_same_v<T, MultivariateStudentT>) {
          if (!(s.dof > 0.0)) throw validation_error("MultivariateStudentT: dof must be > 0");
          if (s.scale.rows() < 1 || s.scale.rows() != s.scale.cols())
            throw validation_error("MultivariateStudentT: scale matrix must be square");
          if (!s.scale.isApprox(s.scale.transpose(), 1e-12))
            throw validation_error("MultivariateStudentT: scale matrix must be symmetric");
          Eigen::LLT<Eigen::MatrixXd> llt(s.scale);
          if (llt.info() != Eigen::Success)
            throw validation_error(
                "MultivariateStudentT: scale matrix is not positive definite");
        } else if constexpr (std::is_same_v<T, PointMass>) {
          if (s.location.empty()) throw validation_error("PointMass: empty location");
        } else if constexpr (std::is_same_v<T, DiscretePmf>) {
          if (s.probs.empty()) throw validation_error("DiscretePmf: empty");
          double total = 0.0;
          for (double p : s.probs) {
            if (p < 0.0) throw validation_error("DiscretePmf: negative probability");
            total += p;
          }
          if (std::abs(total - 1.0) > 1e-12)
            throw validation_error("DiscretePmf: probabilities must sum to 1");
        }
      },
      spec);
}

EmpiricalMeasure sample_distribution(const DistributionSpec& spec, std::size_t n, SeedSpec seed) {
  if (n < 1) throw validation_error("sample_distribution: n must be >= 1");
  validate_distribution(spec);
  RngStream rng(seed);

  if (const auto* g = std::get_if<Gaussian1D>(&spec)) {
    std::vector<double> out(n);
    for (auto& v : out) v = g->mean + g->stddev * rng.gaussian();
    return EmpiricalMeasure::from_1d(std::move(out));
  }
  if (const auto* g = std::get_if<PerturbedGaussian1D>(&spec)) {
    std::vector<double> out(n);
    for (auto& v : out) v = g->mean_shift + g->std_scale * rng.gaussian();
    return EmpiricalMeasure::from_1d(std::move(out));
  }
  if (const auto* t = std::get_if<MultivariateStudentT>(&spec)) {
    const int d = static_cast<int>(t->scale.rows());
    const Eigen::MatrixXd chol = Eigen::LLT<Eigen::MatrixXd>(t->scale).matrixL();
    std::vector<double> out(n * static_cast<std::size_t>(d));
    Eigen::VectorXd z(d);
    for (std::size_t i = 0; i < n; ++i) {
      for (int k = 0; k < d; ++k) z[k] = rng.gaussian();
      const Eigen::VectorXd gauss = chol * z;
      const double mix = std::sqrt(rng.chi_squared(t->dof) / t->dof);
      for (int k = 0; k < d; ++k) out[i * static_cast<std::size_t>(d) + k] = gauss[k] / mix;
    }
    return EmpiricalMeasure(std::move(out), d);
  }
  if (const auto* p = std::get_if<PointMass>(&spec)) {
    const int d = static_cast<int>(p->location.size());
    std::vector<double> out;
    out.reserve(n * p->location.size());
    for (std::size_t i = 0; i < n; ++i)
      out.insert(out.end(), p->location.begin(), p->location.end());
    return EmpiricalMeasure(std::move(out), d);
  }
  const auto& pmf = std::get<DiscretePmf>(spec);
  std::vector<double> out(n);
  for (auto& v : out) {
    const double u = rng.uniform01();
    double acc = 0.0;
    std::size_t level = pmf.probs.size();
    for (std::size_t k = 0; k < pmf.probs.size(); ++k) {
      acc += pmf.probs[k];
      if (u <= acc) {
        level = k + 1;
        break;
      }
    }
    if (level > pmf.probs.size()) level = pmf.probs.size();  // guard accumulated roundoff
    v = static_cast<double>(level);
  }
  return EmpiricalMeasure::from_1d(std::move(out));
}

Eigen::MatrixXd build_student_scale(int d, double tau, const std::vector<double>& sigma) {
  if (d < 1) throw validation_error("build_student_scale: d must be >= 1");
  if (!(tau > 0.0)) throw validation_error("build_student_scale: tau must be > 0");
  if (sigma.size() != static_cast<std::size_t>(d))
    throw validation_error("build_student_scale: sigma must have d entries");
  for (double s : sigma)
    if (!(s > 0.0)) throw validation_error("build_student_scale: sigma entries must be > 0");
  Eigen::MatrixXd gamma(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double ratio = std::abs(i - j) / (d * tau);
      gamma(i, j) = sigma[i] * sigma[j] * std::exp(-ratio * ratio);
    }
  return gamma;
}

double empirical_cdf_diff_l2(const EmpiricalMeasure& x, const EmpiricalMeasure& y) {
  if (x.dim() != 1 || y.dim() != 1)
    throw validation_error("empirical_cdf_diff_l2: inputs must be one-dimensional");
  // Signed jumps of F_x - F_y, integrated exactly between breakpoints.
  std::vector<std::pair<double, double>> jumps;
  jumps.reserve(x.size() + y.size());
  const double wx = 1.0 / static_cast<double>(x.size());
  const double wy = 1.0 / static_cast<double>(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) jumps.emplace_back(x.coord(i, 0), wx);
  for (std::size_t i = 0; i < y.size(); ++i) jumps.emplace_back(y.coord(i, 0), -wy);
  std::sort(jumps.begin(), jumps.end());
  double integral = 0.0;
  double level = 0.0;
  for (std::size_t i = 0; i + 1 <= jumps.size(); ++i) {
    level += jumps[i].second;
    if (i + 1 < jumps.size()) {
      const double gap = jumps[i + 1].first - jumps[i].first;
      integral += level * level * gap;
    }
  }
  return integral;
}

std::complex<double> empirical_char_fn(const EmpiricalMeasure& m, std::span<const double> omega) {
  if (omega.size() != static_cast<std::size_t>(m.dim()))
    throw validation_error("empirical_char_fn: frequency dimension mismatch");
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double phase = 0.0;
    for (int k = 0; k < m.dim(); ++k) phase += omega[k] * m.coord(i, k);
    re += std::cos(phase);
    im += std::sin(phase);
  }
  const double inv = 1.0 / static_cast<double>(m.size());
  return {re * inv, im * inv};
}

}  // namespace kdist
