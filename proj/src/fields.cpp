#include "kdist/fields.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "kdist/errors.hpp"

namespace kdist {

KernelSpec field_covariance_kernel(const FieldSpec& spec) {
  if (const auto* f = std::get_if<Fbm>(&spec)) return Fractional{f->hurst, f->dim};
  if (const auto* a = std::get_if<AdditiveBm>(&spec)) return AdditiveL1{a->dim};
  if (const auto* d = std::get_if<DiscreteField>(&spec)) return DiscreteKernel{d->levels};
  throw validation_error("field_covariance_kernel: series field has no closed-form kernel");
}

namespace {

void validate_field(const FieldSpec& spec) {
  if (const auto* f = std::get_if<Fbm>(&spec)) {
    if (!(f->hurst > 0.0 && f->hurst < 1.0))
      throw validation_error("fbm field: H must lie in (0, 1)");
    if (f->dim < 1) throw validation_error("fbm field: d must be >= 1");
  } else if (const auto* g = std::get_if<GffNeumann1d>(&spec)) {
    if (g->modes < 1) throw validation_error("gff field: K must be >= 1");
  } else if (const auto* a = std::get_if<AdditiveBm>(&spec)) {
    if (a->dim < 1) throw validation_error("additive field: d must be >= 1");
  } else if (const auto* d = std::get_if<DiscreteField>(&spec)) {
    if (d->levels < 1) throw validation_error("discrete field: K must be >= 1");
  }
}

std::vector<double> gaussian_vector(SeedSpec seed, std::size_t n) {
  RngStream rng(seed);
  std::vector<double> out(n);
  for (auto& v : out) v = rng.gaussian();
  return out;
}

}  // namespace

FieldSampler::FieldSampler(const FieldSpec& spec, EmpiricalMeasure locations)
    : locations_(std::move(locations)) {
  validate_field(spec);
  const std::size_t n = locations_.size();
  if (const auto* g = std::get_if<GffNeumann1d>(&spec)) {
    if (locations_.dim() != 1)
      throw validation_error("gff field: locations must be one-dimensional");
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i) grid[i] = locations_.coord(i, 0);
    factor_ = GffSeriesSampler(g->modes, std::move(grid)).basis();
    return;
  }
  const KernelSpec kernel = field_covariance_kernel(spec);
  Eigen::MatrixXd cov(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = kernel_eval(kernel, locations_.point(i), locations_.point(j));
      cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      cov(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  factor_ = psd_cholesky(cov).lower;
}

std::vector<double> FieldSampler::sample(SeedSpec seed, std::uint64_t rep) const {
  const std::vector<double> z = gaussian_vector(seed.substream(rep), factor_.cols());
  const Eigen::Map<const Eigen::VectorXd> zv(z.data(), static_cast<Eigen::Index>(z.size()));
  const Eigen::VectorXd values = factor_ * zv;
  return {values.data(), values.data() + values.size()};
}

Eigen::MatrixXd FieldSampler::sample_block(SeedSpec seed, std::uint64_t first,
                                           std::size_t count) const {
  Eigen::MatrixXd z(factor_.cols(), static_cast<Eigen::Index>(count));
  for (std::size_t j = 0; j < count; ++j) {
    const std::vector<double> col = gaussian_vector(seed.substream(first + j), factor_.cols());
    for (Eigen::Index i = 0; i < z.rows(); ++i) z(i, static_cast<Eigen::Index>(j)) = col[i];
  }
  return factor_ * z;
}

FieldRealization sample_field_at(const FieldSpec& spec, const EmpiricalMeasure& locations,
                                 SeedSpec seed) {
  if (std::holds_alternative<GffNeumann1d>(spec)) {
    if (locations.dim() != 1)
      throw validation_error("gff field: locations must be one-dimensional");
    std::vector<double> grid(locations.size());
    for (std::size_t i = 0; i < locations.size(); ++i) grid[i] = locations.coord(i, 0);
    return sample_gff_series(std::get<GffNeumann1d>(spec).modes, grid, seed);
  }
  FieldSampler sampler(spec, locations);
  FieldRealization out{locations, sampler.sample(seed, 0), seed};
  return out;
}

struct FbmGridSampler::FftPlan {
  fftw_plan plan = nullptr;
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
  std::size_t n = 0;

  explicit FftPlan(std::size_t len) : n(len) {
    in = fftw_alloc_complex(len);
    out = fftw_alloc_complex(len);
    plan = fftw_plan_dft_1d(static_cast<int>(len), in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    if (plan == nullptr) throw numerical_error("fftw plan creation failed");
  }
  ~FftPlan() {
    if (plan != nullptr) fftw_destroy_plan(plan);
    fftw_free(in);
    fftw_free(out);
  }
};

FbmGridSampler::FbmGridSampler(double hurst, double t0, double step, std::size_t n_points,
                               std::size_t pin_index)
    : hurst_(hurst), t0_(t0), step_(step), n_(n_points), pin_(pin_index) {
  if (!(hurst > 0.0 && hurst < 1.0)) throw validation_error("fbm grid: H must lie in (0, 1)");
  if (n_points < 2) throw validation_error("fbm grid: need at least two points");
  if (!(step > 0.0)) throw validation_error("fbm grid: step must be > 0");
  if (pin_index >= n_points) throw validation_error("fbm grid: pin index out of range");

  const std::size_t m = n_ - 1;
  const double var = std::pow(step_, 2.0 * hurst_);
  auto autocov = [&](std::size_t lag) {
    if (lag == 0) return var;
    const double k = static_cast<double>(lag);
    return 0.5 * var *
           (std::pow(k + 1.0, 2.0 * hurst_) - 2.0 * std::pow(k, 2.0 * hurst_) +
            std::pow(k - 1.0, 2.0 * hurst_));
  };

  const std::size_t len = 2 * m;
  if (m >= 2) {
    fft_ = std::make_unique<FftPlan>(len);
    for (std::size_t j = 0; j < len; ++j) {
      const std::size_t lag = std::min(j, len - j);
      fft_->in[j][0] = autocov(lag);
      fft_->in[j][1] = 0.0;
    }
    fftw_execute(fft_->plan);
    std::vector<double> lambda(len);
    double max_lambda = 0.0;
    double min_lambda = 0.0;
    for (std::size_t j = 0; j < len; ++j) {
      lambda[j] = fft_->out[j][0];
      max_lambda = std::max(max_lambda, lambda[j]);
      min_lambda = std::min(min_lambda, lambda[j]);
    }
    if (min_lambda < -1e-9 * max_lambda) {
      fallback_ = true;
    } else {
      spectrum_scale_.resize(len);
      for (std::size_t j = 0; j < len; ++j)
        spectrum_scale_[j] = std::sqrt(std::max(lambda[j], 0.0) / static_cast<double>(len));
    }
  } else {
    fallback_ = true;  // single increment: trivially Cholesky
  }

  if (fallback_) {
    std::vector<double> shifted(n_);
    for (std::size_t i = 0; i < n_; ++i)
      shifted[i] = step_ * (static_cast<double>(i) - static_cast<double>(pin_));
    cholesky_ = std::make_unique<FieldSampler>(Fbm{hurst_, 1},
                                               EmpiricalMeasure(std::move(shifted), 1));
  }
}

FbmGridSampler::~FbmGridSampler() = default;

std::vector<double> FbmGridSampler::grid() const {
  std::vector<double> g(n_);
  for (std::size_t i = 0; i < n_; ++i) g[i] = t0_ + step_ * static_cast<double>(i);
  return g;
}

void FbmGridSampler::increments_to_values(const double* increments,
                                          std::vector<double>& out) const {
  out.assign(n_, 0.0);
  double running = 0.0;
  for (std::size_t i = 1; i < n_; ++i) {
    running += increments[i - 1];
    out[i] = running;
  }
  const double pin_value = out[pin_];
  for (auto& v : out) v -= pin_value;
}

void FbmGridSampler::sample_pair(SeedSpec seed, std::uint64_t pair_index, std::vector<double>& a,
                                 std::vector<double>& b) const {
  if (fallback_) {
    a = cholesky_->sample(seed, 2 * pair_index);
    b = cholesky_->sample(seed, 2 * pair_index + 1);
    return;
  }
  const std::size_t len = spectrum_scale_.size();
  RngStream rng(seed.substream(pair_index));
  for (std::size_t j = 0; j < len; ++j) {
    const double s = spectrum_scale_[j];
    fft_->in[j][0] = s * rng.gaussian();
    fft_->in[j][1] = s * rng.gaussian();
  }
  fftw_execute(fft_->plan);
  const std::size_t m = n_ - 1;
  std::vector<double> inc(m);
  for (std::size_t i = 0; i < m; ++i) inc[i] = fft_->out[i][0];
  increments_to_values(inc.data(), a);
  for (std::size_t i = 0; i < m; ++i) inc[i] = fft_->out[i][1];
  increments_to_values(inc.data(), b);
}

std::vector<double> FbmGridSampler::sample(SeedSpec seed, std::uint64_t rep) const {
  std::vector<double> a;
  std::vector<double> b;
  sample_pair(seed, rep / 2, a, b);
  return (rep % 2 == 0) ? a : b;
}

FieldRealization sample_fbm_grid_1d(double hurst, double step, std::size_t n_points,
                                    SeedSpec seed) {
  FbmGridSampler sampler(hurst, 0.0, step, n_points, 0);
  FieldRealization out{EmpiricalMeasure(sampler.grid(), 1), sampler.sample(seed, 0), seed};
  return out;
}

GffSeriesSampler::GffSeriesSampler(int modes, std::vector<double> grid)
    : modes_(modes), grid_(std::move(grid)) {
  if (modes_ < 1) throw validation_error("gff series: K must be >= 1");
  if (grid_.empty()) throw validation_error("gff series: empty grid");
  for (double x : grid_)
    if (x < 0.0 || x > 1.0)
      throw validation_error("gff series: grid point outside [0, 1]");
  basis_ = Eigen::MatrixXd(static_cast<Eigen::Index>(grid_.size()), modes_);
  for (int k = 1; k <= modes_; ++k) {
    const double lambda_sqrt = k * std::numbers::pi;
    for (std::size_t i = 0; i < grid_.size(); ++i)
      basis_(static_cast<Eigen::Index>(i), k - 1) =
          std::numbers::sqrt2 * std::cos(k * std::numbers::pi * grid_[i]) / lambda_sqrt;
  }
}

std::vector<double> GffSeriesSampler::sample(SeedSpec seed, std::uint64_t rep) const {
  const std::vector<double> xi = gaussian_vector(seed.substream(rep), modes_);
  const Eigen::Map<const Eigen::VectorXd> xv(xi.data(), modes_);
  const Eigen::VectorXd values = basis_ * xv;
  return {values.data(), values.data() + values.size()};
}

Eigen::MatrixXd GffSeriesSampler::sample_block(SeedSpec seed, std::uint64_t first,
                                               std::size_t count) const {
  Eigen::MatrixXd xi(modes_, static_cast<Eigen::Index>(count));
  for (std::size_t j = 0; j < count; ++j) {
    const std::vector<double> col = gaussian_vector(seed.substream(first + j), modes_);
    for (int i = 0; i < modes_; ++i) xi(i, static_cast<Eigen::Index>(j)) = col[i];
  }
  return basis_ * xi;
}

double GffSeriesSampler::pairing_variance(const std::vector<double>& weights) const {
  if (weights.size() != grid_.size())
    throw validation_error("gff pairing variance: weight size mismatch");
  const Eigen::Map<const Eigen::VectorXd> w(weights.data(),
                                            static_cast<Eigen::Index>(weights.size()));
  return (basis_.transpose() * w).squaredNorm();
}

double GffSeriesSampler::pairing_tail_bound(const std::vector<double>& weights) const {
  double mass = 0.0;
  for (double w : weights) mass += std::fabs(w);
  return mass * mass * 2.0 / (std::numbers::pi * std::numbers::pi * modes_);
}

FieldRealization sample_gff_series(int modes, const std::vector<double>& grid, SeedSpec seed) {
  GffSeriesSampler sampler(modes, grid);
  FieldRealization out{EmpiricalMeasure(grid, 1), sampler.sample(seed, 0), seed};
  return out;
}

double pair_field_empirical(const FieldRealization& field, const EmpiricalMeasure& x,
                            const EmpiricalMeasure& y) {
  if (x.dim() != field.locations.dim() || y.dim() != field.locations.dim())
    throw validation_error("pair_field_empirical: dimension mismatch");
  std::map<std::vector<double>, std::size_t> index;
  for (std::size_t i = 0; i < field.locations.size(); ++i) {
    const auto p = field.locations.point(i);
    index.emplace(std::vector<double>(p.begin(), p.end()), i);
  }
  auto lookup = [&](std::span<const double> p) {
    const auto it = index.find(std::vector<double>(p.begin(), p.end()));
    if (it == index.end())
      throw validation_error("pair_field_empirical: point not among field locations");
    return it->second;
  };
  double sum_x = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum_x += field.values[lookup(x.point(i))];
  double sum_y = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) sum_y += field.values[lookup(y.point(i))];
  return sum_x / static_cast<double>(x.size()) - sum_y / static_cast<double>(y.size());
}

double pair_field_density(const FieldRealization& field, std::span<const double> density) {
  if (field.locations.dim() != 1)
    throw validation_error("pair_field_density: field must be one-dimensional");
  const std::size_t n = field.locations.size();
  if (density.size() != n) throw validation_error("pair_field_density: grid mismatch");
  if (n < 2) throw validation_error("pair_field_density: need at least two grid points");
  const double h = field.locations.coord(1, 0) - field.locations.coord(0, 0);
  for (std::size_t i = 1; i < n; ++i) {
    const double gap = field.locations.coord(i, 0) - field.locations.coord(i - 1, 0);
    if (std::abs(gap - h) > 1e-9 * std::max(1.0, std::abs(h)))
      throw validation_error("pair_field_density: grid is not uniform");
  }
  for (double q : density)
    if (!std::isfinite(q)) throw validation_error("pair_field_density: nonfinite density value");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    total += w * field.values[i] * density[i];
  }
  return total * h;
}

}  // namespace kdist
