#include "kdist/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "kdist/csv.hpp"
#include "kdist/errors.hpp"
#include "kdist/fields.hpp"
#include "kdist/linalg.hpp"

namespace kdist {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> parse_value_list(const std::string& text) {
  // start:end:count or comma-separated values
  const auto colons = std::count(text.begin(), text.end(), ':');
  std::vector<double> out;
  if (colons == 2) {
    double start = 0.0;
    double end = 0.0;
    int count = 0;
    std::stringstream ss(text);
    std::string part;
    std::getline(ss, part, ':');
    start = std::stod(part);
    std::getline(ss, part, ':');
    end = std::stod(part);
    std::getline(ss, part, ':');
    count = std::stoi(part);
    if (count < 1) throw validation_error("grid spec: count must be >= 1");
    for (int i = 0; i < count; ++i)
      out.push_back(count == 1 ? start
                               : start + (end - start) * static_cast<double>(i) /
                                     static_cast<double>(count - 1));
    return out;
  }
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(std::stod(part));
  if (out.empty()) throw validation_error("grid spec: empty list");
  return out;
}

struct Moments {
  double mean = kNaN;
  double stddev = kNaN;
  std::size_t count = 0;
};

// Mean/stddev over the finite entries only, deterministic order.
Moments finite_moments(const std::vector<double>& values) {
  std::vector<double> finite;
  finite.reserve(values.size());
  for (double v : values)
    if (std::isfinite(v)) finite.push_back(v);
  Moments m;
  m.count = finite.size();
  if (finite.empty()) return m;
  m.mean = pairwise_sum(finite) / static_cast<double>(finite.size());
  if (finite.size() >= 2) {
    std::vector<double> sq(finite.size());
    for (std::size_t i = 0; i < finite.size(); ++i) {
      const double d = finite[i] - m.mean;
      sq[i] = d * d;
    }
    m.stddev = std::sqrt(pairwise_sum(sq) / static_cast<double>(finite.size() - 1));
  }
  return m;
}

std::pair<std::string, double> parse_perturbation(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw validation_error("perturbation: expected mean:<delta> or std:<sigma>");
  const std::string kind = text.substr(0, colon);
  if (kind != "mean" && kind != "std")
    throw validation_error("perturbation: unknown kind '" + kind + "'");
  return {kind, std::stod(text.substr(colon + 1))};
}

void provenance_common(Provenance& prov, const SweepConfig& config) {
  prov.emplace_back("seed", std::to_string(config.seed.base_seed));
  prov.emplace_back("stream", std::to_string(config.seed.stream_index));
  prov.emplace_back("convention", "corrected");
}

}  // namespace

SweepConfig parse_sweep_config(std::istream& in) {
  SweepConfig config;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw validation_error("config: expected key=value on line " + std::to_string(lineno));
    apply_config_override(config, line.substr(0, eq), line.substr(eq + 1));
  }
  return config;
}

void apply_config_override(SweepConfig& config, const std::string& key,
                           const std::string& value) {
  try {
    if (key == "experiment") config.experiment = value;
    else if (key == "h_grid") config.h_grid = parse_value_list(value);
    else if (key == "m_list") {
      config.m_list.clear();
      for (double v : parse_value_list(value)) config.m_list.push_back(static_cast<int>(v));
    } else if (key == "resolution") config.resolution = std::stoul(value);
    else if (key == "n") config.n = std::stoul(value);
    else if (key == "r") config.r = std::stoul(value);
    else if (key == "m_fields") config.m_fields = std::stoul(value);
    else if (key == "reps") config.reps = std::stoul(value);
    else if (key == "seed") config.seed.base_seed = std::stoull(value);
    else if (key == "stream") config.seed.stream_index = std::stoull(value);
    else if (key == "perturbation") config.perturbation = value;
    else if (key == "f_list") config.f_list = parse_value_list(value);
    else if (key == "tau_list") config.tau_list = parse_value_list(value);
    else if (key == "d") config.dim = std::stoi(value);
    else if (key == "alpha") config.alpha = std::stod(value);
    else if (key == "hurst") config.hurst = std::stod(value);
    else if (key == "sigma_range") config.sigma_range = value;
    else if (key == "redraw_sigma") config.redraw_sigma = value == "1" || value == "true";
    else if (key == "precision") config.precision = value;
    else if (key == "riesz_log_scale") config.riesz_log_scale = std::stod(value);
    else if (key == "anchor") config.anchor = value;
    else throw validation_error("config: unknown key '" + key + "'");
  } catch (const validation_error&) {
    throw;
  } catch (const std::exception&) {
    throw validation_error("config: bad value for key '" + key + "'");
  }
}

MomentSweepResult moment_sweep(const SweepConfig& config) {
  if (config.resolution < 256) throw validation_error("moment sweep: resolution must be >= 256");
  if (config.resolution % 2 != 0) throw validation_error("moment sweep: resolution must be even");
  if (config.m_fields < 2) throw validation_error("moment sweep: need at least two fields");
  for (int m : config.m_list)
    if (m < 0) throw validation_error("moment sweep: moments must be >= 0");

  const std::size_t n_points = config.resolution + 1;
  const double step = 2.0 / static_cast<double>(config.resolution);
  const bool origin_anchor = config.anchor == "origin";
  if (!origin_anchor && config.anchor != "left")
    throw validation_error("moment sweep: anchor must be left or origin");

  // Grid relabeled onto [-1, 1]; the field itself is pinned at the anchor.
  std::vector<double> ts(n_points);
  for (std::size_t i = 0; i < n_points; ++i)
    ts[i] = -1.0 + step * static_cast<double>(i);
  std::vector<std::vector<double>> densities;
  densities.reserve(config.m_list.size());
  for (int m : config.m_list) {
    std::vector<double> q(n_points);
    for (std::size_t i = 0; i < n_points; ++i) q[i] = std::pow(ts[i], m);
    densities.push_back(std::move(q));
  }

  MomentSweepResult result;
  const std::size_t fields = config.m_fields;
  for (std::size_t hi = 0; hi < config.h_grid.size(); ++hi) {
    const double hurst = config.h_grid[hi];
    const std::size_t pin = origin_anchor ? config.resolution / 2 : 0;
    FbmGridSampler sampler(hurst, -1.0, step, n_points, pin);
    const SeedSpec h_seed = config.seed.substream(hi);

    std::vector<std::vector<double>> squares(config.m_list.size(),
                                             std::vector<double>(fields));
    std::vector<double> a;
    std::vector<double> b;
    FieldRealization frame{EmpiricalMeasure(ts, 1), {}, h_seed};
    for (std::size_t rep = 0; rep < fields; rep += 2) {
      sampler.sample_pair(h_seed, rep / 2, a, b);
      for (std::size_t side = 0; side < 2; ++side) {
        const std::size_t idx = rep + side;
        if (idx >= fields) break;
        frame.values = side == 0 ? a : b;
        for (std::size_t mi = 0; mi < densities.size(); ++mi) {
          const double pairing = pair_field_density(frame, densities[mi]);
          squares[mi][idx] = pairing * pairing;
        }
      }
    }
    for (std::size_t mi = 0; mi < config.m_list.size(); ++mi) {
      MomentSweepRow row;
      row.hurst = hurst;
      row.moment = config.m_list[mi];
      const Moments m = finite_moments(squares[mi]);
      row.mean = m.mean;
      row.std_error = m.stddev / std::sqrt(static_cast<double>(fields));
      result.rows.push_back(row);
    }
  }
  provenance_common(result.provenance, config);
  result.provenance.emplace_back("experiment", "moment-sweep");
  result.provenance.emplace_back("resolution", std::to_string(config.resolution));
  result.provenance.emplace_back("m_fields", std::to_string(fields));
  result.provenance.emplace_back("anchor", config.anchor);
  return result;
}

void write_moment_csv(std::ostream& out, const MomentSweepResult& result) {
  for (const auto& [k, v] : result.provenance) out << "# " << k << "=" << v << "\n";
  out << "H,m,mean,stderr\n";
  for (const auto& row : result.rows)
    out << format_double(row.hurst) << ',' << row.moment << ',' << format_double(row.mean) << ','
        << format_double(row.std_error) << "\n";
}

SnrSweepResult snr_sweep(const SweepConfig& config) {
  if (config.n < 2) throw validation_error("snr sweep: n must be >= 2");
  if (config.r < 100) throw validation_error("snr sweep: r must be >= 100");
  const auto [kind, amount] = parse_perturbation(config.perturbation);
  for (double h : config.h_grid)
    if (!(h > 0.0) || h > 1.0) throw validation_error("snr sweep: H grid must lie in (0, 1]");

  const DistributionSpec base = Gaussian1D{0.0, 1.0};
  const DistributionSpec perturbed = kind == "mean" ? DistributionSpec{Gaussian1D{amount, 1.0}}
                                                    : DistributionSpec{Gaussian1D{0.0, amount}};

  std::vector<std::vector<double>> values(config.h_grid.size(),
                                          std::vector<double>(config.r));
  for (std::size_t rep = 0; rep < config.r; ++rep) {
    const SeedSpec rep_seed = config.seed.substream(rep);
    const EmpiricalMeasure y = sample_distribution(base, config.n, rep_seed.substream(0));
    const EmpiricalMeasure x = sample_distribution(perturbed, config.n, rep_seed.substream(1));
    for (std::size_t hi = 0; hi < config.h_grid.size(); ++hi) {
      const KernelSpec kernel = Fractional{config.h_grid[hi], 1};
      values[hi][rep] = unbiased_kernel_distance(x, y, kernel, Convention::corrected).value;
    }
  }

  SnrSweepResult result;
  for (std::size_t hi = 0; hi < config.h_grid.size(); ++hi) {
    SnrSweepRow row;
    row.perturbation = config.perturbation;
    row.hurst = config.h_grid[hi];
    const Moments m = finite_moments(values[hi]);
    row.signal_mean = m.mean;
    row.signal_std = m.stddev;
    row.snr = (m.count >= 2 && m.stddev > 0.0) ? m.mean / m.stddev : kNaN;
    std::size_t neg = 0;
    std::size_t nonfinite = 0;
    for (double v : values[hi]) {
      if (!std::isfinite(v)) ++nonfinite;
      else if (v < 0.0) ++neg;
    }
    row.negative_frac = static_cast<double>(neg) / static_cast<double>(config.r);
    row.nonfinite_frac = static_cast<double>(nonfinite) / static_cast<double>(config.r);
    result.rows.push_back(row);
  }
  provenance_common(result.provenance, config);
  result.provenance.emplace_back("experiment", "snr-sweep");
  result.provenance.emplace_back("n", std::to_string(config.n));
  result.provenance.emplace_back("r", std::to_string(config.r));
  return result;
}

void write_snr_csv(std::ostream& out, const SnrSweepResult& result) {
  for (const auto& [k, v] : result.provenance) out << "# " << k << "=" << v << "\n";
  out << "perturbation,H,signal_mean,signal_std,snr\n";
  for (const auto& row : result.rows)
    out << row.perturbation << ',' << format_double(row.hurst) << ','
        << format_double(row.signal_mean) << ',' << format_double(row.signal_std) << ','
        << format_double(row.snr) << "\n";
}

StudentSweepResult student_t_comparison(const SweepConfig& config) {
  if (config.dim < 3) throw validation_error("student-t sweep: d must be >= 3");
  if (config.n < 2) throw validation_error("student-t sweep: n must be >= 2");
  if (config.reps < 2) throw validation_error("student-t sweep: reps must be >= 2");
  double sigma_lo = 0.7;
  double sigma_hi = 0.8;
  if (config.sigma_range == "high") {
    sigma_lo = 1.2;
    sigma_hi = 1.3;
  } else if (config.sigma_range != "low") {
    throw validation_error("student-t sweep: sigma_range must be low or high");
  }
  const SumPrecision precision =
      config.precision == "float32" ? SumPrecision::f32 : SumPrecision::f64;
  if (config.precision != "float32" && config.precision != "double")
    throw validation_error("student-t sweep: precision must be double or float32");

  const SeedSpec sigma_seed = config.seed.substream(0xA11CEull);
  auto draw_sigma = [&](std::uint64_t k) {
    RngStream rng(sigma_seed.substream(k));
    std::vector<double> sigma(static_cast<std::size_t>(config.dim));
    for (auto& s : sigma) s = rng.uniform(sigma_lo, sigma_hi);
    return sigma;
  };
  std::vector<double> sweep_sigma = draw_sigma(0);

  const KernelSpec fractional = Fractional{config.hurst, config.dim};
  const KernelSpec riesz = RieszGff{config.alpha, config.dim, config.riesz_log_scale};
  const Eigen::MatrixXd identity =
      Eigen::MatrixXd::Identity(config.dim, config.dim);

  StudentSweepResult result;
  std::size_t cell = 0;
  std::ostringstream sigma_note;
  for (std::size_t fi = 0; fi < config.f_list.size(); ++fi) {
    for (std::size_t ti = 0; ti < config.tau_list.size(); ++ti, ++cell) {
      const double dof = config.f_list[fi];
      const double tau = config.tau_list[ti];
      const std::vector<double> sigma =
          config.redraw_sigma ? draw_sigma(cell + 1) : sweep_sigma;
      const Eigen::MatrixXd gamma = build_student_scale(config.dim, tau, sigma);
      const DistributionSpec mu = MultivariateStudentT{dof, gamma};
      const DistributionSpec nu = MultivariateStudentT{dof, identity};

      std::vector<double> frac_values(config.reps);
      std::vector<double> riesz_values(config.reps);
      const SeedSpec cell_seed = config.seed.substream(cell);
      for (std::size_t rep = 0; rep < config.reps; ++rep) {
        const SeedSpec rep_seed = cell_seed.substream(rep);
        const EmpiricalMeasure x = sample_distribution(mu, config.n, rep_seed.substream(0));
        const EmpiricalMeasure y = sample_distribution(nu, config.n, rep_seed.substream(1));
        frac_values[rep] = unbiased_kernel_distance(x, y, fractional, Convention::corrected,
                                                    CrossTerm::paired, precision)
                               .value;
        riesz_values[rep] = unbiased_kernel_distance(x, y, riesz, Convention::corrected,
                                                     CrossTerm::paired, precision)
                                .value;
      }

      auto make_row = [&](const std::string& kernel_name, const std::vector<double>& values) {
        StudentSweepRow row;
        row.dof = dof;
        row.tau = tau;
        row.kernel = kernel_name;
        const Moments m = finite_moments(values);
        row.finite_count = m.count;
        row.mean = m.mean;
        row.stddev = m.stddev;
        row.snr = (m.count >= 2 && m.stddev > 0.0) ? m.mean / m.stddev : kNaN;
        std::size_t neg = 0;
        std::size_t nonfinite = 0;
        for (double v : values) {
          if (!std::isfinite(v)) ++nonfinite;
          else if (v < 0.0) ++neg;
        }
        row.negative_frac = static_cast<double>(neg) / static_cast<double>(values.size());
        row.nonfinite_frac = static_cast<double>(nonfinite) / static_cast<double>(values.size());
        row.failed = nonfinite == values.size();
        return row;
      };
      result.rows.push_back(make_row("fractional", frac_values));
      result.rows.push_back(make_row("riesz", riesz_values));
    }
  }

  provenance_common(result.provenance, config);
  result.provenance.emplace_back("experiment", "student-t");
  result.provenance.emplace_back("d", std::to_string(config.dim));
  result.provenance.emplace_back("n", std::to_string(config.n));
  result.provenance.emplace_back("reps", std::to_string(config.reps));
  result.provenance.emplace_back("alpha", format_double(config.alpha));
  result.provenance.emplace_back("hurst", format_double(config.hurst));
  result.provenance.emplace_back("precision", config.precision);
  result.provenance.emplace_back("riesz_scale", format_double(std::exp(config.riesz_log_scale)));
  result.provenance.emplace_back("sigma_range", config.sigma_range);
  for (std::size_t i = 0; i < sweep_sigma.size(); ++i)
    sigma_note << (i ? ";" : "") << format_double(sweep_sigma[i]);
  result.provenance.emplace_back("sigma", sigma_note.str());
  result.provenance.emplace_back("redraw_sigma", config.redraw_sigma ? "1" : "0");
  return result;
}

void write_student_csv(std::ostream& out, const StudentSweepResult& result) {
  for (const auto& [k, v] : result.provenance) out << "# " << k << "=" << v << "\n";
  out << "f,tau,kernel,snr,negative_frac,nonfinite_frac\n";
  for (const auto& row : result.rows)
    out << format_double(row.dof) << ',' << format_double(row.tau) << ',' << row.kernel << ','
        << format_double(row.snr) << ',' << format_double(row.negative_frac) << ','
        << format_double(row.nonfinite_frac) << "\n";
}

double gaussian_density_fractional_distance(double hurst, double sigma) {
  if (!(hurst > 0.0 && hurst < 1.0))
    throw validation_error("density distance: H must lie in (0, 1)");
  if (!(sigma > 0.0)) throw validation_error("density distance: sigma must be > 0");
  // |phî_1 - phî_2|²(ω) = (e^{−ω²/2} − e^{−σ²ω²/2})², smooth and rapidly
  // decaying; log-spaced Gauss panels on (0, 40] capture it to roundoff.
  const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * c_h_constant(1, hurst));
  const int nodes = 16;
  std::vector<double> gx(nodes);
  std::vector<double> gw(nodes);
  {
    // Gauss-Legendre via Newton, as in the estimator quadrature.
    for (int i = 0; i < nodes; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (nodes + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= nodes; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = nodes * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      gx[i] = x;
      gw[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
  double total = 0.0;
  double a = 1e-8;
  const double omega_max = 40.0;
  while (a < omega_max) {
    const double b = std::min(a * 1.15, omega_max);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double panel = 0.0;
    for (int q = 0; q < nodes; ++q) {
      const double w = mid + half * gx[q];
      const double diff = std::exp(-0.5 * w * w) - std::exp(-0.5 * sigma * sigma * w * w);
      panel += gw[q] * diff * diff * std::pow(w, -1.0 - 2.0 * hurst);
    }
    total += half * panel;
    a = b;
  }
  return 2.0 * norm * total;
}

LimitChecksReport limit_checks(SeedSpec seed) {
  LimitChecksReport report;

  // (a) H = 0.99, two 1000-point Gaussian samples one unit apart: the
  // v-statistic approaches the squared mean gap.
  {
    const EmpiricalMeasure x =
        sample_distribution(Gaussian1D{1.0, 1.0}, 1000, seed.substream(11));
    const EmpiricalMeasure y =
        sample_distribution(Gaussian1D{0.0, 1.0}, 1000, seed.substream(12));
    report.high_h_value = v_statistic_distance(x, y, Fractional{0.99, 1}).value;
    report.high_h_expected = 1.0;
    report.high_h_ok = std::abs(report.high_h_value - report.high_h_expected) <=
                       0.15 * report.high_h_expected;
  }

  // (b) density-level distance between N(0,1) and N(0,1.3²).
  report.low_h_value = gaussian_density_fractional_distance(0.01, 1.3);
  report.mid_h_value = gaussian_density_fractional_distance(0.5, 1.3);
  report.low_over_mid = report.low_h_value / report.mid_h_value;
  report.low_h_ok = report.low_over_mid < 0.10;

  // identical distributions: corrected unbiased estimates center on zero
  {
    double worst = 0.0;
    const std::size_t reps = 200;
    const std::size_t n = 100;
    std::size_t probe = 0;
    for (double hurst : {0.2, 0.5, 0.8}) {
      std::vector<double> values(reps);
      const SeedSpec probe_seed = seed.substream(100 + probe++);
      for (std::size_t rep = 0; rep < reps; ++rep) {
        const SeedSpec rep_seed = probe_seed.substream(rep);
        const EmpiricalMeasure x =
            sample_distribution(Gaussian1D{0.0, 1.0}, n, rep_seed.substream(0));
        const EmpiricalMeasure y =
            sample_distribution(Gaussian1D{0.0, 1.0}, n, rep_seed.substream(1));
        values[rep] =
            unbiased_kernel_distance(x, y, Fractional{hurst, 1}, Convention::corrected).value;
      }
      const Moments m = finite_moments(values);
      const double se = m.stddev / std::sqrt(static_cast<double>(reps));
      worst = std::max(worst, std::abs(m.mean) / se);
    }
    report.zero_case_max_sigma = worst;
    report.zero_case_ok = worst <= 4.0;
  }

  report.provenance.emplace_back("seed", std::to_string(seed.base_seed));
  report.provenance.emplace_back("stream", std::to_string(seed.stream_index));
  report.provenance.emplace_back("experiment", "limit-checks");
  return report;
}

void write_limit_checks_csv(std::ostream& out, const LimitChecksReport& report) {
  for (const auto& [k, v] : report.provenance) out << "# " << k << "=" << v << "\n";
  out << "check,value,reference,status\n";
  out << "high_h_mean_gap," << format_double(report.high_h_value) << ','
      << format_double(report.high_h_expected) << ',' << (report.high_h_ok ? "pass" : "fail")
      << "\n";
  out << "low_h_ratio," << format_double(report.low_over_mid) << ",0.1,"
      << (report.low_h_ok ? "pass" : "fail") << "\n";
  out << "zero_case_max_sigma," << format_double(report.zero_case_max_sigma) << ",4,"
      << (report.zero_case_ok ? "pass" : "fail") << "\n";
}

std::vector<VerifyRow> verify_equivalence(SeedSpec seed, int n_sets,
                                          std::size_t mc_replications) {
  std::vector<VerifyRow> rows;
  for (int set = 0; set < n_sets; ++set) {
    RngStream rng(seed.substream(static_cast<std::uint64_t>(set)));
    const auto draw_points = [&](std::size_t count) {
      std::vector<double> pts(count);
      for (auto& p : pts) p = rng.uniform(-2.0, 2.0);
      return EmpiricalMeasure::from_1d(std::move(pts));
    };
    const std::size_t nx = 2 + static_cast<std::size_t>(rng.next_u64() % 15);
    const std::size_t ny = 2 + static_cast<std::size_t>(rng.next_u64() % 15);
    const EmpiricalMeasure x = draw_points(nx);
    const EmpiricalMeasure y = draw_points(ny);

    int probe = 0;
    for (double hurst : {0.25, 0.5, 0.75}) {
      const double vstat = v_statistic_distance(x, y, Fractional{hurst, 1}).value;

      const DistanceEstimate fourier = fourier_distance_1d(x, y, hurst);
      VerifyRow fr;
      fr.set_index = set;
      fr.hurst = hurst;
      fr.check = "vstat_vs_fourier";
      fr.lhs = vstat;
      fr.rhs = fourier.value;
      fr.tolerance = 1e-3 * std::max(vstat, 1.0);
      fr.pass = std::abs(vstat - fourier.value) < fr.tolerance;
      rows.push_back(fr);

      const DistanceEstimate mc = field_mc_distance(
          x, y, Fbm{hurst, 1}, mc_replications,
          seed.substream(1000 + static_cast<std::uint64_t>(set * 8 + probe)));
      VerifyRow mr;
      mr.set_index = set;
      mr.hurst = hurst;
      mr.check = "vstat_vs_field_mc";
      mr.lhs = vstat;
      mr.rhs = mc.value;
      mr.tolerance = 4.0 * mc.std_error.value();
      mr.pass = std::abs(vstat - mc.value) < mr.tolerance;
      rows.push_back(mr);

      if (hurst == 0.5) {
        const double cvm = empirical_cdf_diff_l2(x, y);
        VerifyRow cr;
        cr.set_index = set;
        cr.hurst = hurst;
        cr.check = "vstat_vs_cvm";
        cr.lhs = vstat;
        cr.rhs = cvm;
        cr.tolerance = 1e-12 * std::max(vstat, 1.0);
        cr.pass = std::abs(vstat - cvm) < cr.tolerance;
        rows.push_back(cr);
      }
      ++probe;
    }
  }
  return rows;
}

void write_verify_csv(std::ostream& out, const std::vector<VerifyRow>& rows,
                      const Provenance& provenance) {
  for (const auto& [k, v] : provenance) out << "# " << k << "=" << v << "\n";
  out << "set,H,check,lhs,rhs,tolerance,status\n";
  for (const auto& row : rows)
    out << row.set_index << ',' << format_double(row.hurst) << ',' << row.check << ','
        << format_double(row.lhs) << ',' << format_double(row.rhs) << ','
        << format_double(row.tolerance) << ',' << (row.pass ? "pass" : "fail") << "\n";
}

}  // namespace kdist
