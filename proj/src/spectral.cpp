#include "kdist/spectral.hpp"

#include <cmath>
#include <numbers>

#include "kdist/errors.hpp"
#include "kdist/estimators.hpp"

namespace kdist {

namespace {

double sq_norm(std::span<const double> v) {
  double r = 0.0;
  for (double c : v) r += c * c;
  return r;
}

double sphere_surface(int d) {
  return 2.0 * std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0);
}

}  // namespace

double phi_eval(const SpectralDensitySpec& spec, std::span<const double> omega) {
  const double r2 = sq_norm(omega);
  if (r2 == 0.0) throw numerical_error("phi_eval: singular at omega = 0");
  if (const auto* f = std::get_if<FractionalIncrementDensity>(&spec)) {
    if (omega.size() != static_cast<std::size_t>(f->dim))
      throw validation_error("phi_eval: frequency dimension mismatch");
    const double ch = c_h_constant(f->dim, f->hurst);
    const double norm = std::pow(2.0 * std::numbers::pi, 0.5 * f->dim) * ch;
    return std::pow(r2, -0.5 * (f->dim + 2.0 * f->hurst)) / norm;
  }
  const auto& r = std::get<RieszStationaryDensity>(spec);
  if (omega.size() != static_cast<std::size_t>(r.dim))
    throw validation_error("phi_eval: frequency dimension mismatch");
  return std::pow(r2, -r.alpha);
}

Lemma22Report lemma22_condition_check(const FractionalIncrementDensity& spec, double kappa) {
  if (kappa < 0.0 || kappa > 1.0)
    throw validation_error("lemma22_condition_check: kappa must lie in [0, 1]");
  Lemma22Report report;
  report.kappa = kappa;
  report.threshold = spec.hurst;

  const double ch = c_h_constant(spec.dim, spec.hurst);
  const double norm = std::pow(2.0 * std::numbers::pi, 0.5 * spec.dim) * ch;
  const double surface = sphere_surface(spec.dim);

  // Inner: S_{d-1}/norm * ∫_0^1 r^{2κ - 2H - 1} dr, finite iff 2κ - 2H > 0.
  const double inner_exponent = 2.0 * kappa - 2.0 * spec.hurst;
  report.inner_finite = inner_exponent > 0.0;
  if (report.inner_finite) report.inner_value = surface / (norm * inner_exponent);

  // Outer: S_{d-1}/norm * ∫_1^inf r^{-2H - 1} dr, finite for all H > 0.
  report.outer_finite = spec.hurst > 0.0;
  if (report.outer_finite) report.outer_value = surface / (norm * 2.0 * spec.hurst);

  report.conditions_met = report.inner_finite && report.outer_finite;
  return report;
}

}  // namespace kdist
