#include "kdist/kernels.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "kdist/errors.hpp"

namespace kdist {

namespace {

double sq_norm(std::span<const double> v) {
  double r = 0.0;
  for (double c : v) r += c * c;
  return r;
}

double sq_dist(std::span<const double> x, std::span<const double> y) {
  double r = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double d = x[k] - y[k];
    r += d * d;
  }
  return r;
}

double l1_norm(std::span<const double> v) {
  double r = 0.0;
  for (double c : v) r += std::fabs(c);
  return r;
}

double l1_dist(std::span<const double> x, std::span<const double> y) {
  double r = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) r += std::fabs(x[k] - y[k]);
  return r;
}

double sphere_surface(int d) {
  // Vol(S^{d-1}) = 2 pi^{d/2} / Gamma(d/2)
  return 2.0 * std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0);
}

void check_dims(const KernelSpec& k, std::size_t dx, std::size_t dy) {
  if (dx != dy) throw validation_error("kernel_eval: point dimensions differ");
  const int kd = kernel_dim(k);
  if (kd > 0 && static_cast<std::size_t>(kd) != dx)
    throw validation_error("kernel_eval: point dimension does not match kernel");
}

int discrete_level(double v) {
  const double r = std::nearbyint(v);
  if (std::abs(v - r) > 1e-9)
    throw validation_error("discrete kernel: points must be integer levels");
  return static_cast<int>(r);
}

}  // namespace

void validate_kernel(const KernelSpec& k) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Fractional>) {
          if (!(s.hurst > 0.0) || s.hurst > 1.0)
            throw validation_error("fractional kernel: H must lie in (0, 1]");
          if (s.dim < 1) throw validation_error("fractional kernel: d must be >= 1");
        } else if constexpr (std::is_same_v<T, GreenGff>) {
          if (s.dim < 1) throw validation_error("green kernel: d must be >= 1");
        } else if constexpr (std::is_same_v<T, RieszGff>) {
          if (!(s.alpha > 0.0)) throw validation_error("riesz kernel: alpha must be > 0");
          if (s.dim < 1) throw validation_error("riesz kernel: d must be >= 1");
          if (2.0 * s.alpha - s.dim == 0.0)
            throw validation_error("riesz kernel: 2*alpha - d must be nonzero");
        } else if constexpr (std::is_same_v<T, AdditiveL1>) {
          if (s.dim < 1) throw validation_error("additive kernel: d must be >= 1");
        } else if constexpr (std::is_same_v<T, DiscreteKernel>) {
          if (s.levels < 1) throw validation_error("discrete kernel: K must be >= 1");
        }
      },
      k);
}

double kernel_eval(const KernelSpec& k, std::span<const double> x, std::span<const double> y) {
  check_dims(k, x.size(), y.size());
  if (const auto* f = std::get_if<Fractional>(&k)) {
    const double h = f->hurst;
    return 0.5 * (std::pow(sq_norm(x), h) + std::pow(sq_norm(y), h) - std::pow(sq_dist(x, y), h));
  }
  if (const auto* g = std::get_if<GreenGff>(&k)) {
    if (g->dim == 1) return 0.5 * (std::fabs(x[0]) + std::fabs(y[0]) - std::fabs(x[0] - y[0]));
    const double r2 = sq_dist(x, y);
    if (r2 == 0.0)
      throw numerical_error("green kernel: singular on the diagonal for d >= 2");
    if (g->dim == 2) return -0.25 * std::log(r2) / std::numbers::pi;
    const double c = 1.0 / ((g->dim - 2) * sphere_surface(g->dim));
    return c * std::pow(r2, 0.5 * (2.0 - g->dim));
  }
  if (const auto* r = std::get_if<RieszGff>(&k)) {
    const double expo = 2.0 * r->alpha - r->dim;
    const double r2 = sq_dist(x, y);
    if (r2 == 0.0 && expo < 0.0)
      throw numerical_error("riesz kernel: singular on the diagonal");
    if (r2 == 0.0) return 0.0;
    return std::exp(0.5 * expo * std::log(r2) + r->log_scale);
  }
  if (std::holds_alternative<AdditiveL1>(k)) {
    return 0.5 * (l1_norm(x) + l1_norm(y) - l1_dist(x, y));
  }
  const auto& d = std::get<DiscreteKernel>(k);
  const int lx = discrete_level(x[0]);
  const int ly = discrete_level(y[0]);
  if (lx < 1 || lx > d.levels || ly < 1 || ly > d.levels)
    throw validation_error("discrete kernel: level outside {1..K}");
  if (lx != ly) return 0.0;
  return std::ldexp(1.0, -lx);
}

bool kernel_singular_on_diagonal(const KernelSpec& k) {
  if (const auto* g = std::get_if<GreenGff>(&k)) return g->dim >= 2;
  if (const auto* r = std::get_if<RieszGff>(&k)) return 2.0 * r->alpha - r->dim < 0.0;
  return false;
}

bool kernel_variogram_form(const KernelSpec& k) {
  if (std::holds_alternative<Fractional>(k) || std::holds_alternative<AdditiveL1>(k)) return true;
  if (const auto* g = std::get_if<GreenGff>(&k)) return g->dim == 1;
  return false;
}

double kernel_psd_check(const KernelSpec& k, const EmpiricalMeasure& points,
                        std::span<const double> weights) {
  if (points.size() != weights.size())
    throw validation_error("kernel_psd_check: points/weights size mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < points.size(); ++j)
      total += weights[i] * weights[j] * kernel_eval(k, points.point(i), points.point(j));
  return total;
}

KernelSpec parse_kernel_spec(std::string_view text) {
  const auto colon = text.find(':');
  const std::string family(text.substr(0, colon));
  std::map<std::string, double> params;
  if (colon != std::string_view::npos) {
    std::string rest(text.substr(colon + 1));
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos)
        throw validation_error("kernel spec: expected key=value in '" + item + "'");
      try {
        params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw validation_error("kernel spec: bad numeric value in '" + item + "'");
      }
    }
  }
  auto take = [&](const std::string& key, double fallback, bool required) {
    auto it = params.find(key);
    if (it == params.end()) {
      if (required) throw validation_error("kernel spec: missing parameter " + key);
      return fallback;
    }
    const double v = it->second;
    params.erase(it);
    return v;
  };
  KernelSpec spec;
  if (family == "fractional") {
    Fractional f;
    f.hurst = take("H", 0.5, true);
    f.dim = static_cast<int>(take("d", 0, false));  // 0 = infer from data
    spec = f;
  } else if (family == "green") {
    spec = GreenGff{static_cast<int>(take("d", 1, true))};
  } else if (family == "riesz") {
    RieszGff r;
    r.alpha = take("alpha", 1.0, true);
    r.dim = static_cast<int>(take("d", 3, true));
    r.log_scale = take("log_scale", 0.0, false);
    spec = r;
  } else if (family == "additive") {
    spec = AdditiveL1{static_cast<int>(take("d", 0, false))};
  } else if (family == "discrete") {
    spec = DiscreteKernel{static_cast<int>(take("K", 2, true))};
  } else {
    throw validation_error("kernel spec: unknown family '" + family + "'");
  }
  if (!params.empty())
    throw validation_error("kernel spec: unknown parameter '" + params.begin()->first + "'");
  // dim 0 means "infer later"; skip full validation until then.
  if (kernel_dim(spec) != 0) validate_kernel(spec);
  return spec;
}

std::string kernel_name(const KernelSpec& k) {
  std::ostringstream os;
  if (const auto* f = std::get_if<Fractional>(&k)) {
    os << "fractional:H=" << f->hurst;
  } else if (const auto* g = std::get_if<GreenGff>(&k)) {
    os << "green:d=" << g->dim;
  } else if (const auto* r = std::get_if<RieszGff>(&k)) {
    os << "riesz:alpha=" << r->alpha << ",d=" << r->dim;
  } else if (std::holds_alternative<AdditiveL1>(k)) {
    os << "additive";
  } else {
    os << "discrete:K=" << std::get<DiscreteKernel>(k).levels;
  }
  return os.str();
}

int kernel_dim(const KernelSpec& k) {
  if (const auto* f = std::get_if<Fractional>(&k)) return f->dim;
  if (const auto* g = std::get_if<GreenGff>(&k)) return g->dim;
  if (const auto* r = std::get_if<RieszGff>(&k)) return r->dim;
  if (const auto* a = std::get_if<AdditiveL1>(&k)) return a->dim;
  return 1;  // discrete kernels live on 1-d integer levels
}

}  // namespace kdist
