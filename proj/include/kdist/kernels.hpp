#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "kdist/measures.hpp"

namespace kdist {

// k(x,y) = ½(‖x‖^{2H} + ‖y‖^{2H} − ‖x−y‖^{2H}). H=1 is admitted and equals
// the dot product x·y, so sweeps can include the endpoint.
struct Fractional {
  double hurst = 0.5;
  int dim = 1;
};

// Laplacian Green kernels: d=1 gives ½(|x|+|y|−|x−y|), d=2 the log kernel,
// d>2 ‖x−y‖^{2−d} / ((d−2)·Vol(S^{d−1})).
struct GreenGff {
  int dim = 1;
};

// k(x,y) = exp(log_scale)·‖x−y‖^{2α−d}, proportionality constant fixed to 1.
// log_scale is the caller-supplied rescaling recorded in output metadata.
struct RieszGff {
  double alpha = 1.0;
  int dim = 3;
  double log_scale = 0.0;
};

// k(x,y) = ½(‖x‖₁ + ‖y‖₁ − ‖x−y‖₁).
struct AdditiveL1 {
  int dim = 1;
};

// k(x,y) = Σ_k 2^{−k} 1_{x=k} 1_{y=k} on levels {1..K}.
struct DiscreteKernel {
  int levels = 2;
};

using KernelSpec = std::variant<Fractional, GreenGff, RieszGff, AdditiveL1, DiscreteKernel>;

void validate_kernel(const KernelSpec& k);

double kernel_eval(const KernelSpec& k, std::span<const double> x, std::span<const double> y);

// True when k(x,x) cannot be evaluated (log/negative-power kernels).
bool kernel_singular_on_diagonal(const KernelSpec& k);

// True for the ½(a(x)+a(y)−c(x,y)) family whose one-point terms cancel on
// mass-zero weightings.
bool kernel_variogram_form(const KernelSpec& k);

// Σ_{i,j} w_i w_j k(x_i, x_j).
double kernel_psd_check(const KernelSpec& k, const EmpiricalMeasure& points,
                        std::span<const double> weights);

// Grammar: fractional:H=0.5 | green:d=3 | riesz:alpha=5,d=16 | additive | discrete:K=8
KernelSpec parse_kernel_spec(std::string_view text);
std::string kernel_name(const KernelSpec& k);

// 0 when the kernel accepts any ambient dimension.
int kernel_dim(const KernelSpec& k);

}  // namespace kdist
