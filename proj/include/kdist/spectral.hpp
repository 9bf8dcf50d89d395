#pragma once

#include <span>
#include <variant>

namespace kdist {

// φ(ω) = ‖ω‖^{−(d+2H)} / ((2π)^{d/2} C_H): the stationary-increment density
// of the fractional field.
struct FractionalIncrementDensity {
  double hurst = 0.5;
  int dim = 1;
};

// φ(ω) = ‖ω‖^{−2α}, proportionality constant fixed to 1.
struct RieszStationaryDensity {
  double alpha = 1.0;
  int dim = 3;
};

using SpectralDensitySpec = std::variant<FractionalIncrementDensity, RieszStationaryDensity>;

double phi_eval(const SpectralDensitySpec& spec, std::span<const double> omega);

// Radial closed forms of ∫_{‖ω‖≤1} φ ‖ω‖^{2κ} and ∫_{‖ω‖>1} φ for the
// power-law densities; finiteness of the inner integral is exactly κ > H.
struct Lemma22Report {
  double kappa = 0.0;
  double threshold = 0.0;  // inner integral finite iff kappa > threshold
  bool inner_finite = false;
  double inner_value = 0.0;  // valid when finite
  bool outer_finite = false;
  double outer_value = 0.0;
  bool conditions_met = false;
};

Lemma22Report lemma22_condition_check(const FractionalIncrementDensity& spec, double kappa);

}  // namespace kdist
