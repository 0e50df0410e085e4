#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gupest/model.hpp"

namespace gupest {

/// Normalized superposition over the deformed eigenbasis. Coefficient
/// indices are distinct, within the supported order range, and
/// sum |c_n|^2 = 1 within 1e-12.
struct PureState {
  std::vector<std::pair<int, std::complex<double>>> coeffs;

  int max_n() const;
  void validate() const;
};

/// Eigenbasis-diagonal statistical mixture: weights p_n >= 0 summing to 1
/// within 1e-12. beta_dependent_weights marks thermal states whose p_n carry
/// beta-dependence through E_n(beta); temperature is set for those.
struct MixedState {
  std::vector<std::pair<int, double>> weights;
  bool beta_dependent_weights = false;
  std::optional<double> temperature;

  int max_n() const;
  void validate() const;
};

struct ThermalSpec {
  double T;
  double tail_tol = 1e-12;

  void validate() const;
};

using StateVariant = std::variant<PureState, MixedState>;

/// |psi_n>.
PureState eigenstate(int n);

/// cos(phi) |psi_0> + sin(phi) |psi_1>.
PureState qubit_superposition(double phi);

/// cos(phi) |psi_0> + sin(phi) sin(theta) |psi_1> + sin(phi) cos(theta) |psi_2>.
PureState qutrit_superposition(double phi, double theta);

/// Weights {cos^2 theta on n=0, sin^2 theta on n=1}.
MixedState mixture_ground_first(double theta);

/// Boltzmann mixture p_n = exp(-E_n/T)/Z, truncated at the smallest N with
/// exp(-(E_N - E_0)/T) < tail_tol and renormalized. Throws std::domain_error
/// when the truncation exceeds the supported order range (lower T, or raise
/// tail_tol).
MixedState thermal_state(const ThermalSpec& spec, const Deformation& d,
                         const OscillatorConfig& cfg);

/// Plain-text state descriptors:
///   n:0 | qubit:phi=0.7854 | qutrit:phi=1.35,theta=0 | mix:theta=0.7854 |
///   thermal:T=0.5
/// Angles are radians. Thermal realization needs (d, cfg) for the spectrum.
StateVariant make_state(const std::string& descriptor, const Deformation& d,
                        const OscillatorConfig& cfg, double thermal_tail_tol = 1e-12);

std::string state_descriptor(const StateVariant& state);

}  // namespace gupest
