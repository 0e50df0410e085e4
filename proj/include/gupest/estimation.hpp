#pragma once

#include <array>
#include <utility>

#include "gupest/hilbert.hpp"
#include "gupest/states.hpp"

namespace gupest {

/// Every Fisher-information quantity the toolkit reports at one (state, beta):
///   H        quantum Fisher information,
///   F        momentum-measurement FI of the mu-relative outcome density,
///   I_mu     integration-measure contribution,
///   F_amended = F + I_mu (exactly, by construction),
///   F_classical_full  FI of the Lebesgue outcome density mu q, including the
///                     cross term (this is what governs simulated MLE variance),
///   R = beta^2 F_amended,  Q = beta^2 H.
struct EstimationReport {
  double beta;
  double H;
  double F;
  double I_mu;
  double F_amended;
  double F_classical_full;
  double R;
  double Q;
};

/// Small-beta reference polynomials c0 + c1 beta + c2 beta^2 for H and I_mu
/// of the eigenstates n = 0, 1, 2 (m = omega = 1).
struct TaylorReference {
  int n;
  std::array<double, 3> h_coeffs;
  std::array<double, 3> imu_coeffs;

  double h_at(double beta) const {
    return h_coeffs[0] + beta * (h_coeffs[1] + beta * h_coeffs[2]);
  }
  double imu_at(double beta) const {
    return imu_coeffs[0] + beta * (imu_coeffs[1] + beta * imu_coeffs[2]);
  }
};

TaylorReference taylor_reference(int n);

/// Pure-state QFI
///   H = 4 <d_beta psi|d_beta psi> - 4 [Im <psi|d_beta psi>]^2
/// with deformed inner products at the central beta and numerical d_beta of
/// the full superposition wavefunction values.
double qfi_pure(const PureState& state, const Deformation& d, const OscillatorConfig& cfg,
                const QuadratureSpec& qspec = {}, const DerivativeSpec& dspec = {});

/// Eigenbasis-diagonal mixed-state QFI
///   H = 2 sum_{nm} | dp_m delta_mn + p_n <psi_m|d psi_n> + p_m <d psi_m|psi_n> |^2
///                  / (p_n + p_m)
/// over basis indices up to min(kMaxPolyOrder, max populated + 8), restricted
/// to pairs with p_n + p_m above a 1e-14 weight floor. Thermal dp_m uses the
/// closed-form dE_n/dbeta.
double qfi_mixed(const MixedState& state, const Deformation& d, const OscillatorConfig& cfg,
                 const QuadratureSpec& qspec = {}, const DerivativeSpec& dspec = {});

/// Momentum-measurement report for the mu-relative outcome density
/// q(p|beta) = sum_n p_n(beta) |psi_n(p;beta)|^2:
///   F     = int dp mu (d_beta q)^2 / q
///   I_mu  = int dp mu q (d_beta ln mu)^2
///   F_classical_full = int dp mu q (d_beta ln q + d_beta ln mu)^2.
/// Density points below a 1e-300 positivity floor contribute zero.
EstimationReport fi_momentum(const PureState& state, const Deformation& d,
                             const OscillatorConfig& cfg, const QuadratureSpec& qspec = {},
                             const DerivativeSpec& dspec = {});
EstimationReport fi_momentum(const MixedState& state, const Deformation& d,
                             const OscillatorConfig& cfg, const QuadratureSpec& qspec = {},
                             const DerivativeSpec& dspec = {});
EstimationReport fi_momentum(const StateVariant& state, const Deformation& d,
                             const OscillatorConfig& cfg, const QuadratureSpec& qspec = {},
                             const DerivativeSpec& dspec = {});

/// (R, Q) = (beta^2 F_amended, beta^2 H).
std::pair<double, double> snr_qsnr(const EstimationReport& report);

}  // namespace gupest
