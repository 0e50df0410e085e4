#pragma once

#include <complex>
#include <span>
#include <vector>

#include "gupest/errors.hpp"
#include "gupest/specfun.hpp"

namespace gupest {

/// Harmonic-oscillator probe parameters in hbar = 1 units. The spring
/// constant k = m omega^2 and length scale a = sqrt(1/(m omega)) are always
/// recomputed from (m, omega).
class OscillatorConfig {
 public:
  OscillatorConfig() : OscillatorConfig(1.0, 1.0) {}
  OscillatorConfig(double m, double omega);

  double m() const noexcept { return m_; }
  double omega() const noexcept { return omega_; }
  double k() const noexcept { return m_ * omega_ * omega_; }
  double length_scale() const noexcept;  // a = sqrt(1/(m omega))

 private:
  double m_;
  double omega_;
};

/// Deformation strength beta of the commutator [x,p] = i (1 + beta p^2),
/// hbar = 1 units. Construction accepts any beta in (0, 1]; wavefunction
/// evaluation additionally requires beta >= 1e-6 (below it the log-space
/// prefactor assembly degrades), which in_wavefunction_window() reports.
class Deformation {
 public:
  explicit Deformation(double beta);

  double beta() const noexcept { return beta_; }
  double delta_x0() const noexcept;  // minimal uncertainty sqrt(beta)
  bool in_wavefunction_window() const noexcept { return beta_ >= 1e-6; }

  static constexpr double kMinWavefunctionBeta = 1e-6;
  static constexpr double kMaxBeta = 1.0;

 private:
  double beta_;
};

/// Gegenbauer order parameter
///   lambda = (1/2) { 1 + sqrt(1 + 4 / [(m omega)^2 beta^2]) } > 1.
double lambda_param(const Deformation& d, const OscillatorConfig& cfg);

/// Integration measure mu_beta(p) = 1 / (1 + beta p^2), in (0, 1].
double measure(const Deformation& d, double p);

/// Energy eigenvalue
///   E_n = (k/2) [ (n + 1/2)(dx0^2 + sqrt(dx0^4 + 4 a^4)) + dx0^2 n^2 ],
/// dx0^2 = beta. Strictly increasing in n.
double energy(int n, const Deformation& d, const OscillatorConfig& cfg);

/// Closed-form dE_n/dbeta:
///   (k/2) [ (n + 1/2)(1 + beta / sqrt(beta^2 + 4 a^4)) + n^2 ].
double denergy_dbeta(int n, const Deformation& d, const OscillatorConfig& cfg);

/// Momentum-space eigenfunction in the Gegenbauer form,
///   psi_n(p) = beta^{1/4} 2^{lambda-1/2} pi^{-1/2} Gamma(lambda)
///              sqrt(n! (lambda+n) / Gamma(n+2 lambda))
///              (1+beta p^2)^{-lambda/2} C_n^{(lambda)}(p sqrt(beta/(1+beta p^2))).
/// The Gamma-ratio prefactor is assembled in log space. This is the
/// production evaluation path.
double psi_gegenbauer(int n, double p, const Deformation& d, const OscillatorConfig& cfg);

/// The same eigenfunction in the hypergeometric form,
///   N_n (1+beta p^2)^{-(n+lambda)/2} 2F1(-n, 1-n-2lambda; 1-n-lambda;
///                                        (1 + i p sqrt(beta))/2),
/// with N_n = (-i)^n sqrt(pi) beta^{1/4} 2^{lambda+n-1/2}
///            [sin(pi lambda) Gamma(1-n-lambda)]^{-1}
///            sqrt((lambda+n)/(n! Gamma(n+2 lambda))).
/// sin(pi lambda) Gamma(1-n-lambda) is folded through the reflection
/// identity into (-1)^n pi / Gamma(n+lambda) and assembled in log space.
/// Exists for cross-validation only; the imaginary part of the result is
/// negligible and the real part equals psi_gegenbauer. Throws
/// degeneracy_error when |lambda - round(lambda)| < 1e-6.
std::complex<double> psi_hypergeometric(int n, double p, const Deformation& d,
                                        const OscillatorConfig& cfg);

/// Evaluates psi_0..psi_nmax at a fixed (beta, cfg) with the per-n log
/// prefactors precomputed once. All wavefunction-consuming code paths go
/// through this; it accepts a raw beta so finite-difference shifts around a
/// validated Deformation can reuse it.
class EigenbasisEvaluator {
 public:
  EigenbasisEvaluator(double beta, const OscillatorConfig& cfg, int n_max);
  EigenbasisEvaluator(const Deformation& d, const OscillatorConfig& cfg, int n_max)
      : EigenbasisEvaluator(d.beta(), cfg, n_max) {}

  int n_max() const noexcept { return n_max_; }
  double beta() const noexcept { return beta_; }
  double lambda() const noexcept { return lambda_; }

  /// out[k] = psi_k(p) for k = 0..n_max (out.size() must be n_max+1).
  void eval_all(double p, std::span<double> out) const;
  double eval(int n, double p) const;

 private:
  double beta_;
  double lambda_;
  int n_max_;
  std::vector<double> ln_pref_;
};

namespace detail {
/// Shared validation: throws unless n is a supported order and beta sits in
/// the wavefunction window.
void require_wavefunction_args(int n, const Deformation& d);
}  // namespace detail

}  // namespace gupest
