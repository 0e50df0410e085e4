#include "gupest/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gupest {

using specfun::kMaxPolyOrder;
using specfun::ln_gamma;

OscillatorConfig::OscillatorConfig(double m, double omega) : m_(m), omega_(omega) {
  if (!(m > 0.0)) throw std::domain_error("OscillatorConfig: requires m > 0");
  if (!(omega > 0.0)) throw std::domain_error("OscillatorConfig: requires omega > 0");
}

double OscillatorConfig::length_scale() const noexcept {
  return std::sqrt(1.0 / (m_ * omega_));
}

Deformation::Deformation(double beta) : beta_(beta) {
  if (!(beta > 0.0) || !(beta <= kMaxBeta))
    throw std::domain_error("Deformation: requires 0 < beta <= 1");
}

double Deformation::delta_x0() const noexcept { return std::sqrt(beta_); }

namespace {

double lambda_from(double beta, const OscillatorConfig& cfg) {
  const double g = cfg.m() * cfg.omega() * beta;
  return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 / (g * g)));
}

}  // namespace

double lambda_param(const Deformation& d, const OscillatorConfig& cfg) {
  return lambda_from(d.beta(), cfg);
}

double measure(const Deformation& d, double p) {
  return 1.0 / (1.0 + d.beta() * p * p);
}

double energy(int n, const Deformation& d, const OscillatorConfig& cfg) {
  if (n < 0) throw std::domain_error("energy: requires n >= 0");
  const double b = d.beta();                     // dx0^2
  const double a2 = 1.0 / (cfg.m() * cfg.omega());  // a^2
  const double root = std::sqrt(b * b + 4.0 * a2 * a2);
  return 0.5 * cfg.k() * ((n + 0.5) * (b + root) + b * static_cast<double>(n) * n);
}

double denergy_dbeta(int n, const Deformation& d, const OscillatorConfig& cfg) {
  if (n < 0) throw std::domain_error("denergy_dbeta: requires n >= 0");
  const double b = d.beta();
  const double a2 = 1.0 / (cfg.m() * cfg.omega());
  const double root = std::sqrt(b * b + 4.0 * a2 * a2);
  return 0.5 * cfg.k() * ((n + 0.5) * (1.0 + b / root) + static_cast<double>(n) * n);
}

namespace detail {

void require_wavefunction_args(int n, const Deformation& d) {
  if (n < 0 || n > kMaxPolyOrder)
    throw std::domain_error("wavefunction order outside supported range [0, " +
                            std::to_string(kMaxPolyOrder) + "]");
  if (!d.in_wavefunction_window())
    throw std::domain_error("beta below the supported wavefunction window [1e-6, 1]");
}

}  // namespace detail

EigenbasisEvaluator::EigenbasisEvaluator(double beta, const OscillatorConfig& cfg,
                                         int n_max)
    : beta_(beta), lambda_(lambda_from(beta, cfg)), n_max_(n_max) {
  if (n_max < 0 || n_max > kMaxPolyOrder)
    throw std::domain_error("EigenbasisEvaluator: n_max outside supported range");
  // The log prefactor cancels lnGamma terms of order 1e5 down to O(10);
  // assembled in long double so the residual jitter stays below the beta
  // finite-difference resolution.
  using specfun::detail::ln_gamma_ld;
  const long double lam = static_cast<long double>(lambda_);
  const long double ln2 = 0.69314718055994530941723212145818L;
  const long double ln_pi = 1.14472988584940017414342735135306L;
  const long double common = 0.25L * std::log(static_cast<long double>(beta_)) +
                             (lam - 0.5L) * ln2 - 0.5L * ln_pi + ln_gamma_ld(lam);
  ln_pref_.resize(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    ln_pref_[n] = static_cast<double>(
        common + 0.5L * (ln_gamma_ld(n + 1.0L) + std::log(lam + n) -
                         ln_gamma_ld(n + 2.0L * lam)));
  }
}

void EigenbasisEvaluator::eval_all(double p, std::span<double> out) const {
  const double bp2 = beta_ * p * p;
  const double t = 1.0 + bp2;
  const double log_t = std::log1p(bp2);
  const double s = p * std::sqrt(beta_ / t);
  const double base = -0.5 * lambda_ * log_t;
  double c_prev = 1.0;
  double c = 2.0 * lambda_ * s;
  for (int n = 0; n <= n_max_; ++n) {
    double cn;
    if (n == 0) {
      cn = c_prev;
    } else if (n == 1) {
      cn = c;
    } else {
      const double c_next =
          (2.0 * (n + lambda_ - 1.0) * s * c - (n + 2.0 * lambda_ - 2.0) * c_prev) / n;
      c_prev = c;
      c = c_next;
      cn = c;
    }
    out[static_cast<std::size_t>(n)] = std::exp(ln_pref_[n] + base) * cn;
  }
}

double EigenbasisEvaluator::eval(int n, double p) const {
  const double bp2 = beta_ * p * p;
  const double t = 1.0 + bp2;
  const double s = p * std::sqrt(beta_ / t);
  return std::exp(ln_pref_[n] - 0.5 * lambda_ * std::log1p(bp2)) *
         specfun::gegenbauer(n, lambda_, s);
}

double psi_gegenbauer(int n, double p, const Deformation& d, const OscillatorConfig& cfg) {
  detail::require_wavefunction_args(n, d);
  return EigenbasisEvaluator(d, cfg, n).eval(n, p);
}

std::complex<double> psi_hypergeometric(int n, double p, const Deformation& d,
                                        const OscillatorConfig& cfg) {
  detail::require_wavefunction_args(n, d);
  const double lam = lambda_param(d, cfg);
  if (std::abs(lam - std::round(lam)) < 1e-6)
    throw degeneracy_error(
        "psi_hypergeometric: lambda within 1e-6 of an integer; "
        "the normalization constant degenerates (use the Gegenbauer form)");

  const double b = d.beta();
  // |N_n| in log space, with sin(pi lambda) Gamma(1-n-lambda) rewritten via
  // the reflection identity as (-1)^n pi / Gamma(n+lambda); the (-1)^n joins
  // the (-i)^n phase to give i^n.
  const double ln_norm = 0.25 * std::log(b) + (lam + n - 0.5) * std::numbers::ln2 +
                         ln_gamma(n + lam) - 0.5 * std::log(std::numbers::pi) +
                         0.5 * (std::log(lam + n) - ln_gamma(n + 1.0) -
                                ln_gamma(n + 2.0 * lam));
  static constexpr std::complex<double> kPhase[4] = {
      {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};  // i^n
  const std::complex<double> series = specfun::hyp2f1_terminating(
      n, {1.0 - n - 2.0 * lam, 0.0}, {1.0 - n - lam, 0.0},
      {0.5, 0.5 * p * std::sqrt(b)});
  const double scale = std::exp(ln_norm - 0.5 * (n + lam) * std::log1p(b * p * p));
  return kPhase[n % 4] * scale * series;
}

}  // namespace gupest
