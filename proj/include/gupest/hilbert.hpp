#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "gupest/model.hpp"

namespace gupest {

/// Tolerances for adaptive quadrature over the momentum line.
struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_refinements = 30;  // max bisection depth of any interval

  void validate() const;
};

/// Finite-difference step policy for d/dbeta of wavefunction values.
struct DerivativeSpec {
  double rel_step = 1e-4;      // h: evaluate at beta (1 +- h)
  int richardson_levels = 2;   // 1, 2 or 3 step-halving extrapolation levels

  void validate() const;
};

/// One converged leaf interval of the adaptive subdivision, with the mass of
/// the first integrand component on it. Feeds the sampler's CDF knots.
struct QuadSegment {
  double a;
  double b;
  double mass;
};

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<std::complex<double>(double)>;
/// Vector integrand: fills out[0..dim) with component values at p.
using VectorFn = std::function<void(double, std::span<double>)>;

/// integral over R of f(p) dp (the caller includes any weight in f).
/// The symmetric truncation half-width starts at initial_halfwidth and is
/// doubled until the decay-envelope tail estimate drops below abs_tol; f must
/// decay at least like p^-4 (every integrand in this toolkit does, through
/// mu_beta times the (1+beta p^2)^-lambda falloff). Throws accuracy_error on
/// non-convergence, carrying the best estimate.
double integrate_line(const RealFn& f, const QuadratureSpec& spec,
                      double initial_halfwidth = 8.0,
                      std::vector<QuadSegment>* leaves = nullptr);

/// Vector-valued version with a shared refinement grid; every component must
/// meet max(abs_tol, rel_tol |component|).
std::vector<double> integrate_line_vector(const VectorFn& f, int dim,
                                          const QuadratureSpec& spec,
                                          double initial_halfwidth = 8.0,
                                          std::vector<QuadSegment>* leaves = nullptr);

/// integral over R of mu_beta(p) f(p) dp.
double integrate_weighted(const RealFn& f, const Deformation& d,
                          const QuadratureSpec& spec);

/// <bra|ket> = integral mu_beta conj(bra) ket dp. Conjugate-symmetric on the
/// shared refinement grid: swapping arguments conjugates the result exactly.
std::complex<double> inner_product(const ComplexFn& bra, const ComplexFn& ket,
                                   const Deformation& d, const QuadratureSpec& spec);

/// d/dbeta of the eigenfunction values psi_0..psi_nmax at fixed p: central
/// differences [psi(p; beta(1+h)) - psi(p; beta(1-h))] / (2 beta h) with
/// Richardson extrapolation over step halvings. The derivative acts on
/// wavefunction values pointwise (lambda and the prefactor re-evaluated at
/// the shifted beta); inner products over these stay at the central beta.
class EigenbasisDerivative {
 public:
  EigenbasisDerivative(const Deformation& d, const OscillatorConfig& cfg, int n_max,
                       const DerivativeSpec& spec);

  int n_max() const noexcept { return n_max_; }
  void eval_all(double p, std::span<double> out) const;
  double eval(int n, double p) const;

 private:
  int n_max_;
  int levels_;
  double inv_denom_[3];                       // 1/(2 beta h_l)
  std::vector<EigenbasisEvaluator> shifted_;  // [up_0, down_0, up_1, ...]
};

/// Single-point convenience wrapper around EigenbasisDerivative.
double dpsi_dbeta(int n, double p, const Deformation& d, const OscillatorConfig& cfg,
                  const DerivativeSpec& spec);

}  // namespace gupest
