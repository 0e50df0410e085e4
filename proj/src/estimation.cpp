#include "gupest/estimation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace gupest {

using specfun::kMaxPolyOrder;

namespace {

constexpr double kWeightFloor = 1e-14;
constexpr double kDensityFloor = 1e-300;
constexpr int kBasisHeadroom = 8;

// Central differences of O(1) wavefunction values carry cancellation noise
// ~eps/(2 beta h); integrands built from them cannot satisfy tolerances below
// that floor, so the requested tolerances are clamped to it.
QuadratureSpec fd_noise_adjusted(QuadratureSpec q, const Deformation& d,
                                 const DerivativeSpec& ds) {
  const double h_min = ds.rel_step / static_cast<double>(1 << (ds.richardson_levels - 1));
  const double noise =
      4.0 * std::numeric_limits<double>::epsilon() / (2.0 * d.beta() * h_min);
  q.abs_tol = std::max(q.abs_tol, noise);
  q.rel_tol = std::max(q.rel_tol, noise);
  return q;
}

using Buf = std::array<double, kMaxPolyOrder + 1>;

EstimationReport fi_core(const std::function<void(double, double&, double&)>& density,
                         double H, double beta, const QuadratureSpec& qspec) {
  // qspec arrives already fd-noise adjusted
  auto integrand = [&](double p, std::span<double> out) {
    double q, dq;
    density(p, q, dq);
    const double mu = 1.0 / (1.0 + beta * p * p);
    const double dlnmu = -p * p * mu;
    double f_term = 0.0, fcf_term = 0.0;
    if (q > kDensityFloor) {
      f_term = dq * dq / q;
      const double dlnrho = dq / q + dlnmu;
      fcf_term = q * dlnrho * dlnrho;
    }
    out[0] = mu * f_term;
    out[1] = mu * q * dlnmu * dlnmu;
    out[2] = mu * fcf_term;
  };
  const std::vector<double> r = integrate_line_vector(integrand, 3, qspec, 8.0);
  EstimationReport rep;
  rep.beta = beta;
  rep.H = H;
  rep.F = r[0];
  rep.I_mu = r[1];
  rep.F_amended = rep.F + rep.I_mu;
  rep.F_classical_full = r[2];
  rep.R = beta * beta * rep.F_amended;
  rep.Q = beta * beta * rep.H;
  return rep;
}

std::vector<double> thermal_weight_derivatives(const MixedState& state,
                                               const Deformation& d,
                                               const OscillatorConfig& cfg) {
  std::vector<double> dp(static_cast<std::size_t>(state.max_n()) + 1, 0.0);
  if (!state.beta_dependent_weights) return dp;
  if (!state.temperature)
    throw std::logic_error("MixedState: beta-dependent weights without a temperature");
  const double T = *state.temperature;
  double avg = 0.0;
  for (const auto& [n, w] : state.weights) avg += w * denergy_dbeta(n, d, cfg);
  for (const auto& [n, w] : state.weights)
    dp[static_cast<std::size_t>(n)] = w * (avg - denergy_dbeta(n, d, cfg)) / T;
  return dp;
}

}  // namespace

TaylorReference taylor_reference(int n) {
  switch (n) {
    case 0:
      return {0, {9.0 / 8.0, -53.0 / 8.0, 803.0 / 32.0}, {3.0 / 4.0, -3.0, 9.0}};
    case 1:
      return {1, {45.0 / 8.0, -351.0 / 8.0, 7633.0 / 32.0},
              {15.0 / 4.0, -45.0 / 2.0, 405.0 / 4.0}};
    case 2:
      return {2, {123.0 / 8.0, -1255.0 / 8.0, 36401.0 / 32.0},
              {39.0 / 4.0, -165.0 / 2.0, 2043.0 / 4.0}};
    default:
      throw std::domain_error("taylor_reference: only n = 0, 1, 2 are tabulated");
  }
}

double qfi_pure(const PureState& state, const Deformation& d, const OscillatorConfig& cfg,
                const QuadratureSpec& qspec, const DerivativeSpec& dspec) {
  state.validate();
  detail::require_wavefunction_args(state.max_n(), d);
  const int n_max = state.max_n();
  const EigenbasisEvaluator vals(d, cfg, n_max);
  const EigenbasisDerivative ders(d, cfg, n_max, dspec);
  const double beta = d.beta();

  auto integrand = [&](double p, std::span<double> out) {
    Buf v, dv;
    vals.eval_all(p, std::span<double>(v.data(), n_max + 1));
    ders.eval_all(p, std::span<double>(dv.data(), n_max + 1));
    std::complex<double> psi{0.0, 0.0}, dpsi{0.0, 0.0};
    for (const auto& [n, c] : state.coeffs) {
      psi += c * v[static_cast<std::size_t>(n)];
      dpsi += c * dv[static_cast<std::size_t>(n)];
    }
    const double mu = 1.0 / (1.0 + beta * p * p);
    out[0] = std::norm(dpsi) * mu;
    out[1] = (std::conj(psi) * dpsi).imag() * mu;
  };
  const std::vector<double> r =
      integrate_line_vector(integrand, 2, fd_noise_adjusted(qspec, d, dspec), 8.0);
  return 4.0 * (r[0] - r[1] * r[1]);
}

double qfi_mixed(const MixedState& state, const Deformation& d, const OscillatorConfig& cfg,
                 const QuadratureSpec& qspec, const DerivativeSpec& dspec) {
  state.validate();
  detail::require_wavefunction_args(state.max_n(), d);
  const int basis_max = std::min(kMaxPolyOrder, state.max_n() + kBasisHeadroom);
  const int dim = basis_max + 1;
  const EigenbasisEvaluator vals(d, cfg, basis_max);
  const EigenbasisDerivative ders(d, cfg, basis_max, dspec);
  const double beta = d.beta();

  // D[m][n] = <psi_m | d_beta psi_n>; odd m+n vanishes by parity, so only
  // even pairs are integrated.
  std::vector<std::pair<int, int>> pairs;
  for (int m = 0; m < dim; ++m)
    for (int n = 0; n < dim; ++n)
      if ((m + n) % 2 == 0) pairs.emplace_back(m, n);

  auto integrand = [&](double p, std::span<double> out) {
    Buf v, dv;
    vals.eval_all(p, std::span<double>(v.data(), dim));
    ders.eval_all(p, std::span<double>(dv.data(), dim));
    const double mu = 1.0 / (1.0 + beta * p * p);
    for (std::size_t k = 0; k < pairs.size(); ++k)
      out[k] = mu * v[static_cast<std::size_t>(pairs[k].first)] *
               dv[static_cast<std::size_t>(pairs[k].second)];
  };
  const std::vector<double> flat = integrate_line_vector(
      integrand, static_cast<int>(pairs.size()), fd_noise_adjusted(qspec, d, dspec), 8.0);

  std::vector<double> D(static_cast<std::size_t>(dim) * dim, 0.0);
  for (std::size_t k = 0; k < pairs.size(); ++k)
    D[static_cast<std::size_t>(pairs[k].first) * dim + pairs[k].second] = flat[k];

  std::vector<double> pw(static_cast<std::size_t>(dim), 0.0);
  for (const auto& [n, w] : state.weights) pw[static_cast<std::size_t>(n)] = w;
  std::vector<double> dpw_small = thermal_weight_derivatives(state, d, cfg);
  std::vector<double> dpw(static_cast<std::size_t>(dim), 0.0);
  std::copy(dpw_small.begin(), dpw_small.end(), dpw.begin());

  double H = 0.0;
  for (int n = 0; n < dim; ++n) {
    for (int m = 0; m < dim; ++m) {
      const double pn = pw[static_cast<std::size_t>(n)];
      const double pm = pw[static_cast<std::size_t>(m)];
      if (pn + pm <= kWeightFloor) continue;
      const double term = (m == n ? dpw[static_cast<std::size_t>(m)] : 0.0) +
                          pn * D[static_cast<std::size_t>(m) * dim + n] +
                          pm * D[static_cast<std::size_t>(n) * dim + m];
      H += 2.0 * term * term / (pn + pm);
    }
  }
  return H;
}

EstimationReport fi_momentum(const PureState& state, const Deformation& d,
                             const OscillatorConfig& cfg, const QuadratureSpec& qspec,
                             const DerivativeSpec& dspec) {
  state.validate();
  detail::require_wavefunction_args(state.max_n(), d);
  const double H = qfi_pure(state, d, cfg, qspec, dspec);
  const int n_max = state.max_n();
  const EigenbasisEvaluator vals(d, cfg, n_max);
  const EigenbasisDerivative ders(d, cfg, n_max, dspec);

  auto density = [&](double p, double& q, double& dq) {
    Buf v, dv;
    vals.eval_all(p, std::span<double>(v.data(), n_max + 1));
    ders.eval_all(p, std::span<double>(dv.data(), n_max + 1));
    std::complex<double> psi{0.0, 0.0}, dpsi{0.0, 0.0};
    for (const auto& [n, c] : state.coeffs) {
      psi += c * v[static_cast<std::size_t>(n)];
      dpsi += c * dv[static_cast<std::size_t>(n)];
    }
    q = std::norm(psi);
    dq = 2.0 * (std::conj(psi) * dpsi).real();
  };
  return fi_core(density, H, d.beta(), fd_noise_adjusted(qspec, d, dspec));
}

EstimationReport fi_momentum(const MixedState& state, const Deformation& d,
                             const OscillatorConfig& cfg, const QuadratureSpec& qspec,
                             const DerivativeSpec& dspec) {
  state.validate();
  detail::require_wavefunction_args(state.max_n(), d);
  const double H = qfi_mixed(state, d, cfg, qspec, dspec);
  const int n_max = state.max_n();
  const EigenbasisEvaluator vals(d, cfg, n_max);
  const EigenbasisDerivative ders(d, cfg, n_max, dspec);
  const std::vector<double> dpw = thermal_weight_derivatives(state, d, cfg);

  auto density = [&](double p, double& q, double& dq) {
    Buf v, dv;
    vals.eval_all(p, std::span<double>(v.data(), n_max + 1));
    ders.eval_all(p, std::span<double>(dv.data(), n_max + 1));
    q = 0.0;
    dq = 0.0;
    for (const auto& [n, w] : state.weights) {
      const double vn = v[static_cast<std::size_t>(n)];
      q += w * vn * vn;
      dq += dpw[static_cast<std::size_t>(n)] * vn * vn +
            2.0 * w * vn * dv[static_cast<std::size_t>(n)];
    }
  };
  return fi_core(density, H, d.beta(), fd_noise_adjusted(qspec, d, dspec));
}

EstimationReport fi_momentum(const StateVariant& state, const Deformation& d,
                             const OscillatorConfig& cfg, const QuadratureSpec& qspec,
                             const DerivativeSpec& dspec) {
  return std::visit(
      [&](const auto& s) { return fi_momentum(s, d, cfg, qspec, dspec); }, state);
}

std::pair<double, double> snr_qsnr(const EstimationReport& report) {
  const double b2 = report.beta * report.beta;
  return {b2 * report.F_amended, b2 * report.H};
}

}  // namespace gupest
