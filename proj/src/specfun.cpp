#include "gupest/specfun.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace gupest::specfun {

namespace {

// Lanczos approximation, g = 7, 9 coefficients. Evaluated in long double so
// the double result stays within ~1 ulp even where lnGamma is large; the
// toolkit assembles Gamma-ratio prefactors from differences of these values.
constexpr long double kLanczos[9] = {
    0.99999999999980993L,     676.5203681218851L,   -1259.1392167224028L,
    771.32342877765313L,     -176.61502916214059L,  12.507343278686905L,
    -0.13857109526572012L,   9.9843695780195716e-6L, 1.5056327351493116e-7L};

constexpr long double kLnSqrtTwoPi = 0.91893853320467274178032973640562L;
constexpr long double kPiL = 3.14159265358979323846264338327950L;

}  // namespace

namespace detail {

long double ln_gamma_ld(long double x) {
  if (x < 0.5L) {
    // reflection: lnGamma(x) = ln(pi / sin(pi x)) - lnGamma(1 - x)
    return std::log(kPiL / std::sin(kPiL * x)) - ln_gamma_ld(1.0L - x);
  }
  const long double z = x - 1.0L;
  long double a = kLanczos[0];
  for (int k = 1; k < 9; ++k) a += kLanczos[k] / (z + k);
  const long double t = z + 7.5L;
  return kLnSqrtTwoPi + (z + 0.5L) * std::log(t) - t + std::log(a);
}

}  // namespace detail

double ln_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("ln_gamma: requires x > 0");
  return static_cast<double>(detail::ln_gamma_ld(static_cast<long double>(x)));
}

double gegenbauer(int n, double lambda, double s) {
  if (n < 0 || n > kMaxPolyOrder)
    throw std::domain_error("gegenbauer: order outside supported range [0, " +
                            std::to_string(kMaxPolyOrder) + "]");
  if (!(lambda > 0.0)) throw std::domain_error("gegenbauer: requires lambda > 0");
  if (!(std::abs(s) <= 1.0 + 1e-12))
    throw std::domain_error("gegenbauer: requires |s| <= 1");

  if (n == 0) return 1.0;
  double c_prev = 1.0;
  double c = 2.0 * lambda * s;
  for (int k = 2; k <= n; ++k) {
    const double c_next =
        (2.0 * (k + lambda - 1.0) * s * c - (k + 2.0 * lambda - 2.0) * c_prev) / k;
    c_prev = c;
    c = c_next;
  }
  return c;
}

std::complex<double> hyp2f1_terminating(int n, std::complex<double> b,
                                        std::complex<double> c,
                                        std::complex<double> z) {
  if (n < 0 || n > kMaxPolyOrder)
    throw std::domain_error("hyp2f1_terminating: order outside supported range");
  // (c)_k must not vanish for k < n (the k-th term divides by c + k - 1).
  for (int k = 0; k < n; ++k) {
    const std::complex<double> ck = c + static_cast<double>(k);
    if (std::abs(ck) < 1e-14 * std::max(1.0, std::abs(c)))
      throw std::domain_error("hyp2f1_terminating: pole in the (c)_k Pochhammer factor");
  }

  // Left-to-right term recurrence with Neumaier-compensated accumulation,
  // carried in long double: the i^n phase of the eigenfunction form relies
  // on near-exact cancellation of the off-phase part across terms.
  using CL = std::complex<long double>;
  const CL bl(b.real(), b.imag()), cl(c.real(), c.imag()), zl(z.real(), z.imag());
  CL term(1.0L, 0.0L);
  long double sum_re = 1.0L, comp_re = 0.0L;
  long double sum_im = 0.0L, comp_im = 0.0L;
  for (int k = 0; k < n; ++k) {
    const long double kd = static_cast<long double>(k);
    term *= (CL(-n + kd, 0.0L) * (bl + kd)) / ((cl + kd) * CL(kd + 1.0L, 0.0L)) * zl;
    const long double tr = term.real(), ti = term.imag();
    long double t = sum_re + tr;
    comp_re += (std::abs(sum_re) >= std::abs(tr)) ? (sum_re - t) + tr : (tr - t) + sum_re;
    sum_re = t;
    t = sum_im + ti;
    comp_im += (std::abs(sum_im) >= std::abs(ti)) ? (sum_im - t) + ti : (ti - t) + sum_im;
    sum_im = t;
  }
  return {static_cast<double>(sum_re + comp_re), static_cast<double>(sum_im + comp_im)};
}

}  // namespace gupest::specfun
