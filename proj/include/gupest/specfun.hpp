#pragma once

#include <complex>

namespace gupest::specfun {

/// Highest polynomial degree / quantum number the toolkit guarantees
/// accuracy for.
inline constexpr int kMaxPolyOrder = 12;

/// ln Gamma(x) for x > 0. Relative error <= 1e-13 over [1e-3, 1e6]
/// (absolute near the zeros at x = 1, 2).
double ln_gamma(double x);

/// Gegenbauer polynomial C_n^(lambda)(s) by the three-term recurrence
///   n C_n = 2 (n + lambda - 1) s C_{n-1} - (n + 2 lambda - 2) C_{n-2}.
/// Requires 0 <= n <= kMaxPolyOrder, lambda > 0, |s| <= 1.
double gegenbauer(int n, double lambda, double s);

/// Terminating Gauss hypergeometric series
///   2F1(-n, b; c; z) = sum_{k=0}^{n} (-n)_k (b)_k / (c)_k z^k / k!
/// evaluated left to right with compensated summation. Throws
/// std::domain_error if (c)_k vanishes within the summation range.
std::complex<double> hyp2f1_terminating(int n, std::complex<double> b,
                                        std::complex<double> c,
                                        std::complex<double> z);

namespace detail {
/// Extended-precision core of ln_gamma. Prefactor assembly subtracts
/// lnGamma values of order 1e5 down to O(10); doing that in long double
/// keeps the residual rounding jitter out of the beta finite differences.
long double ln_gamma_ld(long double x);
}  // namespace detail

}  // namespace gupest::specfun
