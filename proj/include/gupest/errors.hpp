#pragma once

#include <stdexcept>
#include <string>

namespace gupest {

/// Quadrature or derivative machinery failed to reach the requested
/// tolerance. Carries the best available estimate and its error bound so
/// callers can decide whether to proceed anyway.
class accuracy_error : public std::runtime_error {
 public:
  accuracy_error(const std::string& what, double best_estimate, double error_bound)
      : std::runtime_error(what), best_(best_estimate), bound_(error_bound) {}

  double best_estimate() const noexcept { return best_; }
  double error_bound() const noexcept { return bound_; }

 private:
  double best_;
  double bound_;
};

/// lambda is within 1e-6 of an integer: the hypergeometric-form
/// normalization constant is written through sin(pi*lambda) and
/// Gamma(1-n-lambda) and degenerates there. Use the Gegenbauer form.
class degeneracy_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The likelihood maximum sits at a bracket endpoint.
class bracket_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent internal state (e.g. a non-monotone tabulated CDF).
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gupest
