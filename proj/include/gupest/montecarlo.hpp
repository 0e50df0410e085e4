#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gupest/estimation.hpp"

namespace gupest {

/// Counter-style splittable generator (SplitMix64). stream(seed, id) yields
/// independent deterministic streams, one per Monte Carlo replica.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  static SplitMix64 stream(std::uint64_t seed, std::uint64_t stream_id) {
    SplitMix64 mixer(stream_id + 0x6A09E667F3BCC909ULL);
    return SplitMix64(seed ^ mixer.next());
  }

 private:
  std::uint64_t state_;
};

/// Monotone piecewise-linear tabulation of the outcome CDF
/// int_{-inf}^{x} mu_beta q dp, with knots refined where the density mass
/// concentrates (taken from the adaptive quadrature subdivision tree).
struct CdfTable {
  std::vector<double> x;
  std::vector<double> F;  // F.front() == 0, F.back() == 1

  double invert(double u) const;
  double value(double p) const;
};

/// Builds the CDF table for the momentum outcome density of `state` at d.
/// min_points is the minimum number of knots (default 4096).
CdfTable tabulate_outcome_cdf(const StateVariant& state, const Deformation& d,
                              const OscillatorConfig& cfg,
                              const QuadratureSpec& qspec = {}, int min_points = 4096);

struct SampleSet {
  double beta_true;
  std::string state_descriptor;
  std::uint64_t seed;
  double thermal_tail_tol = 1e-12;  // needed to re-realize thermal states
  std::vector<double> samples;
};

struct MleResult {
  double beta_hat;
  double loglik_at_hat;
  std::size_t n_samples;
  double stderr_estimate;  // from observed information; NaN if not concave
};

struct CrExperimentSummary {
  std::string state_descriptor;
  double beta_true;
  std::uint64_t seed;
  int replicas;
  std::size_t count;
  std::pair<double, double> bracket;
  std::vector<double> beta_hats;
  int bracket_edge_hits;  // replicas whose maximum sat on a bracket endpoint
  double mean;
  double variance;  // unbiased, over replicas
  double predicted_var_f;                 // 1 / (M F)
  double predicted_var_f_amended;         // 1 / (M F_amended)
  double predicted_var_f_classical_full;  // 1 / (M F_classical_full)
  EstimationReport report;                // full report at beta_true
};

/// Draws `count` i.i.d. momenta from mu_beta q by inverse-CDF sampling.
/// Bit-identical output for identical (state, d, cfg, count, seed).
SampleSet sample_momentum(const StateVariant& state, const Deformation& d,
                          const OscillatorConfig& cfg, std::size_t count,
                          std::uint64_t seed, const QuadratureSpec& qspec = {});

/// Maximum-likelihood estimate of beta over [bracket.first, bracket.second]
/// by golden-section refinement to relative tolerance 1e-6; the standard
/// error comes from the numerical second derivative of the log-likelihood at
/// the maximum. Throws bracket_error if the maximum sits on an endpoint.
MleResult mle_beta(const SampleSet& samples, std::pair<double, double> bracket,
                   const OscillatorConfig& cfg, const QuadratureSpec& qspec = {});

/// Full Cramer-Rao experiment: `replicas` independent sample sets (stream r
/// of `seed`), one MLE each, side by side with the three predicted
/// variances. Replicas whose maximum lands on a bracket endpoint are clamped
/// there and counted in bracket_edge_hits instead of aborting the batch.
/// The bracket defaults to [beta/5, 5 beta] clipped to the supported window.
CrExperimentSummary cr_experiment(const StateVariant& state, const Deformation& d,
                                  const OscillatorConfig& cfg, int replicas,
                                  std::size_t count, std::uint64_t seed,
                                  const QuadratureSpec& qspec = {},
                                  const DerivativeSpec& dspec = {});

}  // namespace gupest
