#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "gupest/errors.hpp"
#include "gupest/montecarlo.hpp"

using namespace gupest;

namespace {
const OscillatorConfig kUnit{1.0, 1.0};

double ks_distance(std::vector<double> samples, const CdfTable& table) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = table.value(samples[i]);
    worst = std::max(worst, std::abs(f - static_cast<double>(i) / n));
    worst = std::max(worst, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return worst;
}
}  // namespace

TEST_CASE("SplitMix64: deterministic streams") {
  SplitMix64 a(42), b(42), c(43);
  CHECK(a.next() == b.next());
  CHECK(a.next() == b.next());
  CHECK(a.next() != c.next());
  SplitMix64 s0 = SplitMix64::stream(7, 0);
  SplitMix64 s1 = SplitMix64::stream(7, 1);
  CHECK(s0.next() != s1.next());
  for (int i = 0; i < 1000; ++i) {
    const double u = s0.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("tabulate_outcome_cdf: endpoints, monotonicity, knot budget") {
  const Deformation d(0.01);
  const CdfTable t = tabulate_outcome_cdf(eigenstate(1), d, kUnit);
  CHECK(t.x.size() >= 4096);
  CHECK(t.F.front() == 0.0);
  CHECK(t.F.back() == 1.0);
  CHECK(t.value(t.x.front() - 100.0) == 0.0);
  CHECK(t.value(t.x.back() + 100.0) == 1.0);
  for (std::size_t i = 1; i < t.F.size(); ++i) CHECK(t.F[i] >= t.F[i - 1]);
  CHECK(t.invert(0.5) == doctest::Approx(0.0).epsilon(1e-9));  // even density
}

TEST_CASE("sample_momentum: bit-identical reproducibility") {
  const Deformation d(0.01);
  const SampleSet a = sample_momentum(eigenstate(0), d, kUnit, 512, 99);
  const SampleSet b = sample_momentum(eigenstate(0), d, kUnit, 512, 99);
  const SampleSet c = sample_momentum(eigenstate(0), d, kUnit, 512, 100);
  REQUIRE(a.samples.size() == 512);
  CHECK(a.samples == b.samples);
  CHECK(a.samples != c.samples);
  CHECK(a.state_descriptor == "n:0");
  CHECK(a.beta_true == 0.01);
}

TEST_CASE("sample_momentum: symmetric density has a balanced sign split") {
  const Deformation d(0.01);
  const SampleSet s = sample_momentum(eigenstate(0), d, kUnit, 100000, 4);
  std::size_t positive = 0;
  for (const double p : s.samples)
    if (p > 0.0) ++positive;
  const double n = static_cast<double>(s.samples.size());
  // binomial 4-sigma band around n/2
  CHECK(std::abs(static_cast<double>(positive) - 0.5 * n) <= 4.0 * 0.5 * std::sqrt(n));
}

TEST_CASE("sample_momentum: KS distance against the tabulated CDF") {
  const Deformation d(0.01);
  const CdfTable table = tabulate_outcome_cdf(eigenstate(1), d, kUnit);
  const SampleSet s = sample_momentum(eigenstate(1), d, kUnit, 100000, 5);
  const double ks = ks_distance(s.samples, table);
  const double critical_1pct = 1.62762 / std::sqrt(static_cast<double>(s.samples.size()));
  CHECK(ks < critical_1pct);
}

TEST_CASE("mle_beta: recovers the generating beta at large count") {
  const Deformation d(0.1);
  const SampleSet s = sample_momentum(eigenstate(1), d, kUnit, 1000000, 21);
  const MleResult r = mle_beta(s, {0.02, 0.4}, kUnit);
  CHECK(r.n_samples == 1000000);
  CHECK(std::isfinite(r.stderr_estimate));
  CHECK(r.stderr_estimate > 0.0);
  CHECK(std::abs(r.beta_hat - 0.1) <= 2.0 * r.stderr_estimate);
}

TEST_CASE("mle_beta: bracket that excludes the truth errors out") {
  const Deformation d(0.1);
  const SampleSet s = sample_momentum(eigenstate(1), d, kUnit, 20000, 22);
  CHECK_THROWS_AS(mle_beta(s, {0.2, 0.4}, kUnit), bracket_error);
  CHECK_THROWS_AS(mle_beta(s, {1e-8, 0.4}, kUnit), std::domain_error);
}

TEST_CASE("mle_beta: estimator bias shrinks with sample count") {
  const Deformation d(0.1);
  const std::pair<double, double> bracket{0.02, 0.4};
  auto mean_hat = [&](std::size_t count, std::uint64_t seed0, int reps) {
    double acc = 0.0;
    for (int r = 0; r < reps; ++r) {
      SampleSet s = sample_momentum(eigenstate(1), d, kUnit, count, seed0 + r);
      acc += mle_beta(s, bracket, kUnit).beta_hat;
    }
    return acc / reps;
  };
  const double b3 = std::abs(mean_hat(1000, 100, 24) - 0.1);
  const double b5 = std::abs(mean_hat(100000, 300, 24) - 0.1);
  // sd of the mean at count 1e3 is ~6e-3: allow that as statistical slack
  CHECK(b5 <= b3 + 6e-3);
  CHECK(b5 <= 1.5e-3);
}

TEST_CASE("cr_experiment: tracks the full classical Fisher prediction") {
  const Deformation d(0.1);
  const CrExperimentSummary s =
      cr_experiment(eigenstate(1), d, kUnit, 100, 10000, 2025);
  CHECK(s.replicas == 100);
  CHECK(s.count == 10000);
  CHECK(s.variance > 0.0);
  CHECK(std::isfinite(s.variance));
  CHECK(s.bracket_edge_hits == 0);
  // the three labelled predictions are all present and ordered
  CHECK(s.predicted_var_f_amended < s.predicted_var_f);
  CHECK(s.predicted_var_f < s.predicted_var_f_classical_full);
  // asymptotic regime: empirical variance within 20% of 1/(M Fcf)
  CHECK(s.variance / s.predicted_var_f_classical_full > 0.8);
  CHECK(s.variance / s.predicted_var_f_classical_full < 1.2);
  // unbiased within 3 combined standard errors
  const double se = std::sqrt(s.variance / s.replicas);
  CHECK(std::abs(s.mean - 0.1) <= 3.0 * se);
  CHECK_THROWS_AS(cr_experiment(eigenstate(1), d, kUnit, 5, 100, 1), std::domain_error);
}

TEST_CASE("cr_experiment: replica streams are independent of thread count") {
  const Deformation d(0.1);
  setenv("GUPEST_THREADS", "1", 1);
  const CrExperimentSummary serial = cr_experiment(eigenstate(0), d, kUnit, 12, 2000, 7);
  setenv("GUPEST_THREADS", "4", 1);
  const CrExperimentSummary parallel =
      cr_experiment(eigenstate(0), d, kUnit, 12, 2000, 7);
  unsetenv("GUPEST_THREADS");
  CHECK(serial.beta_hats == parallel.beta_hats);
}
