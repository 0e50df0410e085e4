#include "gupest/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gupest/errors.hpp"
#include "gupest/parallel.hpp"

namespace gupest {

using specfun::kMaxPolyOrder;

namespace {

constexpr double kDensityFloor = 1e-300;

// Frozen evaluation of the Lebesgue outcome density mu_beta q at one beta.
class FrozenDensity {
 public:
  FrozenDensity(const StateVariant& state, double beta, const OscillatorConfig& cfg)
      : beta_(beta),
        n_max_(std::visit([](const auto& s) { return s.max_n(); }, state)),
        eval_(beta, cfg, n_max_) {
    if (const auto* p = std::get_if<PureState>(&state)) {
      pure_ = true;
      coeff_.assign(static_cast<std::size_t>(n_max_) + 1, 0.0);
      for (const auto& [n, c] : p->coeffs) coeff_[static_cast<std::size_t>(n)] = c.real();
    } else {
      pure_ = false;
      const auto& m = std::get<MixedState>(state);
      coeff_.assign(static_cast<std::size_t>(n_max_) + 1, 0.0);
      for (const auto& [n, w] : m.weights) coeff_[static_cast<std::size_t>(n)] = w;
    }
  }

  double operator()(double p) const {
    std::array<double, kMaxPolyOrder + 1> v;
    eval_.eval_all(p, std::span<double>(v.data(), static_cast<std::size_t>(n_max_) + 1));
    double q = 0.0;
    if (pure_) {
      double amp = 0.0;
      for (int n = 0; n <= n_max_; ++n) amp += coeff_[static_cast<std::size_t>(n)] * v[n];
      q = amp * amp;
    } else {
      for (int n = 0; n <= n_max_; ++n)
        q += coeff_[static_cast<std::size_t>(n)] * v[n] * v[n];
    }
    return q / (1.0 + beta_ * p * p);
  }

 private:
  double beta_;
  int n_max_;
  EigenbasisEvaluator eval_;
  bool pure_;
  std::vector<double> coeff_;
};

// Pure states with complex coefficients cannot be re-realized from the
// plain-text descriptor used by the likelihood; the constructors only
// produce real ones.
void require_real_coeffs(const StateVariant& state) {
  if (const auto* p = std::get_if<PureState>(&state))
    for (const auto& [n, c] : p->coeffs)
      if (c.imag() != 0.0)
        throw std::domain_error("montecarlo: pure states must have real coefficients");
}

struct GoldenResult {
  double hat;
  double loglik;
  bool at_edge;
};

// Golden-section maximization of ll on [lo, hi] to relative tolerance 1e-6.
GoldenResult golden_max(const std::function<double(double)>& ll, double lo, double hi) {
  constexpr double kInvPhi = 0.6180339887498949;
  constexpr double kRelTol = 1e-6;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = ll(x1), f2 = ll(x2);
  while ((b - a) > kRelTol * b) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = ll(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = ll(x2);
    }
  }
  GoldenResult r;
  r.hat = (f1 >= f2) ? x1 : x2;
  r.loglik = std::max(f1, f2);
  const double width = b - a;
  r.at_edge = (r.hat - lo) < 3.0 * width || (hi - r.hat) < 3.0 * width;
  return r;
}

MleResult mle_core(const SampleSet& samples, std::pair<double, double> bracket,
                   const OscillatorConfig& cfg, bool* at_edge) {
  const auto [lo, hi] = bracket;
  if (!(lo < hi) || lo < Deformation::kMinWavefunctionBeta || hi > Deformation::kMaxBeta)
    throw std::domain_error("mle_beta: bracket must sit inside the supported beta window");
  if (samples.samples.empty()) throw std::domain_error("mle_beta: empty sample set");

  auto loglik = [&](double beta) {
    const Deformation d(beta);
    const StateVariant st =
        make_state(samples.state_descriptor, d, cfg, samples.thermal_tail_tol);
    const FrozenDensity rho(st, beta, cfg);
    double sum = 0.0;
    for (const double p : samples.samples) sum += std::log(std::max(rho(p), kDensityFloor));
    return sum;
  };

  const GoldenResult g = golden_max(loglik, lo, hi);
  if (at_edge) *at_edge = g.at_edge;

  // observed information at the maximum
  double delta = std::max(1e-3 * g.hat, 16.0 * 1e-6 * g.hat);
  delta = std::min({delta, g.hat - Deformation::kMinWavefunctionBeta,
                    Deformation::kMaxBeta - g.hat});
  double se = std::numeric_limits<double>::quiet_NaN();
  if (delta > 0.0) {
    const double d2 =
        (loglik(g.hat + delta) - 2.0 * g.loglik + loglik(g.hat - delta)) / (delta * delta);
    if (d2 < 0.0) se = 1.0 / std::sqrt(-d2);
  }
  return {g.hat, g.loglik, samples.samples.size(), se};
}

}  // namespace

double CdfTable::invert(double u) const {
  if (u <= 0.0) return x.front();
  if (u >= 1.0) return x.back();
  const auto it = std::upper_bound(F.begin(), F.end(), u);
  const std::size_t j = static_cast<std::size_t>(it - F.begin());
  const double f0 = F[j - 1], f1 = F[j];
  if (f1 <= f0) return x[j - 1];
  return x[j - 1] + (u - f0) / (f1 - f0) * (x[j] - x[j - 1]);
}

double CdfTable::value(double p) const {
  if (p <= x.front()) return 0.0;
  if (p >= x.back()) return 1.0;
  const auto it = std::upper_bound(x.begin(), x.end(), p);
  const std::size_t j = static_cast<std::size_t>(it - x.begin());
  const double w = (p - x[j - 1]) / (x[j] - x[j - 1]);
  return F[j - 1] + w * (F[j] - F[j - 1]);
}

CdfTable tabulate_outcome_cdf(const StateVariant& state, const Deformation& d,
                              const OscillatorConfig& cfg, const QuadratureSpec& qspec,
                              int min_points) {
  std::visit([](const auto& s) { s.validate(); }, state);
  detail::require_wavefunction_args(std::visit([](const auto& s) { return s.max_n(); }, state),
                                    d);
  const FrozenDensity rho(state, d.beta(), cfg);
  std::vector<QuadSegment> leaves;
  const double total =
      integrate_line([&rho](double p) { return rho(p); }, qspec, 8.0, &leaves);
  if (!(total > 0.0) || leaves.empty())
    throw internal_error("tabulate_outcome_cdf: density integrates to zero");

  double width_sum = 0.0, mass_sum = 0.0;
  for (const auto& leaf : leaves) {
    width_sum += leaf.b - leaf.a;
    mass_sum += std::max(leaf.mass, 0.0);
  }

  // 4-point Gauss-Legendre panel masses
  constexpr double kGlx[2] = {0.3399810435848563, 0.8611363115940526};
  constexpr double kGlw[2] = {0.6521451548625461, 0.3478548451374538};

  CdfTable table;
  table.x.push_back(leaves.front().a);
  table.F.push_back(0.0);
  double cum = 0.0;
  for (const auto& leaf : leaves) {
    const double share = 0.5 * std::max(leaf.mass, 0.0) / mass_sum +
                         0.5 * (leaf.b - leaf.a) / width_sum;
    const int panels = std::max(4, static_cast<int>(std::ceil(min_points * share)));
    const double h = (leaf.b - leaf.a) / panels;
    for (int i = 0; i < panels; ++i) {
      const double a = leaf.a + i * h;
      const double c = a + 0.5 * h;
      double m = 0.0;
      for (int j = 0; j < 2; ++j)
        m += kGlw[j] * (rho(c - 0.5 * h * kGlx[j]) + rho(c + 0.5 * h * kGlx[j]));
      m *= 0.5 * h;
      cum += std::max(m, 0.0);  // density is nonnegative; clamp roundoff
      table.x.push_back(a + h);
      table.F.push_back(cum);
    }
  }
  if (std::abs(cum - total) > 1e-6 * total)
    throw internal_error("tabulate_outcome_cdf: tabulated mass disagrees with quadrature");
  for (double& f : table.F) f /= cum;
  table.F.back() = 1.0;
  return table;
}

SampleSet sample_momentum(const StateVariant& state, const Deformation& d,
                          const OscillatorConfig& cfg, std::size_t count,
                          std::uint64_t seed, const QuadratureSpec& qspec) {
  if (count < 1) throw std::domain_error("sample_momentum: count must be >= 1");
  require_real_coeffs(state);
  const CdfTable table = tabulate_outcome_cdf(state, d, cfg, qspec);
  SampleSet out;
  out.beta_true = d.beta();
  out.state_descriptor = state_descriptor(state);
  out.seed = seed;
  out.samples.reserve(count);
  SplitMix64 rng = SplitMix64::stream(seed, 0);
  for (std::size_t i = 0; i < count; ++i) out.samples.push_back(table.invert(rng.uniform01()));
  return out;
}

MleResult mle_beta(const SampleSet& samples, std::pair<double, double> bracket,
                   const OscillatorConfig& cfg, const QuadratureSpec& qspec) {
  (void)qspec;
  bool at_edge = false;
  const MleResult r = mle_core(samples, bracket, cfg, &at_edge);
  if (at_edge)
    throw bracket_error("mle_beta: likelihood maximum at a bracket endpoint");
  return r;
}

CrExperimentSummary cr_experiment(const StateVariant& state, const Deformation& d,
                                  const OscillatorConfig& cfg, int replicas,
                                  std::size_t count, std::uint64_t seed,
                                  const QuadratureSpec& qspec, const DerivativeSpec& dspec) {
  if (replicas < 10) throw std::domain_error("cr_experiment: requires replicas >= 10");
  require_real_coeffs(state);

  CrExperimentSummary s;
  s.state_descriptor = state_descriptor(state);
  s.beta_true = d.beta();
  s.seed = seed;
  s.replicas = replicas;
  s.count = count;
  s.bracket = {std::max(Deformation::kMinWavefunctionBeta, d.beta() / 5.0),
               std::min(Deformation::kMaxBeta, d.beta() * 5.0)};

  s.report = fi_momentum(state, d, cfg, qspec, dspec);
  const double m = static_cast<double>(count);
  s.predicted_var_f = 1.0 / (m * s.report.F);
  s.predicted_var_f_amended = 1.0 / (m * s.report.F_amended);
  s.predicted_var_f_classical_full = 1.0 / (m * s.report.F_classical_full);

  const CdfTable table = tabulate_outcome_cdf(state, d, cfg, qspec);
  s.beta_hats.assign(static_cast<std::size_t>(replicas), 0.0);
  std::vector<int> edge(static_cast<std::size_t>(replicas), 0);

  parallel_for(static_cast<std::size_t>(replicas), [&](std::size_t r) {
    SampleSet set;
    set.beta_true = d.beta();
    set.state_descriptor = s.state_descriptor;
    set.seed = seed;
    set.samples.reserve(count);
    SplitMix64 rng = SplitMix64::stream(seed, r);
    for (std::size_t i = 0; i < count; ++i) set.samples.push_back(table.invert(rng.uniform01()));
    bool at_edge = false;
    const MleResult mle = mle_core(set, s.bracket, cfg, &at_edge);
    s.beta_hats[r] = mle.beta_hat;
    edge[r] = at_edge ? 1 : 0;
  });

  s.bracket_edge_hits = 0;
  for (const int e : edge) s.bracket_edge_hits += e;
  double mean = 0.0;
  for (const double h : s.beta_hats) mean += h;
  mean /= static_cast<double>(replicas);
  double var = 0.0;
  for (const double h : s.beta_hats) var += (h - mean) * (h - mean);
  var /= static_cast<double>(replicas - 1);
  s.mean = mean;
  s.variance = var;
  return s;
}

}  // namespace gupest
