// Acceptance suite: one criterion per function, each printing a single
// PASS/FAIL line (with the measured numbers) and contributing to the exit
// code. Run with no arguments for all criteria or with a list of criterion
// numbers. Thresholds are pinned here, not in any config.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gupest/estimation.hpp"
#include "gupest/montecarlo.hpp"
#include "gupest/parallel.hpp"

using namespace gupest;

namespace {

const OscillatorConfig kUnit{1.0, 1.0};

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// 1. numerical H for psi_0..2 matches the small-beta polynomials to 1e-3
Outcome criterion_taylor_h() {
  Outcome o;
  double worst = 0.0;
  for (int n = 0; n <= 2; ++n) {
    for (const double beta : {1e-4, 1e-3, 5e-3, 1e-2}) {
      const double h = qfi_pure(eigenstate(n), Deformation(beta), kUnit);
      const double poly = taylor_reference(n).h_at(beta);
      worst = std::max(worst, std::abs(h - poly) / poly);
    }
  }
  o.require(worst <= 1e-3, "max |H-poly|/poly = " + num(worst) + " > 1e-3");
  if (o.pass) o.note("max |H-poly|/poly = " + num(worst));
  return o;
}

// 2. I_mu matches its expansions to 1e-3 and I_mu/H in [0.66, 0.675] at
//    beta = 1e-4 for n <= 2
Outcome criterion_imu() {
  Outcome o;
  double worst = 0.0;
  for (int n = 0; n <= 2; ++n) {
    for (const double beta : {1e-4, 1e-3, 5e-3, 1e-2}) {
      const EstimationReport r = fi_momentum(eigenstate(n), Deformation(beta), kUnit);
      const double poly = taylor_reference(n).imu_at(beta);
      worst = std::max(worst, std::abs(r.I_mu - poly) / poly);
    }
  }
  o.require(worst <= 1e-3, "max |I_mu-poly|/poly = " + num(worst) + " > 1e-3");
  for (int n = 0; n <= 2; ++n) {
    const EstimationReport r = fi_momentum(eigenstate(n), Deformation(1e-4), kUnit);
    const double ratio = r.I_mu / r.H;
    o.require(ratio >= 0.66 && ratio <= 0.675,
              "I_mu/H(n=" + std::to_string(n) + ") = " + num(ratio) +
                  " outside [0.66, 0.675]");
  }
  return o;
}

// 3. real pure eigenstates: |F-H|/H <= 1e-4 and F_amended/H >= 1.6 at beta <= 1e-2
Outcome criterion_cr_violation() {
  Outcome o;
  for (int n = 0; n <= 2; ++n) {
    for (const double beta : {1e-3, 1e-2}) {
      const EstimationReport r = fi_momentum(eigenstate(n), Deformation(beta), kUnit);
      const double rel = std::abs(r.F - r.H) / r.H;
      o.require(rel <= 1e-4, "|F-H|/H(n=" + std::to_string(n) + ", beta=" + num(beta) +
                                 ") = " + num(rel));
      const double ratio = r.F_amended / r.H;
      o.require(ratio >= 1.6, "F_amended/H(n=" + std::to_string(n) +
                                  ", beta=" + num(beta) + ") = " + num(ratio) + " < 1.6");
    }
  }
  return o;
}

// 4. hypergeometric and Gegenbauer forms agree pointwise to 1e-8
Outcome criterion_form_equivalence() {
  Outcome o;
  double worst = 0.0;
  for (const double beta : {1e-3, 1e-2, 1e-1}) {
    const Deformation d(beta);
    for (int n = 0; n <= 5; ++n) {
      for (double p = -20.0; p <= 20.0 + 1e-9; p += 0.25) {
        const std::complex<double> h = psi_hypergeometric(n, p, d, kUnit);
        const double g = psi_gegenbauer(n, p, d, kUnit);
        worst = std::max(worst, std::abs(h - std::complex<double>(g, 0.0)));
      }
    }
  }
  o.require(worst <= 1e-8, "max |psi_hyp - psi_geg| = " + num(worst) + " > 1e-8");
  if (o.pass) o.note("max pointwise deviation = " + num(worst));
  return o;
}

// 5. orthonormality to 1e-8 for n,m <= 6 at beta in {1e-3, 1e-2}
Outcome criterion_orthonormality() {
  Outcome o;
  double worst = 0.0;
  for (const double beta : {1e-3, 1e-2}) {
    const Deformation d(beta);
    const EigenbasisEvaluator ev(d, kUnit, 6);
    for (int n = 0; n <= 6; ++n) {
      for (int m = n; m <= 6; ++m) {
        if ((n + m) % 2 == 1) continue;  // parity-odd products integrate to zero
        const double v = integrate_weighted(
            [&](double p) { return ev.eval(n, p) * ev.eval(m, p); }, d, {});
        worst = std::max(worst, std::abs(v - (n == m ? 1.0 : 0.0)));
      }
    }
  }
  o.require(worst <= 1e-8, "max |<n|m> - delta| = " + num(worst) + " > 1e-8");
  if (o.pass) o.note("max |<n|m> - delta| = " + num(worst));
  return o;
}

// 6. spectrum limits: E_n(beta -> 1e-8) and dE_0/dbeta -> 1/4
Outcome criterion_spectrum() {
  Outcome o;
  const Deformation tiny(1e-8);
  for (int n = 0; n <= 5; ++n) {
    const double dev = std::abs(energy(n, tiny, kUnit) - (n + 0.5));
    o.require(dev <= 1e-6, "|E_" + std::to_string(n) + " - (n+1/2)| = " + num(dev));
  }
  const double slope = denergy_dbeta(0, tiny, kUnit);
  o.require(std::abs(slope - 0.25) <= 1e-6, "dE_0/dbeta = " + num(slope) + " != 1/4");
  return o;
}

// 7. qubit sin^2 law at beta = 1e-3; qutrit maximum at theta = 0,
//    phi = (0.43 +- 0.02) pi at beta = 0.01
Outcome criterion_superpositions() {
  Outcome o;
  {
    const Deformation d(1e-3);
    const double h0 = qfi_pure(eigenstate(0), d, kUnit);
    const double h1 = qfi_pure(eigenstate(1), d, kUnit);
    double worst = 0.0;
    for (int i = 0; i <= 16; ++i) {
      const double phi = M_PI * i / 16.0;
      const double h = qfi_pure(qubit_superposition(phi), d, kUnit);
      const double pred = h0 + (h1 - h0) * std::sin(phi) * std::sin(phi);
      worst = std::max(worst, std::abs(h - pred) / pred);
    }
    o.require(worst <= 1e-3, "qubit sin^2 law deviation " + num(worst) + " > 1e-3");
  }
  {
    const Deformation d(1e-2);
    const int n_theta = 21, n_phi = 41;
    std::vector<double> h(static_cast<std::size_t>(n_theta) * n_phi);
    parallel_for(h.size(), [&](std::size_t idx) {
      const double theta = (M_PI / 2.0) * static_cast<double>(idx / n_phi) / (n_theta - 1);
      const double phi = M_PI * static_cast<double>(idx % n_phi) / (n_phi - 1);
      h[idx] = qfi_pure(qutrit_superposition(phi, theta), d, kUnit);
    });
    std::size_t best = 0;
    for (std::size_t i = 1; i < h.size(); ++i)
      if (h[i] > h[best]) best = i;
    const double theta_star = (M_PI / 2.0) * static_cast<double>(best / n_phi) / (n_theta - 1);
    const double phi_star = M_PI * static_cast<double>(best % n_phi) / (n_phi - 1);
    o.require(theta_star == 0.0, "qutrit argmax theta = " + num(theta_star) + " != 0");
    o.require(std::abs(phi_star / M_PI - 0.43) <= 0.02,
              "qutrit argmax phi/pi = " + num(phi_star / M_PI) + " outside 0.43 +- 0.02");
    o.note("qutrit max at theta=" + num(theta_star) + ", phi/pi=" + num(phi_star / M_PI));
  }
  return o;
}

// 8. mixture endpoints F = H (1e-4), interior F < H; thermal H and F_amended
//    strictly increasing on T in [0.1, 1] with an F_amended/H crossover near E_0
Outcome criterion_mixed_thermal() {
  Outcome o;
  const Deformation d(1e-2);
  for (const double theta : {0.0, M_PI / 2}) {
    const EstimationReport r = fi_momentum(mixture_ground_first(theta), d, kUnit);
    const double rel = std::abs(r.F - r.H) / r.H;
    o.require(rel <= 1e-4, "endpoint theta=" + num(theta) + ": |F-H|/H = " + num(rel));
  }
  const EstimationReport mid = fi_momentum(mixture_ground_first(M_PI / 4), d, kUnit);
  o.require(mid.F < mid.H, "interior mixture: F = " + num(mid.F) +
                               " not below H = " + num(mid.H));

  const int n_t = 10;
  std::vector<EstimationReport> reports(n_t);
  parallel_for(n_t, [&](std::size_t i) {
    const double T = 0.1 + 0.9 * static_cast<double>(i) / (n_t - 1);
    reports[i] = fi_momentum(thermal_state({T, 1e-5}, d, kUnit), d, kUnit);
  });
  for (int i = 1; i < n_t; ++i) {
    const double T = 0.1 + 0.9 * i / (n_t - 1.0);
    o.require(reports[i].H > reports[i - 1].H,
              "thermal H not increasing at T = " + num(T));
    o.require(reports[i].F_amended > reports[i - 1].F_amended,
              "thermal F_amended not increasing at T = " + num(T) + " (" +
                  num(reports[i - 1].F_amended) + " -> " + num(reports[i].F_amended) + ")");
  }
  double t_star = 0.0;
  for (int i = 1; i < n_t; ++i) {
    const bool above = reports[i - 1].F_amended > reports[i - 1].H;
    const bool below = reports[i].F_amended < reports[i].H;
    if (above && below) t_star = 0.1 + 0.9 * (i - 0.5) / (n_t - 1.0);
  }
  const double e0 = energy(0, d, kUnit);
  o.require(t_star > 0.0, "no F_amended/H crossover found on [0.1, 1]");
  if (t_star > 0.0)
    o.require(t_star >= 0.25 * e0 && t_star <= 4.0 * e0,
              "crossover T* = " + num(t_star) + " not of order E_0 = " + num(e0));
  o.note("T* = " + num(t_star) + ", E_0 = " + num(e0));
  return o;
}

// 9. beta = 0.01, m omega = 1e3: Q within 1% of {1/8, 1/2, 11/8}; R/Q within 5% of 2
Outcome criterion_omegam_limits() {
  Outcome o;
  const Deformation d(1e-2);
  const OscillatorConfig cfg(1e3, 1.0);
  const double targets[3] = {1.0 / 8.0, 1.0 / 2.0, 11.0 / 8.0};
  for (int n = 0; n <= 2; ++n) {
    const EstimationReport r = fi_momentum(eigenstate(n), d, cfg);
    const double dev_q = std::abs(r.Q - targets[n]) / targets[n];
    o.require(dev_q <= 0.01, "Q(psi_" + std::to_string(n) + ") = " + num(r.Q) +
                                 " off " + num(targets[n]) + " by " + num(dev_q));
    const double ratio = r.R / r.Q;
    o.require(std::abs(ratio - 2.0) / 2.0 <= 0.05,
              "R/Q(psi_" + std::to_string(n) + ") = " + num(ratio));
  }
  return o;
}

// 10. Monte Carlo: psi_0 and psi_1 at beta = 0.01, 100 x 1e4 samples;
//     variance within [0.8, 1.25] of 1/(M Fcf); mean unbiased within 3 se
Outcome criterion_monte_carlo() {
  Outcome o;
  const Deformation d(1e-2);
  for (int n = 0; n <= 1; ++n) {
    const CrExperimentSummary s =
        cr_experiment(eigenstate(n), d, kUnit, 100, 10000, 20250 + n);
    const double ratio = s.variance / s.predicted_var_f_classical_full;
    o.require(ratio >= 0.8 && ratio <= 1.25,
              "psi_" + std::to_string(n) + ": var ratio = " + num(ratio) +
                  " outside [0.8, 1.25] (edge hits " +
                  std::to_string(s.bracket_edge_hits) + "/100)");
    const double se = std::sqrt(s.variance / s.replicas);
    o.require(std::abs(s.mean - 0.01) <= 3.0 * se,
              "psi_" + std::to_string(n) + ": bias " + num(s.mean - 0.01) + " > 3 se");
  }
  return o;
}

// 11. identical configs and seeds give bit-identical CSV/JSON across runs
Outcome criterion_determinism() {
  Outcome o;
#ifdef GUPEST_CLI_PATH
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "gupest_acceptance";
  fs::create_directories(dir);
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"sweep-beta --state n:1 --beta 1e-3:1e-2:6 --seed 5 --format csv", "a"},
      {"sweep-beta --state n:1 --beta 1e-3:1e-2:6 --seed 5 --format json", "b"},
      {"mc --state n:1 --beta 0.05 --replicas 10 --count 400 --seed 5 --format json",
       "c"}};
  for (const auto& [args, tag] : cases) {
    const fs::path f1 = dir / (tag + "_1.out");
    const fs::path f2 = dir / (tag + "_2.out");
    const std::string base = std::string(GUPEST_CLI_PATH) + " " + args + " -o ";
    const int c1 = std::system((base + f1.string()).c_str());
    const int c2 = std::system((base + f2.string()).c_str());
    o.require(c1 == 0 && c2 == 0, "CLI run failed for: " + args);
    if (c1 == 0 && c2 == 0) {
      const std::string b1 = slurp(f1), b2 = slurp(f2);
      o.require(!b1.empty() && b1 == b2, "outputs differ for: " + args);
    }
  }
#else
  o.require(false, "CLI path not configured");
#endif
  return o;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> fn;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "Taylor regression of H against the small-beta polynomials", criterion_taylor_h},
      {2, "I_mu regression and I_mu/H ratio window", criterion_imu},
      {3, "Cramer-Rao violation: F = H and F_amended/H >= 1.6", criterion_cr_violation},
      {4, "hypergeometric/Gegenbauer form equivalence", criterion_form_equivalence},
      {5, "orthonormality under the deformed product", criterion_orthonormality},
      {6, "spectrum limits at vanishing deformation", criterion_spectrum},
      {7, "qubit sin^2 law and qutrit landscape maximum", criterion_superpositions},
      {8, "mixture endpoints/interior and thermal trends", criterion_mixed_thermal},
      {9, "large m-omega limits of Q and R/Q", criterion_omegam_limits},
      {10, "Monte Carlo MLE variance against 1/(M F_classical_full)", criterion_monte_carlo},
      {11, "bit-identical outputs for identical config and seed", criterion_determinism},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), c.id) == selected.end())
      continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  criterion %2d: %s [%.1fs]%s%s\n", o.pass ? "PASS" : "FAIL", c.id,
                c.title, secs, o.detail.empty() ? "" : " -- ", o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
