#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gupest/hilbert.hpp"

namespace gupest::cli {

/// Bad flags / config-file contents. The CLI front end maps this to exit 2
/// (numerical accuracy_error maps to exit 3).
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "lo:hi:count" sweep range.
struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
  bool log_spacing = false;

  std::vector<double> grid() const;
  void validate(const std::string& name) const;
};

Range parse_range(const std::string& text, bool log_spacing, const std::string& name);

struct RunConfig {
  enum class Command {
    report,
    sweep_beta,
    sweep_angle,
    sweep_qutrit,
    sweep_temperature,
    sweep_omegam,
    mc
  };
  enum class Format { csv, json };

  Command command = Command::report;
  std::string state = "n:0";
  double beta = 0.01;         // fixed beta (report, mc, fixed-beta sweeps)
  Range beta_range;           // sweep-beta
  Range phi_range;            // sweep-angle / sweep-qutrit phi
  Range theta_range;          // sweep-qutrit theta
  Range temperature_range;    // sweep-temperature
  Range omegam_range;         // sweep-omegam (values of m*omega; omega fixed)
  double m = 1.0;
  double omega = 1.0;
  std::string output;         // empty => stdout
  Format format = Format::csv;
  bool format_set = false;    // whether --format was given (else per-command default)
  std::uint64_t seed = 1;
  int replicas = 100;
  std::uint64_t count = 10000;
  double thermal_tail_tol = 1e-12;
  QuadratureSpec quad;
  DerivativeSpec deriv;
  int threads = 0;            // 0 => GUPEST_THREADS / hardware
};

/// Executes the command and writes the table/record to config.output (stdout
/// when empty). Throws config_error for invalid configurations; numerical
/// failures propagate as accuracy_error. Output is deterministic for fixed
/// config and seed.
void run(const RunConfig& config);

}  // namespace gupest::cli
