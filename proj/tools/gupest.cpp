#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

#include <CLI11.hpp>

#include "gupest/cli.hpp"
#include "gupest/errors.hpp"
#include "gupest/version.hpp"

namespace {

using gupest::cli::RunConfig;

struct RangeFlags {
  std::string text;
  bool log_flag = false;
  bool linear_flag = false;
};

struct SubArgs {
  RunConfig::Command command;
  std::string config_path;
  std::string beta_text;
  RangeFlags beta, phi, theta, temperature, omegam;
  std::string format;
};

void add_common(CLI::App* sub, RunConfig& cfg, SubArgs& args) {
  sub->add_option("--config", args.config_path,
                  "INI-style key=value config file (flags win)");
  sub->add_option("--state", cfg.state,
                  "state descriptor: n:<k> | qubit:phi=<rad> | "
                  "qutrit:phi=<rad>,theta=<rad> | mix:theta=<rad> | thermal:T=<temp>");
  sub->add_option("--mass", cfg.m, "oscillator mass m (hbar = 1 units)");
  sub->add_option("--omega", cfg.omega, "oscillator angular frequency");
  sub->add_option("--output,-o", cfg.output, "output path (default: stdout)");
  sub->add_option("--format", args.format, "output format: csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--seed", cfg.seed, "RNG seed");
  sub->add_option("--rel-tol", cfg.quad.rel_tol, "quadrature relative tolerance");
  sub->add_option("--abs-tol", cfg.quad.abs_tol, "quadrature absolute tolerance");
  sub->add_option("--max-refinements", cfg.quad.max_refinements,
                  "max quadrature bisection depth");
  sub->add_option("--fd-step", cfg.deriv.rel_step, "relative beta step for d/dbeta");
  sub->add_option("--richardson", cfg.deriv.richardson_levels,
                  "Richardson extrapolation levels (1-3)");
  sub->add_option("--tail-tol", cfg.thermal_tail_tol,
                  "thermal-state Boltzmann truncation tolerance");
  sub->add_option("--threads", cfg.threads,
                  "worker threads (0 = GUPEST_THREADS or hardware)");
}

void add_range(CLI::App* sub, RangeFlags& r, const std::string& name,
               const std::string& help) {
  sub->add_option("--" + name, r.text, help + " as lo:hi:count");
  sub->add_flag("--log", r.log_flag, "log-spaced sweep grid");
  sub->add_flag("--linear", r.linear_flag, "linearly spaced sweep grid");
}

// Flat INI application with flags-win semantics: a key only lands when the
// matching option was absent from the command line.
void apply_config_file(CLI::App* sub, SubArgs& args, RunConfig& cfg) {
  std::ifstream file(args.config_path);
  if (!file)
    throw gupest::cli::config_error("cannot open config file '" + args.config_path + "'");

  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  auto flag_seen = [&](const std::string& name) {
    const CLI::Option* o = sub->get_option_no_throw("--" + name);
    return o != nullptr && o->count() > 0;
  };
  auto parse_bool = [](const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw gupest::cli::config_error("config: cannot parse boolean '" + key + "=" + v + "'");
  };

  RangeFlags* range = nullptr;
  switch (args.command) {
    case RunConfig::Command::sweep_beta: range = &args.beta; break;
    case RunConfig::Command::sweep_angle: range = &args.phi; break;
    case RunConfig::Command::sweep_temperature: range = &args.temperature; break;
    case RunConfig::Command::sweep_omegam: range = &args.omegam; break;
    default: break;
  }

  std::string line;
  int lineno = 0;
  while (std::getline(file, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';' || line[0] == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw gupest::cli::config_error("config: expected key=value at line " +
                                      std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (flag_seen(key)) continue;

    try {
      if (key == "state") cfg.state = value;
      else if (key == "mass") cfg.m = std::stod(value);
      else if (key == "omega") cfg.omega = std::stod(value);
      else if (key == "output") cfg.output = value;
      else if (key == "seed") cfg.seed = std::stoull(value);
      else if (key == "rel-tol") cfg.quad.rel_tol = std::stod(value);
      else if (key == "abs-tol") cfg.quad.abs_tol = std::stod(value);
      else if (key == "max-refinements") cfg.quad.max_refinements = std::stoi(value);
      else if (key == "fd-step") cfg.deriv.rel_step = std::stod(value);
      else if (key == "richardson") cfg.deriv.richardson_levels = std::stoi(value);
      else if (key == "tail-tol") cfg.thermal_tail_tol = std::stod(value);
      else if (key == "threads") cfg.threads = std::stoi(value);
      else if (key == "replicas") cfg.replicas = std::stoi(value);
      else if (key == "count") cfg.count = std::stoull(value);
      else if (key == "format") {
        if (value != "csv" && value != "json")
          throw gupest::cli::config_error("config: format must be csv or json");
        args.format = value;
      } else if (key == "beta") {
        if (args.command == RunConfig::Command::sweep_beta) args.beta.text = value;
        else args.beta_text = value;
      } else if (key == "phi") args.phi.text = value;
      else if (key == "theta") args.theta.text = value;
      else if (key == "T") args.temperature.text = value;
      else if (key == "omegam") args.omegam.text = value;
      else if (key == "log" && range) range->log_flag = parse_bool(key, value);
      else if (key == "linear" && range) range->linear_flag = parse_bool(key, value);
      else
        throw gupest::cli::config_error("config: unknown key '" + key + "' at line " +
                                        std::to_string(lineno));
    } catch (const gupest::cli::config_error&) {
      throw;
    } catch (const std::exception&) {
      throw gupest::cli::config_error("config: cannot parse '" + key + "=" + value + "'");
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gupest: precision bounds and simulated experiments for the "
               "minimal-length deformation of a harmonic oscillator"};
  app.set_version_flag("--version", gupest::kVersion);
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<SubArgs> all_args;
  all_args.reserve(7);

  auto make_sub = [&](const std::string& name, const std::string& desc,
                      RunConfig::Command cmd) {
    CLI::App* sub = app.add_subcommand(name, desc);
    all_args.push_back({});
    all_args.back().command = cmd;
    add_common(sub, cfg, all_args.back());
    return sub;
  };

  CLI::App* rep = make_sub("report", "single-point estimation report",
                           RunConfig::Command::report);
  rep->add_option("--beta", all_args[0].beta_text, "deformation parameter");

  CLI::App* sb = make_sub("sweep-beta", "H, F, I_mu, F_amended, F_classical_full, R, Q "
                          "over a beta grid", RunConfig::Command::sweep_beta);
  add_range(sb, all_args[1].beta, "beta", "beta grid (log-spaced by default)");

  CLI::App* sa = make_sub("sweep-angle", "qubit superposition cos(phi)|0> + sin(phi)|1> "
                          "over a phi grid", RunConfig::Command::sweep_angle);
  sa->add_option("--beta", all_args[2].beta_text, "deformation parameter");
  add_range(sa, all_args[2].phi, "phi", "phi grid");

  CLI::App* sq = make_sub("sweep-qutrit", "three-level superposition over a "
                          "(theta, phi) grid", RunConfig::Command::sweep_qutrit);
  sq->add_option("--beta", all_args[3].beta_text, "deformation parameter");
  sq->add_option("--theta", all_args[3].theta.text, "theta grid as lo:hi:count");
  sq->add_option("--phi", all_args[3].phi.text, "phi grid as lo:hi:count");

  CLI::App* st = make_sub("sweep-temperature", "thermal state over a temperature grid",
                          RunConfig::Command::sweep_temperature);
  st->add_option("--beta", all_args[4].beta_text, "deformation parameter");
  add_range(st, all_args[4].temperature, "T", "temperature grid");

  CLI::App* so = make_sub("sweep-omegam", "pure state over an m*omega grid at fixed "
                          "beta (axis emitted as omegam/beta)",
                          RunConfig::Command::sweep_omegam);
  so->add_option("--beta", all_args[5].beta_text, "deformation parameter");
  add_range(so, all_args[5].omegam, "omegam", "m*omega grid (log-spaced by default)");

  CLI::App* mc = make_sub("mc", "Monte Carlo Cramer-Rao experiment",
                          RunConfig::Command::mc);
  mc->add_option("--beta", all_args[6].beta_text, "true deformation parameter");
  mc->add_option("--replicas", cfg.replicas, "independent experiment replicas");
  mc->add_option("--count", cfg.count, "momentum samples per replica");

  CLI::App* subs[7] = {rep, sb, sa, sq, st, so, mc};

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "gupest: " << e.what() << "\n";
    return 2;
  }

  try {
    SubArgs* args = nullptr;
    for (int i = 0; i < 7; ++i)
      if (subs[i]->parsed()) args = &all_args[static_cast<std::size_t>(i)];
    if (!args) throw gupest::cli::config_error("no subcommand given");
    cfg.command = args->command;
    for (int i = 0; i < 7; ++i)
      if (subs[i]->parsed() && !args->config_path.empty())
        apply_config_file(subs[i], *args, cfg);

    using gupest::cli::parse_range;
    constexpr double kPi = std::numbers::pi;
    auto spacing = [&](const RangeFlags& r, bool default_log) {
      if (r.log_flag && r.linear_flag)
        throw gupest::cli::config_error("--log and --linear are mutually exclusive");
      return r.log_flag ? true : (r.linear_flag ? false : default_log);
    };
    auto fixed_beta = [&](const std::string& text) {
      if (text.empty()) return;
      try {
        cfg.beta = std::stod(text);
      } catch (const std::exception&) {
        throw gupest::cli::config_error("cannot parse --beta '" + text + "'");
      }
    };

    switch (cfg.command) {
      case RunConfig::Command::report:
      case RunConfig::Command::mc:
        fixed_beta(args->beta_text);
        break;
      case RunConfig::Command::sweep_beta:
        cfg.beta_range = args->beta.text.empty()
                             ? gupest::cli::Range{1e-4, 1e-2, 20, true}
                             : parse_range(args->beta.text, true, "beta");
        cfg.beta_range.log_spacing = spacing(args->beta, true);
        break;
      case RunConfig::Command::sweep_angle:
        fixed_beta(args->beta_text);
        cfg.phi_range = args->phi.text.empty()
                            ? gupest::cli::Range{0.0, kPi, 41, false}
                            : parse_range(args->phi.text, false, "phi");
        cfg.phi_range.log_spacing = spacing(args->phi, false);
        break;
      case RunConfig::Command::sweep_qutrit:
        fixed_beta(args->beta_text);
        cfg.theta_range = args->theta.text.empty()
                              ? gupest::cli::Range{0.0, kPi / 2.0, 21, false}
                              : parse_range(args->theta.text, false, "theta");
        cfg.phi_range = args->phi.text.empty()
                            ? gupest::cli::Range{0.0, kPi, 41, false}
                            : parse_range(args->phi.text, false, "phi");
        break;
      case RunConfig::Command::sweep_temperature:
        fixed_beta(args->beta_text);
        cfg.temperature_range = args->temperature.text.empty()
                                    ? gupest::cli::Range{0.05, 1.0, 20, false}
                                    : parse_range(args->temperature.text, false, "T");
        cfg.temperature_range.log_spacing = spacing(args->temperature, false);
        break;
      case RunConfig::Command::sweep_omegam:
        fixed_beta(args->beta_text);
        cfg.omegam_range = args->omegam.text.empty()
                               ? gupest::cli::Range{1.0, 1e3, 30, true}
                               : parse_range(args->omegam.text, true, "omegam");
        cfg.omegam_range.log_spacing = spacing(args->omegam, true);
        break;
    }
    if (!args->format.empty()) {
      cfg.format = (args->format == "json") ? RunConfig::Format::json
                                            : RunConfig::Format::csv;
      cfg.format_set = true;
    }
    gupest::cli::run(cfg);
    return 0;
  } catch (const gupest::cli::config_error& e) {
    std::cerr << "gupest: " << e.what() << "\n";
    return 2;
  } catch (const gupest::accuracy_error& e) {
    std::cerr << "gupest: accuracy failure: " << e.what()
              << " (best estimate " << e.best_estimate() << ", bound "
              << e.error_bound() << ")\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "gupest: " << e.what() << "\n";
    return 1;
  }
}
