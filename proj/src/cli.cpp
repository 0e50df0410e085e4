#include "gupest/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "gupest/errors.hpp"
#include "gupest/estimation.hpp"
#include "gupest/montecarlo.hpp"
#include "gupest/parallel.hpp"
#include "gupest/version.hpp"

namespace gupest::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

const char* command_name(RunConfig::Command c) {
  switch (c) {
    case RunConfig::Command::report: return "report";
    case RunConfig::Command::sweep_beta: return "sweep-beta";
    case RunConfig::Command::sweep_angle: return "sweep-angle";
    case RunConfig::Command::sweep_qutrit: return "sweep-qutrit";
    case RunConfig::Command::sweep_temperature: return "sweep-temperature";
    case RunConfig::Command::sweep_omegam: return "sweep-omegam";
    case RunConfig::Command::mc: return "mc";
  }
  return "?";
}

constexpr const char* kReportColumns[7] = {"H",         "F", "I_mu", "F_amended",
                                           "F_classical_full", "R", "Q"};

void append_report(std::vector<double>& row, const EstimationReport& r) {
  row.insert(row.end(),
             {r.H, r.F, r.I_mu, r.F_amended, r.F_classical_full, r.R, r.Q});
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) os << ',';
    os << t.columns[i];
  }
  os << "\r\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << fmt(row[i]);
    }
    os << "\r\n";
  }
}

ordered_json meta_block(const RunConfig& c) {
  ordered_json meta;
  meta["toolkit"] = "gupest";
  meta["version"] = kVersion;
  meta["command"] = command_name(c.command);
  ordered_json echo;
  echo["state"] = c.state;
  echo["m"] = c.m;
  echo["omega"] = c.omega;
  echo["seed"] = c.seed;
  echo["rel_tol"] = c.quad.rel_tol;
  echo["abs_tol"] = c.quad.abs_tol;
  echo["fd_rel_step"] = c.deriv.rel_step;
  echo["richardson_levels"] = c.deriv.richardson_levels;
  echo["tail_tol"] = c.thermal_tail_tol;
  meta["config"] = std::move(echo);
  return meta;
}

ordered_json rows_json(const Table& t) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : t.rows) {
    ordered_json r;
    for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = row[i];
    rows.push_back(std::move(r));
  }
  return rows;
}

void emit(const RunConfig& c, const ordered_json& doc, const Table* table) {
  std::ostringstream out;
  if (c.format == RunConfig::Format::json) {
    out << doc.dump(2) << "\n";
  } else {
    if (!table) throw config_error("this command only supports --format json");
    write_csv(out, *table);
  }
  if (c.output.empty() || c.output == "-") {
    std::cout << out.str();
  } else {
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw config_error("cannot open output file '" + c.output + "'");
    f << out.str();
  }
}

Deformation make_deformation(double beta) {
  if (!(beta >= Deformation::kMinWavefunctionBeta) || !(beta <= Deformation::kMaxBeta))
    throw config_error("beta must lie in the supported window [1e-6, 1]");
  return Deformation(beta);
}

StateVariant realize(const RunConfig& c, double beta, const OscillatorConfig& cfg) {
  try {
    return make_state(c.state, make_deformation(beta), cfg, c.thermal_tail_tol);
  } catch (const config_error&) {
    throw;
  } catch (const std::domain_error& e) {
    throw config_error(e.what());
  }
}

// Computes per-grid-point reports on the worker pool; rows stay in grid order.
Table sweep_table(const RunConfig& c, const std::string& var_name,
                  const std::vector<double>& grid,
                  const std::function<EstimationReport(double)>& point) {
  Table t;
  t.columns.push_back(var_name);
  t.columns.insert(t.columns.end(), std::begin(kReportColumns), std::end(kReportColumns));
  t.rows.resize(grid.size());
  parallel_for(
      grid.size(),
      [&](std::size_t i) {
        const EstimationReport r = point(grid[i]);
        t.rows[i].push_back(grid[i]);
        append_report(t.rows[i], r);
      },
      c.threads);
  return t;
}

void run_report(const RunConfig& c) {
  const OscillatorConfig cfg(c.m, c.omega);
  const Deformation d = make_deformation(c.beta);
  const EstimationReport r = fi_momentum(realize(c, c.beta, cfg), d, cfg, c.quad, c.deriv);

  Table t;
  t.columns.assign({"beta"});
  t.columns.insert(t.columns.end(), std::begin(kReportColumns), std::end(kReportColumns));
  t.rows.push_back({r.beta});
  append_report(t.rows.back(), r);

  ordered_json doc;
  doc["meta"] = meta_block(c);
  doc["meta"]["config"]["beta"] = c.beta;
  doc["rows"] = rows_json(t);
  emit(c, doc, &t);
}

void run_sweep(const RunConfig& c) {
  const OscillatorConfig cfg(c.m, c.omega);
  Table t;
  switch (c.command) {
    case RunConfig::Command::sweep_beta: {
      c.beta_range.validate("beta");
      t = sweep_table(c, "beta", c.beta_range.grid(), [&](double beta) {
        return fi_momentum(realize(c, beta, cfg), make_deformation(beta), cfg, c.quad,
                           c.deriv);
      });
      break;
    }
    case RunConfig::Command::sweep_angle: {
      c.phi_range.validate("phi");
      const Deformation d = make_deformation(c.beta);
      t = sweep_table(c, "phi", c.phi_range.grid(), [&](double phi) {
        return fi_momentum(qubit_superposition(phi), d, cfg, c.quad, c.deriv);
      });
      break;
    }
    case RunConfig::Command::sweep_temperature: {
      c.temperature_range.validate("T");
      const Deformation d = make_deformation(c.beta);
      t = sweep_table(c, "T", c.temperature_range.grid(), [&](double T) {
        MixedState st;
        try {
          st = thermal_state({T, c.thermal_tail_tol}, d, cfg);
        } catch (const std::domain_error& e) {
          throw config_error(e.what());
        }
        return fi_momentum(st, d, cfg, c.quad, c.deriv);
      });
      break;
    }
    case RunConfig::Command::sweep_omegam: {
      c.omegam_range.validate("omegam");
      const Deformation d = make_deformation(c.beta);
      // swept value is the product m*omega (omega from --omega, m = value/omega);
      // the emitted axis is omegam/beta, matching the figure convention.
      t = sweep_table(c, "omegam_over_beta", c.omegam_range.grid(), [&](double g) {
        const OscillatorConfig swept(g / c.omega, c.omega);
        return fi_momentum(realize(c, c.beta, swept), d, swept, c.quad, c.deriv);
      });
      for (auto& row : t.rows) row[0] /= c.beta;
      break;
    }
    default:
      throw config_error("not a sweep command");
  }

  ordered_json doc;
  doc["meta"] = meta_block(c);
  doc["meta"]["config"]["beta"] = c.beta;
  doc["rows"] = rows_json(t);
  emit(c, doc, &t);
}

void run_sweep_qutrit(const RunConfig& c) {
  c.theta_range.validate("theta");
  c.phi_range.validate("phi");
  const OscillatorConfig cfg(c.m, c.omega);
  const Deformation d = make_deformation(c.beta);
  const std::vector<double> thetas = c.theta_range.grid();
  const std::vector<double> phis = c.phi_range.grid();

  Table t;
  t.columns.assign({"theta", "phi"});
  t.columns.insert(t.columns.end(), std::begin(kReportColumns), std::end(kReportColumns));
  t.rows.resize(thetas.size() * phis.size());
  parallel_for(
      t.rows.size(),
      [&](std::size_t idx) {
        const double theta = thetas[idx / phis.size()];
        const double phi = phis[idx % phis.size()];
        const EstimationReport r =
            fi_momentum(qutrit_superposition(phi, theta), d, cfg, c.quad, c.deriv);
        t.rows[idx] = {theta, phi};
        append_report(t.rows[idx], r);
      },
      c.threads);

  ordered_json doc;
  doc["meta"] = meta_block(c);
  doc["meta"]["config"]["beta"] = c.beta;
  doc["rows"] = rows_json(t);
  emit(c, doc, &t);
}

void run_mc(const RunConfig& c) {
  const OscillatorConfig cfg(c.m, c.omega);
  const Deformation d = make_deformation(c.beta);
  if (c.replicas < 10) throw config_error("mc: requires --replicas >= 10");
  if (c.count < 1) throw config_error("mc: requires --count >= 1");
  const CrExperimentSummary s = cr_experiment(realize(c, c.beta, cfg), d, cfg, c.replicas,
                                              c.count, c.seed, c.quad, c.deriv);

  Table t;
  t.columns.assign({"replica", "beta_hat"});
  for (std::size_t r = 0; r < s.beta_hats.size(); ++r)
    t.rows.push_back({static_cast<double>(r), s.beta_hats[r]});

  ordered_json doc;
  doc["meta"] = meta_block(c);
  doc["meta"]["config"]["beta"] = c.beta;
  doc["meta"]["config"]["replicas"] = c.replicas;
  doc["meta"]["config"]["count"] = c.count;
  ordered_json sum;
  sum["state"] = s.state_descriptor;
  sum["beta_true"] = s.beta_true;
  sum["bracket"] = {s.bracket.first, s.bracket.second};
  sum["mean_beta_hat"] = s.mean;
  sum["empirical_variance"] = s.variance;
  sum["predicted_variance_from_F"] = s.predicted_var_f;
  sum["predicted_variance_from_F_amended"] = s.predicted_var_f_amended;
  sum["predicted_variance_from_F_classical_full"] = s.predicted_var_f_classical_full;
  sum["bracket_edge_hits"] = s.bracket_edge_hits;
  ordered_json fisher;
  fisher["H"] = s.report.H;
  fisher["F"] = s.report.F;
  fisher["I_mu"] = s.report.I_mu;
  fisher["F_amended"] = s.report.F_amended;
  fisher["F_classical_full"] = s.report.F_classical_full;
  sum["fisher"] = std::move(fisher);
  sum["beta_hats"] = s.beta_hats;
  doc["summary"] = std::move(sum);
  doc["rows"] = rows_json(t);
  emit(c, doc, &t);
}

}  // namespace

std::vector<double> Range::grid() const {
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(count));
  if (log_spacing) {
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < count; ++i)
      g.push_back(std::exp(llo + (lhi - llo) * i / (count - 1)));
  } else {
    for (int i = 0; i < count; ++i) g.push_back(lo + (hi - lo) * i / (count - 1));
  }
  return g;
}

void Range::validate(const std::string& name) const {
  if (count < 2) throw config_error(name + " range: grid size must be >= 2");
  if (!(lo < hi)) throw config_error(name + " range: requires lo < hi");
  if (log_spacing && !(lo > 0.0))
    throw config_error(name + " range: log spacing requires lo > 0");
}

Range parse_range(const std::string& text, bool log_spacing, const std::string& name) {
  Range r;
  r.log_spacing = log_spacing;
  std::stringstream ss(text);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() != 3)
    throw config_error(name + " range: expected lo:hi:count, got '" + text + "'");
  try {
    r.lo = std::stod(parts[0]);
    r.hi = std::stod(parts[1]);
    r.count = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw config_error(name + " range: cannot parse '" + text + "'");
  }
  return r;
}

void run(const RunConfig& config_in) {
  RunConfig config = config_in;
  if (!config.format_set) {
    const bool record_like = config.command == RunConfig::Command::report ||
                             config.command == RunConfig::Command::mc;
    config.format = record_like ? RunConfig::Format::json : RunConfig::Format::csv;
  }
  try {
    config.quad.validate();
    config.deriv.validate();
  } catch (const std::domain_error& e) {
    throw config_error(e.what());
  }
  switch (config.command) {
    case RunConfig::Command::report: run_report(config); break;
    case RunConfig::Command::sweep_qutrit: run_sweep_qutrit(config); break;
    case RunConfig::Command::mc: run_mc(config); break;
    default: run_sweep(config); break;
  }
}

}  // namespace gupest::cli
