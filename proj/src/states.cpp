#include "gupest/states.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gupest {

using specfun::kMaxPolyOrder;

namespace {

void require_order(int n) {
  if (n < 0 || n > kMaxPolyOrder)
    throw std::domain_error("state order outside supported range [0, " +
                            std::to_string(kMaxPolyOrder) + "]");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

int PureState::max_n() const {
  int m = 0;
  for (const auto& [n, c] : coeffs) m = std::max(m, n);
  return m;
}

void PureState::validate() const {
  if (coeffs.empty()) throw std::domain_error("PureState: no coefficients");
  double norm2 = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    require_order(coeffs[i].first);
    for (std::size_t j = i + 1; j < coeffs.size(); ++j)
      if (coeffs[i].first == coeffs[j].first)
        throw std::domain_error("PureState: duplicate eigenstate index");
    norm2 += std::norm(coeffs[i].second);
  }
  if (std::abs(norm2 - 1.0) > 1e-12)
    throw std::domain_error("PureState: coefficients are not normalized");
}

int MixedState::max_n() const {
  int m = 0;
  for (const auto& [n, w] : weights) m = std::max(m, n);
  return m;
}

void MixedState::validate() const {
  if (weights.empty()) throw std::domain_error("MixedState: no weights");
  double sum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    require_order(weights[i].first);
    if (weights[i].second < 0.0)
      throw std::domain_error("MixedState: negative weight");
    for (std::size_t j = i + 1; j < weights.size(); ++j)
      if (weights[i].first == weights[j].first)
        throw std::domain_error("MixedState: duplicate eigenstate index");
    sum += weights[i].second;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::domain_error("MixedState: weights do not sum to 1");
}

void ThermalSpec::validate() const {
  if (!(T > 0.0)) throw std::domain_error("ThermalSpec: requires T > 0");
  if (!(tail_tol > 0.0)) throw std::domain_error("ThermalSpec: requires tail_tol > 0");
}

PureState eigenstate(int n) {
  require_order(n);
  PureState s{{{n, {1.0, 0.0}}}};
  s.validate();
  return s;
}

PureState qubit_superposition(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  PureState st;
  st.coeffs = {{0, {c, 0.0}}, {1, {s, 0.0}}};
  // renormalize away the last-ulp drift so the construction invariant is exact
  const double norm = std::sqrt(c * c + s * s);
  for (auto& [n, a] : st.coeffs) a /= norm;
  st.validate();
  return st;
}

PureState qutrit_superposition(double phi, double theta) {
  const double c0 = std::cos(phi);
  const double c1 = std::sin(phi) * std::sin(theta);
  const double c2 = std::sin(phi) * std::cos(theta);
  PureState st;
  st.coeffs = {{0, {c0, 0.0}}, {1, {c1, 0.0}}, {2, {c2, 0.0}}};
  const double norm = std::sqrt(c0 * c0 + c1 * c1 + c2 * c2);
  for (auto& [n, a] : st.coeffs) a /= norm;
  st.validate();
  return st;
}

MixedState mixture_ground_first(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  MixedState m;
  const double sum = c * c + s * s;
  m.weights = {{0, c * c / sum}, {1, s * s / sum}};
  m.beta_dependent_weights = false;
  m.validate();
  return m;
}

MixedState thermal_state(const ThermalSpec& spec, const Deformation& d,
                         const OscillatorConfig& cfg) {
  spec.validate();
  const double e0 = energy(0, d, cfg);
  MixedState m;
  double z = 0.0;
  for (int n = 0;; ++n) {
    const double ratio = std::exp(-(energy(n, d, cfg) - e0) / spec.T);
    if (ratio < spec.tail_tol) break;
    if (n > kMaxPolyOrder)
      throw std::domain_error(
          "thermal_state: truncation exceeds the supported eigenstate range; "
          "lower T or raise tail_tol");
    m.weights.emplace_back(n, ratio);
    z += ratio;
  }
  for (auto& [n, w] : m.weights) w /= z;
  m.beta_dependent_weights = true;
  m.temperature = spec.T;
  m.validate();
  return m;
}

StateVariant make_state(const std::string& descriptor, const Deformation& d,
                        const OscillatorConfig& cfg, double thermal_tail_tol) {
  const auto colon = descriptor.find(':');
  if (colon == std::string::npos)
    throw std::domain_error("state descriptor: expected '<kind>:<args>', got '" +
                            descriptor + "'");
  const std::string kind = descriptor.substr(0, colon);
  const std::string args = descriptor.substr(colon + 1);

  auto parse_kv = [&](const std::string& text) {
    std::vector<std::pair<std::string, double>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos)
        throw std::domain_error("state descriptor: expected key=value in '" + item + "'");
      out.emplace_back(item.substr(0, eq), std::stod(item.substr(eq + 1)));
    }
    return out;
  };
  auto get = [&](const std::vector<std::pair<std::string, double>>& kv,
                 const std::string& key) {
    for (const auto& [k, v] : kv)
      if (k == key) return v;
    throw std::domain_error("state descriptor: missing '" + key + "'");
  };

  if (kind == "n") return eigenstate(std::stoi(args));
  if (kind == "qubit") return qubit_superposition(get(parse_kv(args), "phi"));
  if (kind == "qutrit") {
    const auto kv = parse_kv(args);
    return qutrit_superposition(get(kv, "phi"), get(kv, "theta"));
  }
  if (kind == "mix") return mixture_ground_first(get(parse_kv(args), "theta"));
  if (kind == "thermal")
    return thermal_state({get(parse_kv(args), "T"), thermal_tail_tol}, d, cfg);
  throw std::domain_error("state descriptor: unknown kind '" + kind + "'");
}

std::string state_descriptor(const StateVariant& state) {
  if (const auto* p = std::get_if<PureState>(&state)) {
    if (p->coeffs.size() == 1) return "n:" + std::to_string(p->coeffs[0].first);
    std::string out = "pure:";
    for (std::size_t i = 0; i < p->coeffs.size(); ++i) {
      if (i) out += ',';
      out += "c" + std::to_string(p->coeffs[i].first) + "=" +
             fmt(p->coeffs[i].second.real());
    }
    return out;
  }
  const auto& m = std::get<MixedState>(state);
  if (m.temperature) return "thermal:T=" + fmt(*m.temperature);
  std::string out = "mix-weights:";
  for (std::size_t i = 0; i < m.weights.size(); ++i) {
    if (i) out += ',';
    out += "p" + std::to_string(m.weights[i].first) + "=" + fmt(m.weights[i].second);
  }
  return out;
}

}  // namespace gupest
