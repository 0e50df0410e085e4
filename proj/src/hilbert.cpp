#include "gupest/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "gupest/errors.hpp"

namespace gupest {

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw std::domain_error("QuadratureSpec: tolerances must be positive");
  if (max_refinements < 1)
    throw std::domain_error("QuadratureSpec: max_refinements must be >= 1");
}

void DerivativeSpec::validate() const {
  if (!(rel_step > 0.0) || !(rel_step < 0.1))
    throw std::domain_error("DerivativeSpec: requires 0 < rel_step < 0.1");
  if (richardson_levels < 1 || richardson_levels > 3)
    throw std::domain_error("DerivativeSpec: richardson_levels must be 1, 2 or 3");
}

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  int depth;
  double err;                // max component error
  std::vector<double> val;   // per-component integral estimate
  std::vector<double> cerr;  // per-component error

  bool operator<(const Segment& o) const { return err < o.err; }
};

// Gauss-Kronrod 15(7) on [a,b]; fills seg.val / seg.cerr / seg.err.
void gk15(const VectorFn& f, int dim, double a, double b, Segment& seg,
          std::vector<double>& scratch) {
  const double hl = 0.5 * (b - a);
  const double cc = 0.5 * (a + b);

  scratch.resize(static_cast<std::size_t>(dim) * 16);
  std::span<double> fc(scratch.data(), dim);
  f(cc, fc);

  seg.val.assign(dim, 0.0);
  seg.cerr.assign(dim, 0.0);
  std::vector<double> resk(fc.begin(), fc.end());
  std::vector<double> resg(dim, 0.0);
  for (int i = 0; i < dim; ++i) {
    resk[i] *= kWgk[7];
    resg[i] = fc[i] * kWg[3];
  }
  // store f values for the resasc pass: slots [j*dim..) for j-th node pair sum
  for (int j = 0; j < 7; ++j) {
    const double dx = hl * kXgk[j];
    std::span<double> fa(scratch.data() + dim * (1 + 2 * j), dim);
    std::span<double> fb(scratch.data() + dim * (2 + 2 * j), dim);
    f(cc - dx, fa);
    f(cc + dx, fb);
    for (int i = 0; i < dim; ++i) {
      const double sum = fa[i] + fb[i];
      resk[i] += kWgk[j] * sum;
      if (j % 2 == 1) resg[i] += kWg[j / 2] * sum;
    }
  }
  seg.err = 0.0;
  for (int i = 0; i < dim; ++i) {
    const double reskh = 0.5 * resk[i];
    double resasc = kWgk[7] * std::abs(fc[i] - reskh);
    for (int j = 0; j < 7; ++j) {
      resasc += kWgk[j] * (std::abs(scratch[dim * (1 + 2 * j) + i] - reskh) +
                           std::abs(scratch[dim * (2 + 2 * j) + i] - reskh));
    }
    resasc *= hl;
    double err = std::abs(resk[i] - resg[i]) * hl;
    if (resasc != 0.0 && err != 0.0)
      err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    seg.val[i] = resk[i] * hl;
    seg.cerr[i] = err;
    seg.err = std::max(seg.err, err);
  }
}

// Decay-envelope tail estimate: for integrands falling at least like p^-4,
// the mass beyond +-P is bounded by ~P * max |f| near the edge.
double tail_estimate(const VectorFn& f, int dim, double P, std::vector<double>& scratch) {
  scratch.resize(dim);
  std::span<double> v(scratch.data(), dim);
  double worst = 0.0;
  for (double r : {1.0, 0.93, 0.77}) {
    for (double sgn : {-1.0, 1.0}) {
      f(sgn * r * P, v);
      for (int i = 0; i < dim; ++i) worst = std::max(worst, std::abs(v[i]));
    }
  }
  return 4.0 * P * worst;
}

}  // namespace

std::vector<double> integrate_line_vector(const VectorFn& f, int dim,
                                          const QuadratureSpec& spec,
                                          double initial_halfwidth,
                                          std::vector<QuadSegment>* leaves) {
  spec.validate();
  if (dim < 1) throw std::domain_error("integrate_line_vector: dim must be >= 1");

  std::vector<double> scratch;
  double P = std::max(initial_halfwidth, 1.0);
  int doublings = 0;
  while (tail_estimate(f, dim, P, scratch) > 0.5 * spec.abs_tol && doublings < 60) {
    P *= 2.0;
    ++doublings;
  }

  // Seed segments on a geometric ladder so the adaptive pass localizes
  // quickly even when P vastly exceeds the integrand's core scale.
  std::vector<double> knots{0.0};
  for (double x = P; x > std::max(1.0, P * 0x1p-26); x *= 0.5) knots.push_back(x);
  std::sort(knots.begin(), knots.end());
  std::vector<double> pts;
  for (auto it = knots.rbegin(); it != knots.rend(); ++it) pts.push_back(-*it);
  for (std::size_t i = 1; i < knots.size(); ++i) pts.push_back(knots[i]);

  std::priority_queue<Segment> queue;
  std::vector<double> total(dim, 0.0), total_err(dim, 0.0);
  auto push_segment = [&](double a, double b, int depth) {
    Segment s;
    s.a = a;
    s.b = b;
    s.depth = depth;
    gk15(f, dim, a, b, s, scratch);
    for (int i = 0; i < dim; ++i) {
      total[i] += s.val[i];
      total_err[i] += s.cerr[i];
    }
    queue.push(std::move(s));
  };
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) push_segment(pts[i], pts[i + 1], 0);

  auto converged = [&]() {
    for (int i = 0; i < dim; ++i)
      if (total_err[i] > std::max(spec.abs_tol, spec.rel_tol * std::abs(total[i])))
        return false;
    return true;
  };

  constexpr std::size_t kMaxSegments = 40000;
  std::size_t n_segments = pts.size() - 1;
  while (!converged()) {
    const Segment top = queue.top();
    if (top.depth >= spec.max_refinements || n_segments + 1 > kMaxSegments) {
      double worst = 0.0;
      for (int i = 0; i < dim; ++i) worst = std::max(worst, total_err[i]);
      throw accuracy_error("integrate_line: tolerance not reached after " +
                               std::to_string(top.depth) + " refinement levels",
                           total[0], worst);
    }
    queue.pop();
    for (int i = 0; i < dim; ++i) {
      total[i] -= top.val[i];
      total_err[i] -= top.cerr[i];
    }
    const double mid = 0.5 * (top.a + top.b);
    push_segment(top.a, mid, top.depth + 1);
    push_segment(mid, top.b, top.depth + 1);
    ++n_segments;
  }

  if (leaves) {
    leaves->clear();
    leaves->reserve(queue.size());
    while (!queue.empty()) {
      const Segment& s = queue.top();
      leaves->push_back({s.a, s.b, s.val[0]});
      queue.pop();
    }
    std::sort(leaves->begin(), leaves->end(),
              [](const QuadSegment& x, const QuadSegment& y) { return x.a < y.a; });
  }
  return total;
}

double integrate_line(const RealFn& f, const QuadratureSpec& spec,
                      double initial_halfwidth, std::vector<QuadSegment>* leaves) {
  auto wrapped = [&f](double p, std::span<double> out) { out[0] = f(p); };
  return integrate_line_vector(wrapped, 1, spec, initial_halfwidth, leaves)[0];
}

double integrate_weighted(const RealFn& f, const Deformation& d,
                          const QuadratureSpec& spec) {
  const double beta = d.beta();
  auto weighted = [&f, beta](double p, std::span<double> out) {
    out[0] = f(p) / (1.0 + beta * p * p);
  };
  return integrate_line_vector(weighted, 1, spec, 8.0, nullptr)[0];
}

std::complex<double> inner_product(const ComplexFn& bra, const ComplexFn& ket,
                                   const Deformation& d, const QuadratureSpec& spec) {
  const double beta = d.beta();
  auto integrand = [&](double p, std::span<double> out) {
    const std::complex<double> v = std::conj(bra(p)) * ket(p) / (1.0 + beta * p * p);
    out[0] = v.real();
    out[1] = v.imag();
  };
  const std::vector<double> r = integrate_line_vector(integrand, 2, spec, 8.0, nullptr);
  return {r[0], r[1]};
}

EigenbasisDerivative::EigenbasisDerivative(const Deformation& d,
                                           const OscillatorConfig& cfg, int n_max,
                                           const DerivativeSpec& spec)
    : n_max_(n_max), levels_(spec.richardson_levels) {
  spec.validate();
  const double beta = d.beta();
  const double h0 = spec.rel_step;
  if (beta * (1.0 + h0) > Deformation::kMaxBeta ||
      beta * (1.0 - h0) < Deformation::kMinWavefunctionBeta)
    throw std::domain_error(
        "EigenbasisDerivative: finite-difference step leaves the supported beta window");
  shifted_.reserve(2 * static_cast<std::size_t>(levels_));
  for (int l = 0; l < levels_; ++l) {
    const double h = h0 / static_cast<double>(1 << l);
    if (beta * (1.0 + h) == beta)
      throw std::domain_error("EigenbasisDerivative: finite-difference step underflow");
    shifted_.emplace_back(beta * (1.0 + h), cfg, n_max);
    shifted_.emplace_back(beta * (1.0 - h), cfg, n_max);
    inv_denom_[l] = 1.0 / (2.0 * beta * h);
  }
}

void EigenbasisDerivative::eval_all(double p, std::span<double> out) const {
  const int dim = n_max_ + 1;
  std::array<double, specfun::kMaxPolyOrder + 1> up, down;
  std::array<double, 3 * (specfun::kMaxPolyOrder + 1)> diff;
  for (int l = 0; l < levels_; ++l) {
    shifted_[2 * l].eval_all(p, std::span<double>(up.data(), dim));
    shifted_[2 * l + 1].eval_all(p, std::span<double>(down.data(), dim));
    for (int i = 0; i < dim; ++i)
      diff[static_cast<std::size_t>(l) * dim + i] = (up[i] - down[i]) * inv_denom_[l];
  }
  if (levels_ == 1) {
    for (int i = 0; i < dim; ++i) out[i] = diff[i];
  } else if (levels_ == 2) {
    for (int i = 0; i < dim; ++i) out[i] = (4.0 * diff[dim + i] - diff[i]) / 3.0;
  } else {
    for (int i = 0; i < dim; ++i) {
      const double r1 = (4.0 * diff[dim + i] - diff[i]) / 3.0;
      const double r2 = (4.0 * diff[2 * dim + i] - diff[dim + i]) / 3.0;
      out[i] = (16.0 * r2 - r1) / 15.0;
    }
  }
}

double EigenbasisDerivative::eval(int n, double p) const {
  std::array<double, specfun::kMaxPolyOrder + 1> buf;
  eval_all(p, std::span<double>(buf.data(), static_cast<std::size_t>(n_max_) + 1));
  return buf[static_cast<std::size_t>(n)];
}

double dpsi_dbeta(int n, double p, const Deformation& d, const OscillatorConfig& cfg,
                  const DerivativeSpec& spec) {
  detail::require_wavefunction_args(n, d);
  return EigenbasisDerivative(d, cfg, n, spec).eval(n, p);
}

}  // namespace gupest
