#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gupest/cli.hpp"
#include "gupest/estimation.hpp"
#include "gupest/montecarlo.hpp"
#include "gupest/version.hpp"

namespace py = pybind11;
using namespace gupest;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Precision bounds (QFI, amended FI, SNR) and simulated momentum "
            "experiments for the minimal-length deformed harmonic oscillator";
  m.attr("__version__") = kVersion;
  m.attr("MAX_POLY_ORDER") = specfun::kMaxPolyOrder;

  py::register_exception<accuracy_error>(m, "AccuracyError", PyExc_ArithmeticError);
  py::register_exception<degeneracy_error>(m, "DegeneracyError", PyExc_ValueError);
  py::register_exception<bracket_error>(m, "BracketError", PyExc_RuntimeError);

  py::class_<OscillatorConfig>(m, "OscillatorConfig")
      .def(py::init<double, double>(), py::arg("m") = 1.0, py::arg("omega") = 1.0)
      .def_property_readonly("m", &OscillatorConfig::m)
      .def_property_readonly("omega", &OscillatorConfig::omega)
      .def_property_readonly("k", &OscillatorConfig::k)
      .def_property_readonly("length_scale", &OscillatorConfig::length_scale);

  py::class_<Deformation>(m, "Deformation")
      .def(py::init<double>(), py::arg("beta"))
      .def_property_readonly("beta", &Deformation::beta)
      .def_property_readonly("delta_x0", &Deformation::delta_x0)
      .def_property_readonly("in_wavefunction_window", &Deformation::in_wavefunction_window);

  py::class_<QuadratureSpec>(m, "QuadratureSpec")
      .def(py::init([](double rel_tol, double abs_tol, int max_refinements) {
             QuadratureSpec s{rel_tol, abs_tol, max_refinements};
             s.validate();
             return s;
           }),
           py::arg("rel_tol") = 1e-10, py::arg("abs_tol") = 1e-12,
           py::arg("max_refinements") = 30)
      .def_readonly("rel_tol", &QuadratureSpec::rel_tol)
      .def_readonly("abs_tol", &QuadratureSpec::abs_tol)
      .def_readonly("max_refinements", &QuadratureSpec::max_refinements);

  py::class_<DerivativeSpec>(m, "DerivativeSpec")
      .def(py::init([](double rel_step, int richardson_levels) {
             DerivativeSpec s{rel_step, richardson_levels};
             s.validate();
             return s;
           }),
           py::arg("rel_step") = 1e-4, py::arg("richardson_levels") = 2)
      .def_readonly("rel_step", &DerivativeSpec::rel_step)
      .def_readonly("richardson_levels", &DerivativeSpec::richardson_levels);

  // special-function kernel
  m.def("ln_gamma", &specfun::ln_gamma, py::arg("x"));
  m.def("gegenbauer", &specfun::gegenbauer, py::arg("n"), py::arg("lam"), py::arg("s"));
  m.def("hyp2f1_terminating", &specfun::hyp2f1_terminating, py::arg("n"), py::arg("b"),
        py::arg("c"), py::arg("z"));

  // model
  m.def("lambda_param", &lambda_param, py::arg("d"), py::arg("cfg"));
  m.def("measure", &measure, py::arg("d"), py::arg("p"));
  m.def("energy", &energy, py::arg("n"), py::arg("d"), py::arg("cfg"));
  m.def("denergy_dbeta", &denergy_dbeta, py::arg("n"), py::arg("d"), py::arg("cfg"));
  m.def("psi", &psi_gegenbauer, py::arg("n"), py::arg("p"), py::arg("d"), py::arg("cfg"),
        "momentum-space eigenfunction (Gegenbauer form, production path)");
  m.def("psi_hypergeometric", &psi_hypergeometric, py::arg("n"), py::arg("p"),
        py::arg("d"), py::arg("cfg"),
        "cross-validation form via the terminating hypergeometric series");
  m.def("dpsi_dbeta", &dpsi_dbeta, py::arg("n"), py::arg("p"), py::arg("d"),
        py::arg("cfg"), py::arg("spec") = DerivativeSpec{});

  // states
  py::class_<PureState>(m, "PureState")
      .def_readonly("coeffs", &PureState::coeffs)
      .def_property_readonly("max_n", &PureState::max_n);
  py::class_<MixedState>(m, "MixedState")
      .def_readonly("weights", &MixedState::weights)
      .def_readonly("beta_dependent_weights", &MixedState::beta_dependent_weights)
      .def_readonly("temperature", &MixedState::temperature)
      .def_property_readonly("max_n", &MixedState::max_n);

  m.def("eigenstate", &eigenstate, py::arg("n"));
  m.def("qubit_superposition", &qubit_superposition, py::arg("phi"));
  m.def("qutrit_superposition", &qutrit_superposition, py::arg("phi"), py::arg("theta"));
  m.def("mixture_ground_first", &mixture_ground_first, py::arg("theta"));
  m.def(
      "thermal_state",
      [](double T, double tail_tol, const Deformation& d, const OscillatorConfig& cfg) {
        return thermal_state({T, tail_tol}, d, cfg);
      },
      py::arg("T"), py::arg("tail_tol"), py::arg("d"), py::arg("cfg"));
  m.def("make_state", &make_state, py::arg("descriptor"), py::arg("d"), py::arg("cfg"),
        py::arg("thermal_tail_tol") = 1e-12);
  m.def("state_descriptor", &state_descriptor, py::arg("state"));

  // quadrature surface
  m.def(
      "integrate_weighted",
      [](const std::function<double(double)>& f, const Deformation& d,
         const QuadratureSpec& spec) { return integrate_weighted(f, d, spec); },
      py::arg("f"), py::arg("d"), py::arg("spec") = QuadratureSpec{});
  m.def(
      "inner_product",
      [](const ComplexFn& bra, const ComplexFn& ket, const Deformation& d,
         const QuadratureSpec& spec) { return inner_product(bra, ket, d, spec); },
      py::arg("bra"), py::arg("ket"), py::arg("d"), py::arg("spec") = QuadratureSpec{});

  // estimation
  py::class_<EstimationReport>(m, "EstimationReport")
      .def_readonly("beta", &EstimationReport::beta)
      .def_readonly("H", &EstimationReport::H)
      .def_readonly("F", &EstimationReport::F)
      .def_readonly("I_mu", &EstimationReport::I_mu)
      .def_readonly("F_amended", &EstimationReport::F_amended)
      .def_readonly("F_classical_full", &EstimationReport::F_classical_full)
      .def_readonly("R", &EstimationReport::R)
      .def_readonly("Q", &EstimationReport::Q)
      .def("__repr__", [](const EstimationReport& r) {
        return "EstimationReport(beta=" + std::to_string(r.beta) +
               ", H=" + std::to_string(r.H) + ", F_amended=" + std::to_string(r.F_amended) +
               ")";
      });

  py::class_<TaylorReference>(m, "TaylorReference")
      .def_readonly("n", &TaylorReference::n)
      .def_readonly("h_coeffs", &TaylorReference::h_coeffs)
      .def_readonly("imu_coeffs", &TaylorReference::imu_coeffs)
      .def("h_at", &TaylorReference::h_at, py::arg("beta"))
      .def("imu_at", &TaylorReference::imu_at, py::arg("beta"));
  m.def("taylor_reference", &taylor_reference, py::arg("n"));

  m.def(
      "qfi_pure",
      [](const PureState& s, const Deformation& d, const OscillatorConfig& cfg,
         const QuadratureSpec& q, const DerivativeSpec& ds) {
        return qfi_pure(s, d, cfg, q, ds);
      },
      py::arg("state"), py::arg("d"), py::arg("cfg"),
      py::arg("qspec") = QuadratureSpec{}, py::arg("dspec") = DerivativeSpec{});
  m.def(
      "qfi_mixed",
      [](const MixedState& s, const Deformation& d, const OscillatorConfig& cfg,
         const QuadratureSpec& q, const DerivativeSpec& ds) {
        return qfi_mixed(s, d, cfg, q, ds);
      },
      py::arg("state"), py::arg("d"), py::arg("cfg"),
      py::arg("qspec") = QuadratureSpec{}, py::arg("dspec") = DerivativeSpec{});
  m.def(
      "fi_momentum",
      [](const StateVariant& s, const Deformation& d, const OscillatorConfig& cfg,
         const QuadratureSpec& q, const DerivativeSpec& ds) {
        return fi_momentum(s, d, cfg, q, ds);
      },
      py::arg("state"), py::arg("d"), py::arg("cfg"),
      py::arg("qspec") = QuadratureSpec{}, py::arg("dspec") = DerivativeSpec{});
  m.def("snr_qsnr", &snr_qsnr, py::arg("report"));

  // monte carlo
  py::class_<SampleSet>(m, "SampleSet")
      .def_readonly("beta_true", &SampleSet::beta_true)
      .def_readonly("state_descriptor", &SampleSet::state_descriptor)
      .def_readonly("seed", &SampleSet::seed)
      .def_readonly("samples", &SampleSet::samples);
  py::class_<MleResult>(m, "MleResult")
      .def_readonly("beta_hat", &MleResult::beta_hat)
      .def_readonly("loglik_at_hat", &MleResult::loglik_at_hat)
      .def_readonly("n_samples", &MleResult::n_samples)
      .def_readonly("stderr_estimate", &MleResult::stderr_estimate);
  py::class_<CrExperimentSummary>(m, "CrExperimentSummary")
      .def_readonly("state_descriptor", &CrExperimentSummary::state_descriptor)
      .def_readonly("beta_true", &CrExperimentSummary::beta_true)
      .def_readonly("seed", &CrExperimentSummary::seed)
      .def_readonly("replicas", &CrExperimentSummary::replicas)
      .def_readonly("count", &CrExperimentSummary::count)
      .def_readonly("bracket", &CrExperimentSummary::bracket)
      .def_readonly("beta_hats", &CrExperimentSummary::beta_hats)
      .def_readonly("bracket_edge_hits", &CrExperimentSummary::bracket_edge_hits)
      .def_readonly("mean", &CrExperimentSummary::mean)
      .def_readonly("variance", &CrExperimentSummary::variance)
      .def_readonly("predicted_var_f", &CrExperimentSummary::predicted_var_f)
      .def_readonly("predicted_var_f_amended", &CrExperimentSummary::predicted_var_f_amended)
      .def_readonly("predicted_var_f_classical_full",
                    &CrExperimentSummary::predicted_var_f_classical_full)
      .def_readonly("report", &CrExperimentSummary::report);

  m.def(
      "sample_momentum",
      [](const StateVariant& s, const Deformation& d, const OscillatorConfig& cfg,
         std::size_t count, std::uint64_t seed) {
        return sample_momentum(s, d, cfg, count, seed);
      },
      py::arg("state"), py::arg("d"), py::arg("cfg"), py::arg("count"), py::arg("seed"));
  m.def(
      "mle_beta",
      [](const SampleSet& s, std::pair<double, double> bracket,
         const OscillatorConfig& cfg) { return mle_beta(s, bracket, cfg); },
      py::arg("samples"), py::arg("bracket"), py::arg("cfg"));
  m.def(
      "cr_experiment",
      [](const StateVariant& s, const Deformation& d, const OscillatorConfig& cfg,
         int replicas, std::size_t count, std::uint64_t seed) {
        return cr_experiment(s, d, cfg, replicas, count, seed);
      },
      py::arg("state"), py::arg("d"), py::arg("cfg"), py::arg("replicas"),
      py::arg("count"), py::arg("seed"));
}
