"""Smoke tests for the python bindings: construction, the headline numbers,
and determinism. The numerics themselves are covered by the C++ suites."""

import math

import pytest

gupest = pytest.importorskip("gupest")


@pytest.fixture()
def unit():
    return gupest.OscillatorConfig(1.0, 1.0)


def test_version_and_constants():
    assert gupest.__version__
    assert gupest.MAX_POLY_ORDER == 12


def test_model_basics(unit):
    d = gupest.Deformation(0.01)
    assert gupest.lambda_param(d, unit) == pytest.approx(100.50125, abs=1e-5)
    assert gupest.measure(d, 10.0) == pytest.approx(0.5)
    assert gupest.energy(0, d, unit) == pytest.approx(0.50250625, rel=1e-9)
    assert gupest.denergy_dbeta(0, gupest.Deformation(1e-8), unit) == pytest.approx(
        0.25, rel=1e-6
    )


def test_wavefunction_forms_agree(unit):
    d = gupest.Deformation(0.01)
    for n in range(4):
        for p in (-3.0, 0.5, 7.0):
            g = gupest.psi(n, p, d, unit)
            h = gupest.psi_hypergeometric(n, p, d, unit)
            assert h.real == pytest.approx(g, abs=1e-9)
            assert abs(h.imag) < 1e-9


def test_specfun_kernel():
    assert gupest.ln_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-13)
    assert gupest.gegenbauer(2, 2.0, 0.3) == pytest.approx(-0.92, rel=1e-13)
    assert gupest.hyp2f1_terminating(1, 2.0, 3.0, 0.5) == pytest.approx(2.0 / 3.0)
    with pytest.raises(ValueError):
        gupest.ln_gamma(-1.0)


def test_report_headline_numbers(unit):
    d = gupest.Deformation(0.01)
    r = gupest.fi_momentum(gupest.eigenstate(1), d, unit)
    assert r.H == pytest.approx(5.2101, rel=1e-3)
    assert r.F_amended == r.F + r.I_mu
    assert r.Q == pytest.approx(1e-4 * r.H)
    R, Q = gupest.snr_qsnr(r)
    assert (R, Q) == (r.F_amended * 1e-4, r.H * 1e-4)


def test_taylor_reference():
    t = gupest.taylor_reference(0)
    assert list(t.h_coeffs) == [1.125, -6.625, 25.09375]
    assert t.h_at(0.0) == 1.125
    with pytest.raises(ValueError):
        gupest.taylor_reference(3)


def test_states_and_descriptors(unit):
    d = gupest.Deformation(0.01)
    th = gupest.make_state("thermal:T=0.5", d, unit)
    assert isinstance(th, gupest.MixedState)
    assert th.temperature == 0.5
    q = gupest.qubit_superposition(math.pi / 4)
    assert q.coeffs[0][1].real == pytest.approx(math.sqrt(0.5))
    assert gupest.state_descriptor(gupest.eigenstate(2)) == "n:2"


def test_sampling_determinism(unit):
    d = gupest.Deformation(0.05)
    a = gupest.sample_momentum(gupest.eigenstate(0), d, unit, 64, 9)
    b = gupest.sample_momentum(gupest.eigenstate(0), d, unit, 64, 9)
    assert a.samples == b.samples
    assert a.state_descriptor == "n:0"


def test_mle_roundtrip(unit):
    d = gupest.Deformation(0.1)
    s = gupest.sample_momentum(gupest.eigenstate(1), d, unit, 20000, 17)
    r = gupest.mle_beta(s, (0.02, 0.4), unit)
    assert abs(r.beta_hat - 0.1) < 4.0 * r.stderr_estimate
    assert r.n_samples == 20000
