"""Precision bounds and simulated experiments for the minimal-length
deformed harmonic oscillator.

The heavy lifting lives in the C++ extension ``gupest._core``; this package
re-exports its public surface.
"""

from gupest._core import (  # noqa: F401
    MAX_POLY_ORDER,
    AccuracyError,
    BracketError,
    CrExperimentSummary,
    DegeneracyError,
    Deformation,
    DerivativeSpec,
    EstimationReport,
    MixedState,
    MleResult,
    OscillatorConfig,
    PureState,
    QuadratureSpec,
    SampleSet,
    TaylorReference,
    __version__,
    cr_experiment,
    denergy_dbeta,
    dpsi_dbeta,
    eigenstate,
    energy,
    fi_momentum,
    gegenbauer,
    hyp2f1_terminating,
    inner_product,
    integrate_weighted,
    lambda_param,
    ln_gamma,
    make_state,
    measure,
    mixture_ground_first,
    mle_beta,
    psi,
    psi_hypergeometric,
    qfi_mixed,
    qfi_pure,
    qubit_superposition,
    qutrit_superposition,
    sample_momentum,
    snr_qsnr,
    state_descriptor,
    taylor_reference,
    thermal_state,
)
