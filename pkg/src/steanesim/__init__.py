"""Monte Carlo simulation of a Steane [[7,1,3]] logical qubit under depolarizing noise.

Two interchangeable engines run the same compiled networks: a dense
state-vector simulator and a Pauli-frame propagator.  The hot loops are
compiled with numba when it is available (set ``QSIM_DISABLE_NUMBA=1`` for the
pure numpy/Python path).
"""

from ._accel import HAVE_NUMBA, backend_name
from .ancilla import (
    AncillaOutcome,
    AncillaStats,
    FactoryStarvation,
    ancilla_statistics,
    estimate_fidelity,
    estimate_p_two_bitflip,
    prepare_verified,
)
from .engines import PauliFrameEngine, StateVectorEngine, make_engine
from .experiments import (
    ChannelConfig,
    CurvePoint,
    find_critical_time,
    naked_fidelity_closed_form,
    run_channel,
    run_encoded,
    run_naked,
)
from .noise import NoiseParams
from .pauli import PauliFrame, PauliString, ResidualClass, residual_class
from .recovery import RecoveryReport, correct_round, extract_x_syndrome, extract_z_syndrome, vote
from .steane import TABLES, Syndrome, correction_from_syndrome, hamming_syndrome

__version__ = "0.1.0"

__all__ = [
    "HAVE_NUMBA", "backend_name", "AncillaOutcome", "AncillaStats", "FactoryStarvation",
    "ancilla_statistics", "estimate_fidelity", "estimate_p_two_bitflip", "prepare_verified",
    "PauliFrameEngine", "StateVectorEngine", "make_engine", "ChannelConfig", "CurvePoint",
    "find_critical_time", "naked_fidelity_closed_form", "run_channel", "run_encoded", "run_naked",
    "NoiseParams", "PauliFrame", "PauliString", "ResidualClass", "residual_class", "RecoveryReport",
    "correct_round", "extract_x_syndrome", "extract_z_syndrome", "vote", "TABLES", "Syndrome",
    "correction_from_syndrome", "hamming_syndrome",
]
