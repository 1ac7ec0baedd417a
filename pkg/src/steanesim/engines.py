"""The two interchangeable back ends behind the protocol code.

Both run the same compiled :class:`~steanesim.noise.Program` with the same
fault codes.  The state-vector engine evolves amplitudes and samples real
measurement outcomes; the frame engine tracks only the residual Pauli and
reports outcomes relative to the noiseless circuit.  Everything the protocols
read from measurements (flag parities, Hamming syndromes of ancilla words
drawn from a code) is the same under both conventions.
"""

from __future__ import annotations

import numpy as np

from . import statevec as sv
from .kernels import frame as _frame
from .kernels import statevec as _svk
from .pauli import PauliString
from .steane import ALL_ONES, TABLES, logical_state, plus_logical
from .streams import as_kernel_random

# reference states the protocols compare against
REFERENCES = ("zero_L", "plus_L", "plus")


def frame_fidelity(x: int, z: int, reference: str) -> float:
    """1.0 iff the Pauli ``(x, z)`` fixes ``reference`` up to phase, else 0.0.

    Pauli errors on a stabilizer state either leave it alone or rotate it to
    an orthogonal state, so the overlap is exactly 0 or 1.
    """
    if reference == "plus":
        return 1.0 if z == 0 else 0.0
    sx, sz = TABLES.syndrome_of(x), TABLES.syndrome_of(z)
    if sx or sz:
        return 0.0
    if reference == "zero_L":  # X part in C-perp; any Z in C (Z_L fixes |0_L>)
        return 1.0 if x in TABLES.dual_set else 0.0
    if reference == "plus_L":  # Z part in C-perp; any X in C (X_L fixes |+_L>)
        return 1.0 if z in TABLES.dual_set else 0.0
    raise ValueError(f"unknown reference {reference!r}")


def reference_state(reference: str) -> sv.StateVector:
    if reference == "zero_L":
        return logical_state(1.0, 0.0)
    if reference == "plus_L":
        return plus_logical()
    if reference == "plus":
        return sv.StateVector(1, np.full(2, 1 / np.sqrt(2), dtype=np.complex128))
    raise ValueError(f"unknown reference {reference!r}")


class StateVectorEngine:
    name = "statevector"

    def __init__(self, rng=None):
        # Born sampling has its own stream so fault streams match the frame engine's
        self.rng = as_kernel_random(rng)
        self._refs: dict[str, sv.StateVector] = {}

    def zero(self, n_qubits: int) -> sv.StateVector:
        return sv.new_zero_state(n_qubits)

    def prepare(self, reference: str) -> sv.StateVector:
        return reference_state(reference)

    def run(self, reg: sv.StateVector, program, codes: np.ndarray, nf: int):
        if program.n_qubits != reg.n_qubits:
            raise ValueError(f"program for {program.n_qubits} qubits on a {reg.n_qubits}-qubit register")
        bits = np.zeros(max(program.n_bits, 1), dtype=np.int64)
        _svk.run_program(reg.amplitudes, program.ops, 0, program.ops.shape[0], codes, bits, self.rng.state)
        return reg, bits[:program.n_bits]

    def tensor(self, low, high):
        return sv.tensor(low, high)

    def drop_high(self, reg, n_keep: int):
        return sv.drop_high(reg, n_keep)

    def fidelity(self, reg, reference: str) -> float:
        if reference not in self._refs:
            self._refs[reference] = reference_state(reference)
        return sv.fidelity(self._refs[reference], reg)


class PauliFrameEngine:
    name = "pauli_frame"

    def zero(self, n_qubits: int) -> PauliString:
        return PauliString(n_qubits)

    def prepare(self, reference: str) -> PauliString:
        return PauliString(reference_state(reference).n_qubits)

    def run(self, reg: PauliString, program, codes: np.ndarray, nf: int):
        if program.n_qubits != reg.n_qubits:
            raise ValueError(f"program for {program.n_qubits} qubits on a {reg.n_qubits}-qubit register")
        bits = np.zeros(max(program.n_bits, 1), dtype=np.int64)
        x, z = _frame.run_program(program.ops, 0, program.ops.shape[0], codes, nf, program.has_corr,
                                  reg.x_mask, reg.z_mask, bits)
        return PauliString(reg.n_qubits, int(x), int(z)), bits[:program.n_bits]

    def tensor(self, low: PauliString, high: PauliString) -> PauliString:
        n = low.n_qubits
        return PauliString(n + high.n_qubits, low.x_mask | (high.x_mask << n), low.z_mask | (high.z_mask << n))

    def drop_high(self, reg: PauliString, n_keep: int) -> PauliString:
        keep = (1 << n_keep) - 1
        if (reg.x_mask | reg.z_mask) & ~keep:
            raise ValueError("discarded qubits still carry a frame")
        return PauliString(n_keep, reg.x_mask & keep, reg.z_mask & keep)

    def fidelity(self, reg: PauliString, reference: str) -> float:
        return frame_fidelity(reg.x_mask, reg.z_mask, reference)


def make_engine(engine, rng=None):
    """Accept an engine instance or one of ``'statevector'``, ``'pauli_frame'``/``'pauli-frame'``."""
    if isinstance(engine, (StateVectorEngine, PauliFrameEngine)):
        return engine
    if engine in ("statevector", "state_vector", "sv"):
        return StateVectorEngine(rng)
    if engine in ("pauli_frame", "pauli-frame", "frame"):
        return PauliFrameEngine()
    raise ValueError(f"unknown engine {engine!r}")


__all__ = ["StateVectorEngine", "PauliFrameEngine", "make_engine", "frame_fidelity",
           "reference_state", "REFERENCES", "ALL_ONES"]
