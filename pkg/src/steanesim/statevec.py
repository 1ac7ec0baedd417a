"""Dense state-vector simulator for the handful of gates the networks use."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kernels import statevec as _k

MAX_QUBITS = 15
GATE_KINDS = ("H", "X", "Y", "Z", "CNOT")


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        arity = 2 if self.kind == "CNOT" else 1
        if len(self.qubits) != arity:
            raise ValueError(f"{self.kind} takes {arity} qubit(s), got {self.qubits}")
        if arity == 2 and self.qubits[0] == self.qubits[1]:
            raise ValueError("CNOT control and target must differ")

    def __repr__(self):
        return f"{self.kind}{self.qubits}"


class StateVector:
    """``2**n`` complex amplitudes; bit ``k`` of the index is qubit ``k``."""

    __slots__ = ("n_qubits", "amplitudes")

    def __init__(self, n_qubits: int, amplitudes: np.ndarray):
        amplitudes = np.ascontiguousarray(amplitudes, dtype=np.complex128)
        if amplitudes.shape != (1 << n_qubits,):
            raise ValueError(f"expected {1 << n_qubits} amplitudes, got shape {amplitudes.shape}")
        self.n_qubits = n_qubits
        self.amplitudes = amplitudes

    def copy(self) -> StateVector:
        return StateVector(self.n_qubits, self.amplitudes.copy())

    def norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def __repr__(self):
        nz = np.flatnonzero(np.abs(self.amplitudes) > 1e-12)
        return f"StateVector(n_qubits={self.n_qubits}, support={len(nz)})"


def new_zero_state(n_qubits: int, max_qubits: int = MAX_QUBITS) -> StateVector:
    if not 1 <= n_qubits <= max_qubits:
        raise ValueError(f"n_qubits={n_qubits} outside 1..{max_qubits}")
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(n_qubits, amps)


def _check_qubit(state: StateVector, q: int):
    if not 0 <= q < state.n_qubits:
        raise IndexError(f"qubit {q} outside 0..{state.n_qubits - 1}")


def apply_gate_inplace(state: StateVector, gate: Gate) -> None:
    for q in gate.qubits:
        _check_qubit(state, q)
    a = state.amplitudes
    if gate.kind == "H":
        _k.apply_h(a, gate.qubits[0])
    elif gate.kind == "X":
        _k.apply_x(a, gate.qubits[0])
    elif gate.kind == "Y":
        _k.apply_y(a, gate.qubits[0])
    elif gate.kind == "Z":
        _k.apply_z(a, gate.qubits[0])
    else:
        _k.apply_cnot(a, *gate.qubits)


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    out = state.copy()
    apply_gate_inplace(out, gate)
    return out


def apply_circuit(state: StateVector, gates) -> StateVector:
    out = state.copy()
    for g in gates:
        apply_gate_inplace(out, g)
    return out


def apply_pauli(state: StateVector, p) -> StateVector:
    """Multiply by the Pauli operator ``p`` (a :class:`PauliString`), sign included."""
    if p.n_qubits != state.n_qubits:
        raise ValueError(f"Pauli width {p.n_qubits} != register width {state.n_qubits}")
    out = state.copy()
    phase = p.sign * (1j ** (bin(p.x_mask & p.z_mask).count("1") % 4))
    _k.apply_pauli_masks(out.amplitudes, p.x_mask, p.z_mask, complex(phase))
    return out


def measure_z(state: StateVector, qubit: int, rng: np.random.Generator) -> tuple[int, StateVector]:
    """Sample a Z-basis outcome and return it with the collapsed state."""
    _check_qubit(state, qubit)
    out = state.copy()
    bit = _k.measure(out.amplitudes, qubit, rng.random())
    return int(bit), out


def reset_qubit(state: StateVector, qubit: int, rng: np.random.Generator) -> StateVector:
    bit, out = measure_z(state, qubit, rng)
    if bit:
        _k.apply_x(out.amplitudes, qubit)
    return out


def fidelity(a: StateVector, b: StateVector) -> float:
    """``|<a|b>|**2``."""
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"registers of {a.n_qubits} and {b.n_qubits} qubits")
    return float(min(1.0, abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2))


def tensor(low: StateVector, high: StateVector) -> StateVector:
    """Joint register with ``low`` on qubits ``0..n_low-1`` and ``high`` above it."""
    return StateVector(low.n_qubits + high.n_qubits, np.kron(high.amplitudes, low.amplitudes))


def drop_high(state: StateVector, n_keep: int, atol: float = 1e-9) -> StateVector:
    """Discard qubits ``n_keep..`` which must all be in ``|0>``."""
    amps = state.amplitudes.reshape(-1, 1 << n_keep)
    kept = amps[0].copy()
    leak = float(np.vdot(kept, kept).real)
    if abs(leak - state.norm()) > atol:
        raise ValueError("discarded qubits are not in |0>")
    return StateVector(n_keep, kept)
