"""Depolarizing noise: parameters, ASAP scheduling, fault locations, sampling.

Faults follow the gate at the same location.  A one-qubit gate or an idle
qubit in a time step receives X, Y or Z with probability epsilon/3 each; a
CNOT receives one of the 15 non-identity two-qubit Paulis with probability
gamma/15 each.  Measurements and resets are noiseless and take no time step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .kernels import faults as _faults
from .kernels.opcodes import (
    LOC_ONE,
    LOC_TWO,
    OP_CNOT,
    OP_CORR_X,
    OP_CORR_Z,
    OP_H,
    OP_MEASURE,
    OP_NOISE1,
    OP_NOISE2,
    OP_READOUT,
    OP_RESET,
    OP_X,
    OP_Y,
    OP_Z,
)
from .pauli import PauliString
from .statevec import Gate
from .streams import as_kernel_random

_GATE_OPS = {"H": OP_H, "X": OP_X, "Y": OP_Y, "Z": OP_Z, "CNOT": OP_CNOT}
_CODE_LETTER = "IXYZ"


@dataclass(frozen=True)
class NoiseParams:
    epsilon: float = 0.0
    gamma: float = 0.0
    include_idle_memory: bool = True

    def __post_init__(self):
        for name in ("epsilon", "gamma"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name}={v} is not a probability")


class FaultLocation(NamedTuple):
    layer: int
    kind: str  # "gate1", "gate2" or "idle"
    qubits: tuple[int, ...]


@dataclass
class ScheduledCircuit:
    n_qubits: int
    layers: list[list[Gate]]
    fault_locations: list[FaultLocation]

    @property
    def depth(self) -> int:
        return len(self.layers)

    def gates(self) -> list[Gate]:
        return [g for layer in self.layers for g in layer]

    def count(self, kind: str) -> int:
        return sum(1 for loc in self.fault_locations if loc.kind == kind)


def schedule_asap(circuit: list[Gate], n_qubits: int) -> ScheduledCircuit:
    """Greedy layering: each gate goes one step after the latest gate it shares a qubit with."""
    ready = [0] * n_qubits
    layers: list[list[Gate]] = []
    for g in circuit:
        for q in g.qubits:
            if not 0 <= q < n_qubits:
                raise IndexError(f"gate {g} outside a {n_qubits}-qubit register")
        step = max(ready[q] for q in g.qubits)
        while len(layers) <= step:
            layers.append([])
        layers[step].append(g)
        for q in g.qubits:
            ready[q] = step + 1
    locations = []
    for i, layer in enumerate(layers):
        busy = set()
        for g in layer:
            locations.append(FaultLocation(i, "gate2" if g.kind == "CNOT" else "gate1", g.qubits))
            busy.update(g.qubits)
        locations.extend(FaultLocation(i, "idle", (q,)) for q in range(n_qubits) if q not in busy)
    return ScheduledCircuit(n_qubits, layers, locations)


def code_to_pauli(code: int, width: int) -> PauliString:
    """Pauli code (1..3 one-qubit, 1..15 two-qubit as 4*first+second) -> string."""
    if width == 1:
        return PauliString.from_label(_CODE_LETTER[code])
    return PauliString.from_label(_CODE_LETTER[code >> 2] + _CODE_LETTER[code & 3])


def sample_one_qubit_fault(epsilon: float, rng: np.random.Generator) -> PauliString:
    u = rng.random()
    if u >= epsilon:
        return PauliString(1)
    return code_to_pauli(1 + min(2, int(3.0 * u / epsilon)), 1)


def sample_two_qubit_fault(gamma: float, rng: np.random.Generator) -> PauliString:
    u = rng.random()
    if u >= gamma:
        return PauliString(2)
    return code_to_pauli(1 + min(14, int(15.0 * u / gamma)), 2)


# ------------------------------------------------------------------ programs


@dataclass
class Program:
    """A network compiled to the flat instruction table both engines execute."""

    name: str
    n_qubits: int
    ops: np.ndarray
    n_bits: int
    locations: list[FaultLocation]
    loc_one: np.ndarray
    loc_two: np.ndarray
    has_corr: bool

    @property
    def n_locations(self) -> int:
        return len(self.locations)


@dataclass
class ProgramBuilder:
    n_qubits: int
    include_idle_memory: bool = True
    rows: list = field(default_factory=list)
    locations: list = field(default_factory=list)
    n_bits: int = 0
    _layer: int = 0
    _corr: bool = False

    def _noise(self, loc: FaultLocation):
        idx = len(self.locations)
        self.locations.append(loc)
        if loc.kind == "gate2":
            self.rows.append((OP_NOISE2, loc.qubits[0], loc.qubits[1], idx))
        else:
            self.rows.append((OP_NOISE1, loc.qubits[0], 0, idx))

    def circuit(self, sched: ScheduledCircuit, qubit_map=None) -> ProgramBuilder:
        qmap = list(qubit_map) if qubit_map is not None else list(range(sched.n_qubits))
        by_layer: dict[int, list[FaultLocation]] = {}
        for loc in sched.fault_locations:
            by_layer.setdefault(loc.layer, []).append(loc)
        for i, layer in enumerate(sched.layers):
            for g in layer:
                qs = [qmap[q] for q in g.qubits]
                self.rows.append((_GATE_OPS[g.kind], qs[0], qs[1] if len(qs) > 1 else 0, 0))
            for loc in by_layer.get(i, []):
                if loc.kind == "idle" and not self.include_idle_memory:
                    continue
                self._noise(FaultLocation(self._layer + i, loc.kind, tuple(qmap[q] for q in loc.qubits)))
        self._layer += sched.depth
        return self

    def gates(self, gates: list[Gate]) -> ProgramBuilder:
        return self.circuit(schedule_asap(gates, self.n_qubits))

    def memory(self, qubits) -> ProgramBuilder:
        """One free-evolution time step: every listed qubit is an idle location."""
        for q in qubits:
            self._noise(FaultLocation(self._layer, "idle", (q,)))
        self._layer += 1
        return self

    def correction(self, letter: str, qubit: int, data_qubits) -> ProgramBuilder:
        """A classically controlled X or Z as one noisy time step on the data block."""
        self.rows.append((OP_CORR_X if letter == "X" else OP_CORR_Z, qubit, 0, 0))
        self._corr = True
        self._noise(FaultLocation(self._layer, "gate1", (qubit,)))
        if self.include_idle_memory:
            for q in data_qubits:
                if q != qubit:
                    self._noise(FaultLocation(self._layer, "idle", (q,)))
        self._layer += 1
        return self

    def measure(self, qubit: int) -> int:
        slot = self.n_bits
        self.rows.append((OP_MEASURE, qubit, slot, 0))
        self.n_bits += 1
        return slot

    def reset(self, qubit: int) -> ProgramBuilder:
        self.rows.append((OP_RESET, qubit, 0, 0))
        return self

    def readout(self, qubits) -> int:
        """Measure then reset a contiguous ascending run of qubits; returns the
        slot of the first result (the rest follow in order)."""
        qubits = list(qubits)
        if qubits != list(range(qubits[0], qubits[0] + len(qubits))):
            raise ValueError("readout block must be contiguous and ascending")
        slot = self.n_bits
        self.rows.append((OP_READOUT, qubits[0], slot, len(qubits)))
        self.n_bits += len(qubits)
        return slot

    def build(self, name: str) -> Program:
        ops = np.array(self.rows, dtype=np.int64).reshape(-1, 4)
        kinds = [LOC_TWO if loc.kind == "gate2" else LOC_ONE for loc in self.locations]
        one = np.array([i for i, k in enumerate(kinds) if k == LOC_ONE], dtype=np.int64)
        two = np.array([i for i, k in enumerate(kinds) if k == LOC_TWO], dtype=np.int64)
        return Program(name, self.n_qubits, ops, self.n_bits, list(self.locations), one, two, self._corr)


# -------------------------------------------------------------- fault streams


class FaultStream:
    """Per-trial source of faults for successive program runs.

    Wraps a :class:`~steanesim.streams.KernelRandom` (built from a seed or a
    numpy ``Generator`` when needed) plus the sampler's gap counters.  ``script``
    maps a global location number (counted across every program the trial
    runs) to a forced Pauli code, overriding sampling at that location.
    """

    def __init__(self, params: NoiseParams, rng=None,
                 script: dict[int, int] | None = None, audit: bool = False):
        self.params = params
        self.rng = as_kernel_random(rng)
        self.state = np.zeros(3, dtype=np.int64)
        _faults.init_sampler(self.state, params.epsilon, params.gamma, self.rng.state)
        script = script or {}
        order = sorted(script)
        self.script_pos = np.array(order, dtype=np.int64)
        self.script_code = np.array([script[k] for k in order], dtype=np.int64)
        self.audit: list | None = [] if audit else None
        self._codes = np.zeros(256, dtype=np.int64)

    @property
    def locations_seen(self) -> int:
        return int(self.state[2])

    def sample(self, program: Program) -> tuple[np.ndarray, int]:
        n = program.n_locations
        if n > self._codes.shape[0]:
            self._codes = np.zeros(n, dtype=np.int64)
        base = int(self.state[2])
        nf = _faults.sample_program(program.loc_one, program.loc_two, n, self.params.epsilon,
                                    self.params.gamma, self.state, self.rng.state, self.script_pos,
                                    self.script_code, self._codes)
        codes = self._codes[:n].copy()
        if self.audit is not None and nf:
            for i in np.flatnonzero(codes):
                loc = program.locations[i]
                self.audit.append((base + int(i), program.name, loc,
                                   code_to_pauli(int(codes[i]), len(loc.qubits))))
        return codes, int(np.count_nonzero(codes))


def run_noisy(circuit: ScheduledCircuit, params: NoiseParams, engine, rng, initial=None):
    """Execute a scheduled circuit with sampled faults.

    Returns ``(register, audit)`` where ``audit`` lists every non-identity
    fault as ``(location number, program name, FaultLocation, PauliString)``.
    """
    program = ProgramBuilder(circuit.n_qubits, params.include_idle_memory).circuit(circuit).build("run_noisy")
    stream = rng if isinstance(rng, FaultStream) else FaultStream(params, rng, audit=True)
    if stream.audit is None:
        stream.audit = []
    start = len(stream.audit)
    reg = initial if initial is not None else engine.zero(circuit.n_qubits)
    codes, nf = stream.sample(program)
    reg, _ = engine.run(reg, program, codes, nf)
    return reg, stream.audit[start:]
