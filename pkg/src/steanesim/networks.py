"""Every fixed network of the protocol, compiled once per noise convention.

Register layouts
----------------
ancilla factory   qubits 0..6 ancilla block, qubit 7 verification (flag) qubit
extraction        qubits 0..6 data block, qubits 7..13 ancilla block
data only         qubits 0..6
naked             qubit 0
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .noise import Program, ProgramBuilder, schedule_asap
from .statevec import Gate
from .steane import N, logical_zero_circuit, transversal

DATA = range(0, N)
ANCILLA = range(N, 2 * N)
FLAG = N

# Weight-3 logical-Z support read out in the second verification pass.  Every
# single fault of the encoder that leaves two bit flips behind hits this set
# an odd number of times (checked exhaustively in the tests).
CHECK_QUBITS = (2, 3, 6)

# Order of the first (all-qubit) parity pass.  A bit flip landing on a qubit
# after its last CNOT into the flag goes unseen, so the qubits that the second
# pass covers again go first and the rest as late as possible.
PARITY_ORDER = (2, 3, 6, 0, 1, 4, 5)

# program ids inside the packed table handed to the trial kernels
P_PREP = 0
P_PREP_RAW = 1
P_AXH = 2
P_EXZ = 3
P_EXX = 4
P_MEM7 = 5
P_MEM1 = 6
P_CORZ = 7   # + position - 1
P_CORX = 14  # + position - 1
N_PROGRAMS = 21


def verification_gates() -> tuple[list[Gate], list[Gate]]:
    """Parity of all seven qubits, then parity of :data:`CHECK_QUBITS`, both into the flag."""
    parity = [Gate("CNOT", (q, FLAG)) for q in PARITY_ORDER]
    check = [Gate("CNOT", (q, FLAG)) for q in CHECK_QUBITS]
    return parity, check


def build_prep(include_idle: bool) -> Program:
    b = ProgramBuilder(N + 1, include_idle)
    parity, check = verification_gates()
    b.circuit(schedule_asap(logical_zero_circuit() + parity, N + 1))
    b.measure(FLAG)
    b.reset(FLAG)
    b.circuit(schedule_asap(check, N + 1))
    b.measure(FLAG)
    b.reset(FLAG)
    return b.build("prep_verified")


def build_prep_raw(include_idle: bool) -> Program:
    return ProgramBuilder(N, include_idle).gates(logical_zero_circuit()).build("prep_unverified")


def build_ancilla_hadamard(include_idle: bool) -> Program:
    return ProgramBuilder(N, include_idle).gates(transversal("H", range(N))).build("ancilla_hadamard")


def build_extract(kind: str, include_idle: bool) -> Program:
    """Z extraction: ancilla |0_L> controls the data, then H on the ancilla.
    X extraction: data controls the |+_L> ancilla.  Both end by reading and
    resetting the ancilla block."""
    b = ProgramBuilder(2 * N, include_idle)
    if kind == "Z":
        b.gates(transversal("CNOT", ANCILLA, DATA))
        b.gates(transversal("H", ANCILLA))
    else:
        b.gates(transversal("CNOT", DATA, ANCILLA))
    b.readout(ANCILLA)
    return b.build(f"extract_{kind.lower()}")


def build_correction(letter: str, position: int, include_idle: bool) -> Program:
    return ProgramBuilder(N, include_idle).correction(letter, position - 1, DATA).build(
        f"correct_{letter.lower()}{position}")


def build_memory(n: int) -> Program:
    # channel memory noise applies regardless of the in-network idle flag
    return ProgramBuilder(n, True).memory(range(n)).build(f"memory{n}")


@lru_cache(maxsize=None)
def programs(include_idle: bool = True) -> tuple[Program, ...]:
    progs = [
        build_prep(include_idle),
        build_prep_raw(include_idle),
        build_ancilla_hadamard(include_idle),
        build_extract("Z", include_idle),
        build_extract("X", include_idle),
        build_memory(N),
        build_memory(1),
    ]
    progs += [build_correction("Z", p, include_idle) for p in range(1, N + 1)]
    progs += [build_correction("X", p, include_idle) for p in range(1, N + 1)]
    assert len(progs) == N_PROGRAMS
    return tuple(progs)


def _concat(arrays):
    off = np.zeros(len(arrays) + 1, dtype=np.int64)
    off[1:] = np.cumsum([len(a) for a in arrays])
    flat = np.concatenate(arrays).astype(np.int64) if arrays else np.zeros(0, np.int64)
    return flat, off


@lru_cache(maxsize=None)
def pack(include_idle: bool = True) -> tuple:
    """Flat arrays of all programs for the numba trial loops."""
    progs = programs(include_idle)
    op_off = np.zeros(len(progs) + 1, dtype=np.int64)
    op_off[1:] = np.cumsum([p.ops.shape[0] for p in progs])
    ops = np.ascontiguousarray(np.concatenate([p.ops for p in progs]), dtype=np.int64)
    one, one_off = _concat([p.loc_one for p in progs])
    two, two_off = _concat([p.loc_two for p in progs])
    nloc = np.array([p.n_locations for p in progs], dtype=np.int64)
    has_corr = np.array([p.has_corr for p in progs], dtype=np.bool_)
    nbits = np.array([p.n_bits for p in progs], dtype=np.int64)
    return ops, op_off, one, one_off, two, two_off, nloc, has_corr, nbits


def max_locations(include_idle: bool = True) -> int:
    return max(p.n_locations for p in programs(include_idle))
