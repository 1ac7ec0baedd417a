"""The [[7,1,3]] code: Hamming tables, encoder, logical states, syndromes.

Words are 7-bit integers with bit ``k`` for qubit ``k`` (0-indexed), matching
the little-endian state-vector layout.  Printed words such as ``"1010101"``
list qubit 0 first; :func:`word` converts.  Tables and docs number qubits
1..7, code uses 0..6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .pauli import PauliString
from .statevec import Gate, StateVector

N = 7
ALL_ONES = (1 << N) - 1


def word(bits: str) -> int:
    """``"1010101"`` -> integer word, first character is qubit 0."""
    if len(bits) != N or set(bits) - {"0", "1"}:
        raise ValueError(f"expected 7 binary digits, got {bits!r}")
    return sum(1 << k for k, ch in enumerate(bits) if ch == "1")


def word_str(w: int) -> str:
    return "".join(str((w >> k) & 1) for k in range(N))


def _weight(w: int) -> int:
    return bin(w).count("1")


class Syndrome(int):
    """Three parity-check bits packed as ``4*s1 + 2*s2 + s3``.

    ``s1`` comes from row r1 = 0001111, so the value of a single-bit error's
    syndrome is its 1-based position.
    """

    def __new__(cls, value: int = 0):
        if not 0 <= int(value) <= 7:
            raise ValueError(f"syndrome value {value} outside 0..7")
        return super().__new__(cls, int(value))

    @classmethod
    def from_bits(cls, s1: int, s2: int, s3: int) -> Syndrome:
        return cls(4 * s1 + 2 * s2 + s3)

    @property
    def bits(self) -> tuple[int, int, int]:
        return (self >> 2) & 1, (self >> 1) & 1, self & 1

    def __repr__(self):
        return "Syndrome({}{}{})".format(*self.bits)


@dataclass(frozen=True)
class CodeTables:
    parity_check: np.ndarray  # 3 x 7, column j (1-based) is binary j
    dual_codewords: tuple[int, ...]  # C-perp, 8 words
    code_codewords: tuple[int, ...]  # Hamming C, 16 words
    logical_x: PauliString
    logical_z: PauliString

    @cached_property
    def dual_set(self) -> frozenset[int]:
        return frozenset(self.dual_codewords)

    @cached_property
    def code_set(self) -> frozenset[int]:
        return frozenset(self.code_codewords)

    @cached_property
    def syndrome_table(self) -> np.ndarray:
        """Syndrome value of every 7-bit word, indexable by the word."""
        return np.array([_syndrome_value(w) for w in range(1 << N)], dtype=np.int64)

    @cached_property
    def reduced_weight_table(self) -> np.ndarray:
        """Minimum weight over the coset ``w + C-perp`` for every word."""
        return np.array([min(_weight(w ^ c) for c in self.dual_codewords)
                         for w in range(1 << N)], dtype=np.int64)

    def syndrome_of(self, w: int) -> int:
        return int(self.syndrome_table[w])

    def reduced_weight(self, w: int) -> int:
        return int(self.reduced_weight_table[w])


def _syndrome_value(w: int) -> int:
    s = 0
    for k in range(N):
        if (w >> k) & 1:
            s ^= k + 1
    return s


def _build_tables() -> CodeTables:
    h = np.array([[((j + 1) >> (2 - r)) & 1 for j in range(N)] for r in range(3)], dtype=np.uint8)
    rows = [sum(int(h[r, k]) << k for k in range(N)) for r in range(3)]
    dual = sorted({(rows[0] if m & 4 else 0) ^ (rows[1] if m & 2 else 0) ^ (rows[2] if m & 1 else 0)
                   for m in range(8)})
    code = sorted(w for w in range(1 << N) if _syndrome_value(w) == 0)
    return CodeTables(
        parity_check=h,
        dual_codewords=tuple(dual),
        code_codewords=tuple(code),
        logical_x=PauliString(N, ALL_ONES, 0),
        logical_z=PauliString(N, 0, ALL_ONES),
    )


TABLES = _build_tables()


def code_tables() -> CodeTables:
    return TABLES


def hamming_syndrome(w: int | str | np.ndarray) -> Syndrome:
    """``H . w`` over GF(2) for a word given as int, bit string or 0/1 vector."""
    if isinstance(w, str):
        w = word(w)
    elif isinstance(w, np.ndarray):
        if w.shape != (N,):
            raise ValueError("word vector must have 7 entries")
        s = (TABLES.parity_check.astype(np.int64) @ (w.astype(np.int64) & 1)) & 1
        return Syndrome.from_bits(*(int(b) for b in s))
    if not 0 <= w <= ALL_ONES:
        raise ValueError(f"word {w} is not 7 bits")
    return Syndrome(_syndrome_value(w))


def correction_from_syndrome(s: int) -> int:
    """0 for "no correction", otherwise the 1-based qubit to flip."""
    return int(Syndrome(s))


# H on the three information positions, then each of them copies itself onto
# the rest of its generator row, the three fan-outs interleaved.  The order
# inside each fan-out decides which weight-2 bit-flip patterns a single CNOT
# fault can leave behind; see networks.CHECK_QUBITS for the matching
# verification.
ENCODER_HADAMARDS = (0, 1, 3)
ENCODER_CNOTS = (
    (0, 2), (1, 2), (3, 5),
    (0, 4), (1, 5), (3, 6),
    (0, 6), (1, 6), (3, 4),
)


def logical_zero_circuit(offset: int = 0) -> list[Gate]:
    """Encoder taking ``|0000000>`` to ``|0_L>`` on qubits ``offset..offset+6``."""
    gates = [Gate("H", (offset + q,)) for q in ENCODER_HADAMARDS]
    gates += [Gate("CNOT", (offset + c, offset + t)) for c, t in ENCODER_CNOTS]
    return gates


def logical_state(a: complex = 1.0, b: complex = 0.0) -> StateVector:
    """``a|0_L> + b|1_L>`` written down directly from the codeword lists."""
    norm = abs(a) ** 2 + abs(b) ** 2
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"coefficients not normalised: |a|^2+|b|^2 = {norm}")
    amps = np.zeros(1 << N, dtype=np.complex128)
    amp = 1.0 / math.sqrt(len(TABLES.dual_codewords))
    for c in TABLES.dual_codewords:
        amps[c] += a * amp
        amps[c ^ ALL_ONES] += b * amp
    return StateVector(N, amps)


def plus_logical() -> StateVector:
    """``(|0_L> + |1_L>)/sqrt(2)``, the ancilla |a> and the channel test state."""
    r = 1.0 / math.sqrt(2.0)
    return logical_state(r, r)


def transversal(kind: str, first: range | list[int], second: range | list[int] | None = None) -> list[Gate]:
    """Seven same-kind gates, qubit ``i`` of one block to qubit ``i`` of the other."""
    first = list(first)
    if len(first) != N:
        raise ValueError("transversal gates need a 7-qubit block")
    if kind == "CNOT":
        if second is None or len(second) != N:
            raise ValueError("transversal CNOT needs two aligned 7-qubit blocks")
        second = list(second)
        if set(first) & set(second):
            raise ValueError("control and target blocks overlap")
        return [Gate("CNOT", (c, t)) for c, t in zip(first, second)]
    if second is not None:
        raise ValueError(f"{kind} acts on a single block")
    return [Gate(kind, (q,)) for q in first]
