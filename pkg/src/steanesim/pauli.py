"""Pauli strings and the Pauli-frame view of noisy Clifford circuits.

A noisy run of a Clifford network equals the ideal run followed by one
residual Pauli operator.  ``PauliFrame`` tracks that residual by conjugating
injected faults through the gates, which costs a few bit operations per gate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

_LETTERS = "IXZY"  # index = x_bit + 2 * z_bit


def _popcount(v: int) -> int:
    return bin(v).count("1")


@dataclass(frozen=True)
class PauliString:
    """Tensor product of single-qubit Paulis stored as two bit masks.

    Qubit ``k`` carries X iff bit ``k`` of ``x_mask`` is set, Z iff bit ``k`` of
    ``z_mask`` is set, and Y iff both.  ``sign`` is the overall +/-1 of the
    Hermitian product convention (Y = iXZ on every qubit).
    """

    n_qubits: int
    x_mask: int = 0
    z_mask: int = 0
    sign: int = 1

    def __post_init__(self):
        limit = 1 << self.n_qubits
        if not (0 <= self.x_mask < limit and 0 <= self.z_mask < limit):
            raise ValueError("mask wider than the string")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @classmethod
    def identity(cls, n_qubits: int) -> PauliString:
        return cls(n_qubits)

    @classmethod
    def single(cls, n_qubits: int, qubit: int, letter: str) -> PauliString:
        if not 0 <= qubit < n_qubits:
            raise IndexError(f"qubit {qubit} outside 0..{n_qubits - 1}")
        x = letter in "XY"
        z = letter in "ZY"
        if letter not in "IXYZ":
            raise ValueError(f"unknown Pauli letter {letter!r}")
        return cls(n_qubits, int(x) << qubit, int(z) << qubit)

    @classmethod
    def from_label(cls, label: str) -> PauliString:
        """``'XIZ'`` puts X on qubit 0 and Z on qubit 2; a leading '-' flips the sign."""
        sign = 1
        if label.startswith("-"):
            sign, label = -1, label[1:]
        x = z = 0
        for k, ch in enumerate(label):
            if ch not in "IXYZ":
                raise ValueError(f"unknown Pauli letter {ch!r}")
            x |= int(ch in "XY") << k
            z |= int(ch in "ZY") << k
        return cls(len(label), x, z, sign)

    def letter(self, qubit: int) -> str:
        return _LETTERS[((self.x_mask >> qubit) & 1) + 2 * ((self.z_mask >> qubit) & 1)]

    @property
    def label(self) -> str:
        body = "".join(self.letter(k) for k in range(self.n_qubits))
        return ("-" if self.sign < 0 else "") + body

    def is_identity(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0

    @property
    def weight(self) -> int:
        return _popcount(self.x_mask | self.z_mask)

    def __mul__(self, other: PauliString) -> PauliString:
        """Operator product ``self @ other`` (apply ``other`` first)."""
        if other.n_qubits != self.n_qubits:
            raise ValueError("Pauli strings of different width")
        # write each factor as sign * i^{|x&z|} X^x Z^z; moving Z^z1 past X^x2
        # costs (-1)^{|z1 & x2|}
        phase = (_popcount(self.x_mask & self.z_mask) + _popcount(other.x_mask & other.z_mask)
                 + 2 * _popcount(self.z_mask & other.x_mask))
        x = self.x_mask ^ other.x_mask
        z = self.z_mask ^ other.z_mask
        phase -= _popcount(x & z)
        phase %= 4
        if phase % 2:
            raise AssertionError("product of Hermitian Paulis is Hermitian only if they commute")
        sign = self.sign * other.sign * (1 if phase == 0 else -1)
        return PauliString(self.n_qubits, x, z, sign)

    def commutes_with(self, other: PauliString) -> bool:
        return (_popcount(self.x_mask & other.z_mask) + _popcount(self.z_mask & other.x_mask)) % 2 == 0

    def restricted(self, qubits: range | list[int]) -> PauliString:
        """Sub-string on ``qubits`` (renumbered from 0); the sign is kept."""
        x = z = 0
        for k, q in enumerate(qubits):
            x |= ((self.x_mask >> q) & 1) << k
            z |= ((self.z_mask >> q) & 1) << k
        return PauliString(len(qubits), x, z, self.sign)


def _times(fault: PauliString, frame: PauliString) -> PauliString:
    """``fault @ frame`` keeping the Hermitian sign; anticommuting pairs pick
    up a factor i that has no meaning for a frame, so only the masks and the
    commuting-part sign are tracked."""
    if fault.commutes_with(frame):
        return fault * frame
    x = fault.x_mask ^ frame.x_mask
    z = fault.z_mask ^ frame.z_mask
    return PauliString(frame.n_qubits, x, z, fault.sign * frame.sign)


class ResidualClass(Enum):
    IDENTITY = "identity"
    STABILIZER = "stabilizer"
    LOGICAL_X = "logical_x"
    LOGICAL_Z = "logical_z"
    LOGICAL_Y = "logical_y"
    DETECTABLE = "detectable"


@dataclass
class PauliFrame:
    """Accumulated error of a register relative to its ideal evolution."""

    frame: PauliString
    history: list = field(default_factory=list)

    @classmethod
    def identity(cls, n_qubits: int) -> PauliFrame:
        return cls(PauliString(n_qubits))

    @property
    def n_qubits(self) -> int:
        return self.frame.n_qubits


def conjugate_through(frame: PauliFrame, gate) -> PauliFrame:
    """Return the frame ``U P U^dagger`` for the gate unitary ``U``."""
    p = frame.frame
    for q in gate.qubits:
        if not 0 <= q < p.n_qubits:
            raise IndexError(f"gate qubit {q} outside frame of width {p.n_qubits}")
    x, z, sign = p.x_mask, p.z_mask, p.sign
    if gate.kind == "H":
        q = gate.qubits[0]
        xb, zb = (x >> q) & 1, (z >> q) & 1
        if xb and zb:
            sign = -sign  # H Y H = -Y
        if xb != zb:
            x ^= 1 << q
            z ^= 1 << q
    elif gate.kind == "CNOT":
        c, t = gate.qubits
        xc, zc, xt, zt = (x >> c) & 1, (z >> c) & 1, (x >> t) & 1, (z >> t) & 1
        # sign flips for X_c Z_t components with x_c = z_t = 1 and x_t == z_c
        if xc and zt and (xt ^ zc ^ 1):
            sign = -sign
        if xc:
            x ^= 1 << t
        if zt:
            z ^= 1 << c
    elif gate.kind in ("X", "Y", "Z"):
        g = PauliString.single(p.n_qubits, gate.qubits[0], gate.kind)
        if not g.commutes_with(p):
            sign = -sign
    else:
        raise ValueError(f"unsupported gate {gate.kind}")
    return PauliFrame(PauliString(p.n_qubits, x, z, sign), frame.history)


def inject(frame: PauliFrame, fault: PauliString, where=None) -> PauliFrame:
    """Left-multiply a fault into the frame."""
    if fault.n_qubits != frame.n_qubits:
        raise ValueError("fault width does not match the frame")
    history = frame.history + [(where, fault)] if where is not None else frame.history
    return PauliFrame(_times(fault, frame.frame), history)


def measurement_flip(frame: PauliFrame, qubit: int) -> int:
    """1 when the frame flips a Z-basis readout of ``qubit``."""
    if not 0 <= qubit < frame.n_qubits:
        raise IndexError(f"qubit {qubit} outside frame")
    return (frame.frame.x_mask >> qubit) & 1


def residual_class(frame: PauliFrame | PauliString, tables) -> ResidualClass:
    """Classify a 7-qubit residual modulo the code's stabilizer group."""
    p = frame.frame if isinstance(frame, PauliFrame) else frame
    if p.n_qubits != 7:
        raise ValueError(f"residual must act on the 7 code qubits, got width {p.n_qubits}")
    if p.is_identity():
        return ResidualClass.IDENTITY
    if tables.syndrome_of(p.x_mask) or tables.syndrome_of(p.z_mask):
        return ResidualClass.DETECTABLE
    lx = p.x_mask not in tables.dual_set
    lz = p.z_mask not in tables.dual_set
    if lx and lz:
        return ResidualClass.LOGICAL_Y
    if lx:
        return ResidualClass.LOGICAL_X
    if lz:
        return ResidualClass.LOGICAL_Z
    return ResidualClass.STABILIZER
