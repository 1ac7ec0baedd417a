"""One fault-tolerant correction round on a 7-qubit data block.

Phase errors are read first with a fresh verified |0_L> per repetition
(ancilla controls the data, then a transversal Hadamard turns the copied
phase errors into bit flips); bit flips are read second with a fresh |+_L>
that the data controls.  Each syndrome is taken three times and voted on,
and the voted correction is applied as a noisy single-qubit gate.

This module is the readable reference.  ``kernels.trials`` runs the same
sequence on Pauli frames with the same fault-stream consumption.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import networks as nw
from .ancilla import RETRY_CAP, _stream, prepare_verified
from .engines import make_engine
from .noise import NoiseParams
from .steane import Syndrome, correction_from_syndrome, hamming_syndrome

REPETITIONS = 3


@dataclass
class RecoveryReport:
    z_syndromes: list[Syndrome] = field(default_factory=list)
    x_syndromes: list[Syndrome] = field(default_factory=list)
    voted_z: Syndrome = Syndrome(0)
    voted_x: Syndrome = Syndrome(0)
    # (letter, 1-based position) of every correction gate applied
    corrections_applied: list[tuple[str, int]] = field(default_factory=list)
    ancilla_retries: int = 0


def _extract(kind: str, data, params: NoiseParams, engine, stream, retry_cap: int):
    if data.n_qubits != nw.N:
        raise ValueError(f"data register must hold {nw.N} qubits, got {data.n_qubits}")
    out = prepare_verified(params, "a_z" if kind == "Z" else "a_x", engine, stream, True, retry_cap)
    prog = nw.programs(params.include_idle_memory)[nw.P_EXZ if kind == "Z" else nw.P_EXX]
    codes, nf = stream.sample(prog)
    reg, bits = engine.run(engine.tensor(data, out.residual), prog, codes, nf)
    word = sum(int(b) << i for i, b in enumerate(bits))
    return engine.drop_high(reg, nw.N), hamming_syndrome(word), out.n_retries


def extract_z_syndrome(data, params: NoiseParams, engine, rng, retry_cap: int = RETRY_CAP):
    """Phase-error syndrome of ``data``; returns ``(data, Syndrome)``.

    The state-vector engine updates ``data`` in place, the frame engine
    returns a new frame, so always use the returned register.
    """
    data, s, _ = _extract("Z", data, params, make_engine(engine), _stream(params, rng), retry_cap)
    return data, s


def extract_x_syndrome(data, params: NoiseParams, engine, rng, retry_cap: int = RETRY_CAP):
    """Bit-flip syndrome of ``data``; returns ``(data, Syndrome)``."""
    data, s, _ = _extract("X", data, params, make_engine(engine), _stream(params, rng), retry_cap)
    return data, s


def vote(s1: int, s2: int, s3: int) -> Syndrome:
    """Most frequent of three syndromes; bitwise majority if all differ."""
    if s1 == s2 or s1 == s3:
        return Syndrome(s1)
    if s2 == s3:
        return Syndrome(s2)
    return Syndrome((s1 & s2) | (s1 & s3) | (s2 & s3))


def correct_round(data, params: NoiseParams, engine, rng, retry_cap: int = RETRY_CAP):
    """Full round: three phase-syndrome reads, vote, Z fix; then the same for
    bit flips.  Returns ``(data, RecoveryReport)``.

    Raises ``FactoryStarvation`` if any ancilla exhausts the retry cap.
    """
    engine = make_engine(engine)
    stream = _stream(params, rng)
    progs = nw.programs(params.include_idle_memory)
    report = RecoveryReport()
    for kind, found, first in (("Z", report.z_syndromes, nw.P_CORZ), ("X", report.x_syndromes, nw.P_CORX)):
        for _ in range(REPETITIONS):
            data, s, retries = _extract(kind, data, params, engine, stream, retry_cap)
            found.append(s)
            report.ancilla_retries += retries
        voted = vote(*found)
        if kind == "Z":
            report.voted_z = voted
        else:
            report.voted_x = voted
        pos = correction_from_syndrome(voted)
        if pos:
            prog = progs[first + pos - 1]
            codes, nf = stream.sample(prog)
            data, _ = engine.run(data, prog, codes, nf)
            report.corrections_applied.append((kind, pos))
    return data, report
