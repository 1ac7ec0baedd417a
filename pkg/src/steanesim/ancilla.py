"""Verified |0_L> factory and the two ancilla-quality estimators.

An attempt runs the encoder on the seven ancilla qubits and then reads two
parities into the eighth (flag) qubit: first the parity of all seven qubits,
which rejects any single bit flip, then the parity of a weight-3 support of
logical Z that catches the two-bit-flip patterns a single encoder fault can
leave.  Rejected attempts are thrown away and rebuilt with fresh noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import networks as nw
from .engines import PauliFrameEngine, make_engine
from .kernels import trials as _trials
from .noise import FaultStream, NoiseParams
from .steane import TABLES
from .streams import FAULTS, MEASUREMENTS, block_rng, trial_blocks

RETRY_CAP = 100


class FactoryStarvation(RuntimeError):
    """No ancilla passed verification within the retry cap."""


@dataclass
class AncillaOutcome:
    accepted: bool
    residual: object  # PauliString (frame engine) or StateVector on the 7 ancilla qubits
    n_retries: int


def _stream(params, rng) -> FaultStream:
    return rng if isinstance(rng, FaultStream) else FaultStream(params, rng)


def attempt_preparation(params: NoiseParams, engine, rng, verify: bool = True):
    """One pass through the factory: ``(accepted, 7-qubit register, flag bits)``."""
    engine = make_engine(engine)
    stream = _stream(params, rng)
    progs = nw.programs(params.include_idle_memory)
    prog = progs[nw.P_PREP] if verify else progs[nw.P_PREP_RAW]
    codes, nf = stream.sample(prog)
    reg, bits = engine.run(engine.zero(prog.n_qubits), prog, codes, nf)
    if verify:
        accepted = not bits.any()
        reg = engine.drop_high(reg, nw.N)
    else:
        accepted = True
    return accepted, reg, bits


def prepare_verified(params: NoiseParams, kind: str, engine, rng, verify: bool = True,
                     retry_cap: int = RETRY_CAP) -> AncillaOutcome:
    """Build an accepted ancilla of ``kind`` ``'a_z'`` (|0_L>) or ``'a_x'`` (|+_L>).

    For ``'a_x'`` the accepted |0_L> gets a noisy transversal Hadamard.
    """
    if kind not in ("a_z", "a_x"):
        raise ValueError(f"kind must be 'a_z' or 'a_x', got {kind!r}")
    engine = make_engine(engine)
    stream = _stream(params, rng)
    for attempt in range(retry_cap):
        accepted, reg, _ = attempt_preparation(params, engine, stream, verify)
        if accepted:
            break
    else:
        raise FactoryStarvation(f"no ancilla accepted in {retry_cap} attempts at {params}")
    if kind == "a_x":
        prog = nw.programs(params.include_idle_memory)[nw.P_AXH]
        codes, nf = stream.sample(prog)
        reg, _ = engine.run(reg, prog, codes, nf)
    return AncillaOutcome(True, reg, attempt)


@dataclass
class AncillaStats:
    trials: int
    attempts: int
    fidelity: float
    fidelity_stderr: float
    p_two_bitflip: float
    p_stderr: float

    @property
    def accept_rate(self) -> float:
        return self.trials / self.attempts if self.attempts else float("nan")


def _mean_stderr(total: float, total_sq: float, n: int) -> tuple[float, float]:
    mean = total / n
    var = max(total_sq / n - mean * mean, 0.0)
    return mean, math.sqrt(var / n)


def ancilla_statistics(params: NoiseParams, trials: int, seed: int = 0, engine="pauli_frame",
                       verify: bool = True, kind: str = "a_z",
                       retry_cap: int = RETRY_CAP) -> AncillaStats:
    """Monte Carlo over ``trials`` accepted ancillas: fidelity and two-bit-flip rate.

    Trials draw their faults block by block from ``block_rng(seed, block)``
    whichever engine runs them, so both engines see identical fault sequences.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    reference = "zero_L" if kind == "a_z" else "plus_L"
    f_sum = f_sq = 0.0
    p_hits = 0
    attempts = 0
    frame = isinstance(engine, PauliFrameEngine) or engine in ("pauli_frame", "pauli-frame", "frame")
    if frame:
        ok, x, z, n = frame_ancilla_outcomes(params, trials, seed, verify, kind, retry_cap)
        if not ok.all():
            raise FactoryStarvation(f"trial {int(np.argmin(ok))}: no ancilla accepted in {retry_cap} attempts")
        attempts = int(n.sum())
        clean = (_trials.SYND[x] == 0) & (_trials.SYND[z] == 0)
        f = (clean & _trials.IN_DUAL[x if kind == "a_z" else z]).astype(float)
        f_sum, f_sq = float(f.sum()), float((f * f).sum())
        if kind == "a_z":
            p_hits = int((_trials.XRED_WEIGHT[x] >= 2).sum())
    else:
        for block, lo, hi in trial_blocks(trials):
            eng = make_engine(engine, block_rng(seed, block, MEASUREMENTS))
            gen = block_rng(seed, block, FAULTS)
            for _ in range(lo, hi):
                out = prepare_verified(params, kind, eng, FaultStream(params, gen), verify, retry_cap)
                attempts += out.n_retries + 1
                f = eng.fidelity(out.residual, reference)
                f_sum += f
                f_sq += f * f
                if kind == "a_z" and TABLES.reduced_weight(_support_word(out.residual)) >= 2:
                    p_hits += 1
    f, fse = _mean_stderr(f_sum, f_sq, trials)
    p = p_hits / trials
    return AncillaStats(trials, attempts, f, fse, p, math.sqrt(p * (1 - p) / trials))


def frame_ancilla_outcomes(params: NoiseParams, trials: int, seed: int = 0, verify: bool = True,
                           kind: str = "a_z", retry_cap: int = RETRY_CAP):
    """Per-trial factory outcomes on the compiled frame path.

    Returns arrays ``(accepted, x, z, attempts)``; ``x``/``z`` are the 7-bit
    residual error words of each accepted ancilla.
    """
    pk = nw.pack(params.include_idle_memory)
    scratch = _trials.Scratch(nw.max_locations(params.include_idle_memory))
    ok = np.zeros(trials, dtype=np.bool_)
    x = np.zeros(trials, dtype=np.int64)
    z = np.zeros(trials, dtype=np.int64)
    n = np.zeros(trials, dtype=np.int64)
    for block, lo, hi in trial_blocks(trials):
        _trials.ancilla_batch(pk, kind == "a_x", verify, params.epsilon, params.gamma,
                              block_rng(seed, block, FAULTS).state, retry_cap, *scratch.args(),
                              ok[lo:hi], x[lo:hi], z[lo:hi], n[lo:hi])
    return ok, x, z, n


def _support_word(state) -> int:
    """A basis word in the support of ``state``; for ``P|0_L>`` it lies in
    ``x + C-perp`` where ``x`` is the bit-flip part of ``P``."""
    return int(np.argmax(np.abs(state.amplitudes)))


def estimate_fidelity(params: NoiseParams, with_verification: bool, trials: int, seed: int = 0,
                      engine="pauli_frame", kind: str = "a_z") -> tuple[float, float]:
    """Mean ``|<a|a_err>|^2`` over accepted ancillas and its standard error."""
    s = ancilla_statistics(params, trials, seed, engine, with_verification, kind)
    return s.fidelity, s.fidelity_stderr


def estimate_p_two_bitflip(params: NoiseParams, trials: int, seed: int = 0, engine="pauli_frame",
                           with_verification: bool = True) -> tuple[float, float]:
    """Fraction of accepted |0_L> ancillas whose bit-flip content has weight >= 2
    after reduction by the X stabilizers, with its binomial standard error."""
    s = ancilla_statistics(params, trials, seed, engine, with_verification, "a_z")
    return s.p_two_bitflip, s.p_stderr
