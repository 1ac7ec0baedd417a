"""Memory-channel experiments: naked vs encoded qubit fidelity over time.

A trial starts from an error-free test state, lets it idle for ``t_max``
steps under one-qubit depolarizing noise and records its fidelity after every
step.  The naked test state is (|0> + |1>)/sqrt(2).  The encoded one is
(|0_L> + |1_L>)/sqrt(2), optionally corrected every ``period`` steps.  Both
test states are fixed by their own X, so only phase-type damage counts.

By default memory noise is charged only in the channel's own time steps:
``include_idle_memory`` is off here, unlike :class:`NoiseParams`, so idle
qubits inside the correction networks stay clean.  Turning it on adds about
21 exposed idle slots per verified ancilla and, at small epsilon, enough
extra logical failures to hide the crossover with the naked qubit.

Trials run in compiled loops (:mod:`steanesim.kernels.trials` for Pauli
frames, :mod:`steanesim.kernels.svtrials` for amplitudes); ``reference=True``
sends them through the readable Python protocol instead.  All paths consume
the per-block random streams identically.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import networks as nw
from .ancilla import RETRY_CAP, FactoryStarvation
from .engines import make_engine, reference_state
from .kernels import svtrials as _svtrials
from .kernels import trials as _trials
from .noise import FaultStream, NoiseParams
from .recovery import correct_round
from .streams import FAULTS, MEASUREMENTS, block_rng, trial_blocks

MODES = ("naked", "encoded_corrected", "encoded_uncorrected")
_MODE_CODE = {"naked": _trials.NAKED, "encoded_corrected": _trials.ENCODED,
              "encoded_uncorrected": _trials.ENCODED_NOCORRECT}
ENGINES = ("pauli_frame", "statevector")

def default_threads() -> int:
    """Worker threads: ``QSIM_THREADS`` if set, else the CPU count."""
    raw = os.environ.get("QSIM_THREADS")
    if raw is None or raw == "":
        return os.cpu_count() or 1
    n = int(raw)
    if n < 1:
        raise ValueError(f"QSIM_THREADS must be a positive integer, got {raw!r}")
    return n


@dataclass(frozen=True)
class ChannelConfig:
    epsilon: float
    gamma: float = 0.0
    t_max: int = 1000
    period: int = 1
    trials: int = 1000
    mode: str = "naked"
    engine: str = "pauli_frame"
    seed: int = 0
    include_idle_memory: bool = False
    retry_cap: int = RETRY_CAP

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        engine = "pauli_frame" if self.engine == "pauli-frame" else self.engine
        if engine not in ENGINES:
            raise ValueError(f"engine must be one of {ENGINES}, got {self.engine!r}")
        object.__setattr__(self, "engine", engine)
        if self.period < 1 or self.t_max < 1 or self.trials < 1:
            raise ValueError("period, t_max and trials must all be >= 1")
        NoiseParams(self.epsilon, self.gamma)  # range checks

    @property
    def params(self) -> NoiseParams:
        return NoiseParams(self.epsilon, self.gamma, self.include_idle_memory)


@dataclass(frozen=True)
class CurvePoint:
    t: int
    fidelity: float
    stderr: float
    n_trials: int


@dataclass
class ChannelResult:
    config: ChannelConfig
    points: list[CurvePoint]
    n_starved: int = 0  # trials dropped because an ancilla factory hit its retry cap


def _python_trial(config: ChannelConfig, gen, engine, fid: np.ndarray) -> bool:
    params = config.params
    stream = FaultStream(params, gen)
    progs = nw.programs(params.include_idle_memory)
    if config.mode == "naked":
        reference, prog = "plus", progs[nw.P_MEM1]
    else:
        reference, prog = "plus_L", progs[nw.P_MEM7]
    reg = engine.prepare(reference)
    fid[0] = engine.fidelity(reg, reference)
    for t in range(1, config.t_max + 1):
        codes, nf = stream.sample(prog)
        reg, _ = engine.run(reg, prog, codes, nf)
        if config.mode == "encoded_corrected" and t % config.period == 0:
            try:
                reg, _ = correct_round(reg, params, engine, stream, config.retry_cap)
            except FactoryStarvation:
                return False
        fid[t] = engine.fidelity(reg, reference)
    return True


def _run_block(config: ChannelConfig, block: int, n_trials: int, reference: bool):
    n_t = config.t_max + 1
    total = np.zeros(n_t)
    total_sq = np.zeros(n_t)
    fid = np.zeros(n_t)
    gen = block_rng(config.seed, block, FAULTS)
    mgen = block_rng(config.seed, block, MEASUREMENTS)
    mode = _MODE_CODE[config.mode]
    if reference:
        engine = make_engine(config.engine, mgen)
        kept = 0
        for _ in range(n_trials):
            if _python_trial(config, gen, engine, fid):
                kept += 1
                total += fid
                total_sq += fid * fid
    elif config.engine == "pauli_frame":
        pk = nw.pack(config.include_idle_memory)
        scratch = _trials.Scratch(nw.max_locations(config.include_idle_memory))
        kept = _trials.channel_batch(pk, mode, config.epsilon, config.gamma, config.t_max, config.period,
                                     gen.state, config.retry_cap, n_trials, *scratch.args(), fid, total, total_sq)
    else:
        pk = nw.pack(config.include_idle_memory)
        buf = _svtrials.Buffers(nw.max_locations(config.include_idle_memory))
        ref = reference_state("plus" if config.mode == "naked" else "plus_L").amplitudes
        kept = _svtrials.channel_batch(pk, mode, config.epsilon, config.gamma, config.t_max, config.period,
                                       gen.state, mgen.state, config.retry_cap, ref, n_trials, *buf.args(), fid,
                                       total, total_sq)
    return int(kept), total, total_sq


def run_channel(config: ChannelConfig, threads: int | None = None, reference: bool = False) -> ChannelResult:
    """Monte Carlo fidelity curve at every step ``t = 0..t_max``.

    ``reference=True`` runs the readable Python protocol instead of the
    compiled trial loops; it exists to cross-check them.
    """
    threads = default_threads() if threads is None else threads
    blocks = trial_blocks(config.trials)
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda b: _run_block(config, b[0], b[2] - b[1], reference), blocks))
    else:
        parts = [_run_block(config, b, hi - lo, reference) for b, lo, hi in blocks]
    n_t = config.t_max + 1
    total = np.zeros(n_t)
    total_sq = np.zeros(n_t)
    kept = 0
    for k, s, s2 in parts:  # block order, independent of scheduling
        kept += k
        total += s
        total_sq += s2
    points = []
    for t in range(n_t):
        if kept:
            mean = total[t] / kept
            var = max(total_sq[t] / kept - mean * mean, 0.0)
            points.append(CurvePoint(t, float(mean), math.sqrt(var / kept), kept))
        else:
            points.append(CurvePoint(t, math.nan, math.nan, 0))
    return ChannelResult(config, points, config.trials - kept)


def run_naked(config: ChannelConfig) -> list[CurvePoint]:
    if config.mode != "naked":
        raise ValueError("run_naked needs mode='naked'")
    return run_channel(config).points


def run_encoded(config: ChannelConfig) -> list[CurvePoint]:
    if config.mode == "naked":
        raise ValueError("run_encoded needs an encoded mode")
    return run_channel(config).points


def naked_fidelity_closed_form(epsilon: float, t: int) -> tuple[float, float]:
    """``(estimate, exact)`` naked-qubit fidelity after ``t`` steps.

    Each step flips the phase with probability ``2*epsilon/3`` (Y or Z), so
    the fidelity is the probability of an even number of flips,
    ``(1 + (1 - 4*epsilon/3)**t) / 2``.  The estimate ``(1 - 2*epsilon/3)**t``
    is the probability of no flip at all and never exceeds it.
    """
    estimate = (1.0 - 2.0 * epsilon / 3.0) ** t
    exact = 0.5 * (1.0 + (1.0 - 4.0 * epsilon / 3.0) ** t)
    return estimate, exact


def find_critical_time(naked: list[CurvePoint], encoded: list[CurvePoint], window: int = 5) -> int | None:
    """First step at which the encoded curve overtakes the naked one for good.

    Returns the smallest ``t`` such that the difference ``encoded - naked``
    was <= 0 at some earlier epoch and exceeds the joint standard error
    ``sqrt(se_e**2 + se_n**2)`` at ``t`` and the ``window - 1`` epochs after it.
    ``None`` if no such ``t`` exists.
    """
    if [p.t for p in naked] != [p.t for p in encoded]:
        raise ValueError("curves must share the same epoch grid")
    seen_nonpositive = False
    run = 0
    for k, (n, e) in enumerate(zip(naked, encoded)):
        diff = e.fidelity - n.fidelity
        joint = math.hypot(e.stderr, n.stderr)
        if seen_nonpositive and diff > joint:
            run += 1
            if run == window:
                return encoded[k - window + 1].t
        else:
            run = 0
        if diff <= 0:
            seen_nonpositive = True
    return None
