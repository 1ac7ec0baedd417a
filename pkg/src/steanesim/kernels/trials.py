"""Monte Carlo trial loops of the Pauli-frame engine.

These mirror the reference protocol in ``ancilla``/``recovery``/``experiments``
step for step and consume the fault stream in exactly the same order, so a
trial seeded identically gives the same syndromes and fidelities on either
path.  Between channel steps the data frame is reduced modulo the operators
that fix the test state, which keeps it at zero most of the time and lets
fault-free programs be skipped outright.
"""

import numpy as np

from .._accel import jit
from ..networks import (
    P_AXH,
    P_CORX,
    P_CORZ,
    P_EXX,
    P_EXZ,
    P_MEM1,
    P_MEM7,
    P_PREP,
    P_PREP_RAW,
)
from ..steane import TABLES
from .faults import init_sampler, sample_program
from .frame import run_program

SYND = TABLES.syndrome_table.copy()
XRED_WEIGHT = TABLES.reduced_weight_table.copy()
IN_DUAL = np.array([w in TABLES.dual_set for w in range(128)], dtype=np.bool_)


def _canonical(group):
    table = np.zeros(128, dtype=np.int64)
    for w in range(128):
        table[w] = min((w ^ g for g in group), key=lambda v: (bin(v).count("1"), v))
    return table


# coset representatives of the frame on the data block with the test state
# (|0_L> + |1_L>)/sqrt(2): X parts modulo C (stabilizers and logical X), Z parts
# modulo C-perp
CANON_X = _canonical(TABLES.code_codewords)
CANON_Z = _canonical(TABLES.dual_codewords)

NAKED = 0
ENCODED = 1
ENCODED_NOCORRECT = 2


class Scratch:
    """Reusable buffers for one sequence of trials."""

    def __init__(self, max_locations: int, script=None):
        self.state = np.zeros(3, dtype=np.int64)
        self.codes = np.zeros(max(max_locations, 1), dtype=np.int64)
        self.bits = np.zeros(8, dtype=np.int64)
        script = script or {}
        order = sorted(script)
        self.script_pos = np.array(order, dtype=np.int64)
        self.script_code = np.array([script[k] for k in order], dtype=np.int64)

    def args(self):
        return self.state, self.script_pos, self.script_code, self.codes, self.bits


@jit
def frame_fidelity_code(x, z, reference):
    """0: |0_L>, 1: |+_L>, 2: single-qubit |+>.  Returns 1.0 or 0.0."""
    if reference == 2:
        return 1.0 if z == 0 else 0.0
    if SYND[x] != 0 or SYND[z] != 0:
        return 0.0
    if reference == 0:
        return 1.0 if IN_DUAL[x] else 0.0
    return 1.0 if IN_DUAL[z] else 0.0


@jit(inline=True)
def _step(pk, k, x, z, eps, gam, state, sp, sc, codes, bits, gen):
    ops, op_off, one, one_off, two, two_off, nloc, has_corr, nbits = pk
    nf = sample_program(one[one_off[k]:one_off[k + 1]], two[two_off[k]:two_off[k + 1]], nloc[k],
                        eps, gam, state, gen, sp, sc, codes)
    for i in range(nbits[k]):
        bits[i] = 0
    return run_program(ops, op_off[k], op_off[k + 1], codes, nf, has_corr[k], x, z, bits)


@jit
def _prepare(pk, kind_x, verify, eps, gam, state, sp, sc, codes, bits, gen, retry_cap):
    """Returns ``(ok, x, z, attempts)`` for the 7 ancilla qubits."""
    attempts = 0
    x = 0
    z = 0
    if verify:
        ok = False
        while attempts < retry_cap:
            attempts += 1
            x, z = _step(pk, P_PREP, 0, 0, eps, gam, state, sp, sc, codes, bits, gen)
            if bits[0] == 0 and bits[1] == 0:
                ok = True
                break
        if not ok:
            return False, 0, 0, attempts
        x &= 127
        z &= 127
    else:
        attempts = 1
        x, z = _step(pk, P_PREP_RAW, 0, 0, eps, gam, state, sp, sc, codes, bits, gen)
    if kind_x:
        x, z = _step(pk, P_AXH, x, z, eps, gam, state, sp, sc, codes, bits, gen)
    return True, x, z, attempts


@jit
def ancilla_trial(pk, kind_x, verify, eps, gam, gen, retry_cap, state, sp, sc, codes, bits):
    init_sampler(state, eps, gam, gen)
    return _prepare(pk, kind_x, verify, eps, gam, state, sp, sc, codes, bits, gen, retry_cap)


@jit
def vote(s1, s2, s3):
    if s1 == s2 or s1 == s3:
        return s1
    if s2 == s3:
        return s2
    return (s1 & s2) | (s1 & s3) | (s2 & s3)


@jit
def _extract(pk, is_z, x, z, eps, gam, state, sp, sc, codes, bits, gen, retry_cap):
    ok, xa, za, _ = _prepare(pk, not is_z, True, eps, gam, state, sp, sc, codes, bits, gen, retry_cap)
    if not ok:
        return False, x, z, 0
    k = P_EXZ if is_z else P_EXX
    xx, zz = _step(pk, k, x | (xa << 7), z | (za << 7), eps, gam, state, sp, sc, codes, bits, gen)
    w = 0
    for i in range(7):
        w |= bits[i] << i
    return True, xx & 127, zz & 127, SYND[w]


@jit(inline=True)
def _skip_clean_round(pk, state, sp):
    """Fast-forward the sampler over a round that provably sees no fault.

    With a clean data frame a round without faults accepts every ancilla at
    the first attempt, reads zero syndromes and applies no correction, so
    its location count is fixed.  If the sampler's gaps reach past that
    count (and no scripted fault falls inside) the round changes nothing and
    draws no random numbers; advancing the counters is then exactly what
    running it would do.
    """
    _, _, _, one_off, _, two_off, nloc, _, _ = pk
    n1 = 0
    n2 = 0
    nl = 0
    for k in (P_PREP, P_EXZ, P_PREP, P_AXH, P_EXX):
        reps = 3
        n1 += reps * (one_off[k + 1] - one_off[k])
        n2 += reps * (two_off[k + 1] - two_off[k])
        nl += reps * nloc[k]
    if state[0] < n1 or state[1] < n2:
        return False
    base = state[2]
    for j in range(sp.shape[0]):
        if base <= sp[j] < base + nl:
            return False
    state[0] -= n1
    state[1] -= n2
    state[2] += nl
    return True


@jit
def correct_round(pk, x, z, eps, gam, state, sp, sc, codes, bits, gen, retry_cap):
    """One two-step recovery round on the data frame; ``(ok, x, z)``."""
    if x == 0 and z == 0 and _skip_clean_round(pk, state, sp):
        return True, 0, 0
    ok, x, z, s1 = _extract(pk, True, x, z, eps, gam, state, sp, sc, codes, bits, gen, retry_cap)
    if not ok:
        return False, x, z
    ok, x, z, s2 = _extract(pk, True, x, z, eps, gam, state, sp, sc, codes, bits, gen, retry_cap)
    if not ok:
        return False, x, z
    ok, x, z, s3 = _extract(pk, True, x, z, eps, gam, state, sp, sc, codes, bits, gen, retry_cap)
    if not ok:
        return False, x, z
    v = vote(s1, s2, s3)
    if v != 0:
        x, z = _step(pk, P_CORZ + v - 1, x, z, eps, gam, state, sp, sc, codes, bits, gen)
    ok, x, z, s1 = _extract(pk, False, x, z, eps, gam, state, sp, sc, codes, bits, gen, retry_cap)
    if not ok:
        return False, x, z
    ok, x, z, s2 = _extract(pk, False, x, z, eps, gam, state, sp, sc, codes, bits, gen, retry_cap)
    if not ok:
        return False, x, z
    ok, x, z, s3 = _extract(pk, False, x, z, eps, gam, state, sp, sc, codes, bits, gen, retry_cap)
    if not ok:
        return False, x, z
    v = vote(s1, s2, s3)
    if v != 0:
        x, z = _step(pk, P_CORX + v - 1, x, z, eps, gam, state, sp, sc, codes, bits, gen)
    return True, x, z


@jit
def channel_trial(pk, mode, eps, gam, t_max, period, gen, retry_cap, state, sp, sc, codes, bits, fid):
    """Fill ``fid[0..t_max]`` with this trial's fidelity after every step.

    Returns False when the ancilla factory starved; ``fid`` is then garbage.
    """
    init_sampler(state, eps, gam, gen)
    fid[0] = 1.0
    x = 0
    z = 0
    for t in range(1, t_max + 1):
        if mode == NAKED:
            x, z = _step(pk, P_MEM1, 0, z, eps, gam, state, sp, sc, codes, bits, gen)
            fid[t] = 1.0 if z == 0 else 0.0
            continue
        x, z = _step(pk, P_MEM7, x, z, eps, gam, state, sp, sc, codes, bits, gen)
        if mode == ENCODED and t % period == 0:
            ok, x, z = correct_round(pk, x, z, eps, gam, state, sp, sc, codes, bits, gen, retry_cap)
            if not ok:
                return False
        x = CANON_X[x]
        z = CANON_Z[z]
        fid[t] = 1.0 if x == 0 and z == 0 else 0.0
    return True


@jit
def ancilla_batch(pk, kind_x, verify, eps, gam, gen, retry_cap, state, sp, sc, codes, bits,
                  ok_out, x_out, z_out, attempts_out):
    """``ancilla_trial`` for ``len(ok_out)`` consecutive trials sharing ``gen``."""
    for i in range(ok_out.shape[0]):
        ok, x, z, n = ancilla_trial(pk, kind_x, verify, eps, gam, gen, retry_cap, state, sp, sc, codes, bits)
        ok_out[i] = ok
        x_out[i] = x
        z_out[i] = z
        attempts_out[i] = n


@jit
def channel_batch(pk, mode, eps, gam, t_max, period, gen, retry_cap, n_trials,
                  state, sp, sc, codes, bits, fid, total, total_sq):
    """Run ``n_trials`` channel trials on ``gen``, adding each kept curve (and its
    square) into ``total``/``total_sq``.  Returns the number of kept trials."""
    kept = 0
    for _ in range(n_trials):
        if channel_trial(pk, mode, eps, gam, t_max, period, gen, retry_cap, state, sp, sc, codes, bits, fid):
            kept += 1
            for t in range(fid.shape[0]):
                total[t] += fid[t]
                total_sq[t] += fid[t] * fid[t]
    return kept
