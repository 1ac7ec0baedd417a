"""State-vector counterpart of :mod:`steanesim.kernels.trials`.

Same protocol, same fault-stream consumption and the same Born-sampling
stream as the Python reference path through ``StateVectorEngine``, so a trial
gives the same outcomes either way; only the Python call overhead is gone.
All amplitude buffers are preallocated by the caller.
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
)
from .faults import init_sampler, sample_program
from .statevec import run_program
from .trials import ENCODED, NAKED, SYND, vote

BLOCK = 128  # amplitudes of one 7-qubit block


class Buffers:
    """Amplitude scratch space for one thread of state-vector trials."""

    def __init__(self, max_locations: int):
        self.state = np.zeros(3, dtype=np.int64)
        self.codes = np.zeros(max(max_locations, 1), dtype=np.int64)
        self.bits = np.zeros(8, dtype=np.int64)
        self.script_pos = np.zeros(0, dtype=np.int64)
        self.script_code = np.zeros(0, dtype=np.int64)
        self.data = np.zeros(BLOCK, dtype=np.complex128)
        self.big = np.zeros(BLOCK * BLOCK, dtype=np.complex128)
        self.prep = np.zeros(2 * BLOCK, dtype=np.complex128)
        self.anc = np.zeros(BLOCK, dtype=np.complex128)

    def args(self):
        return (self.state, self.script_pos, self.script_code, self.codes, self.bits,
                self.data, self.big, self.prep, self.anc)


@jit
def overlap2(ref, amps):
    """``min(1, |<ref|amps>|**2)``."""
    re = 0.0
    im = 0.0
    for i in range(ref.shape[0]):
        c = ref[i].conjugate() * amps[i]
        re += c.real
        im += c.imag
    return min(1.0, re * re + im * im)


@jit
def _step(pk, k, amps, eps, gam, state, sp, sc, codes, bits, gen, mgen):
    ops, op_off, one, one_off, two, two_off, nloc, has_corr, nbits = pk
    sample_program(one[one_off[k]:one_off[k + 1]], two[two_off[k]:two_off[k + 1]], nloc[k],
                   eps, gam, state, gen, sp, sc, codes)
    for i in range(nbits[k]):
        bits[i] = 0
    run_program(amps, ops, op_off[k], op_off[k + 1], codes, bits, mgen)


@jit
def _prepare(pk, kind_x, eps, gam, state, sp, sc, codes, bits, gen, mgen, retry_cap, prep, anc):
    """Verified ancilla into ``anc``; False if the retry cap ran out."""
    ok = False
    for _ in range(retry_cap):
        prep[:] = 0.0
        prep[0] = 1.0
        _step(pk, P_PREP, prep, eps, gam, state, sp, sc, codes, bits, gen, mgen)
        if bits[0] == 0 and bits[1] == 0:
            ok = True
            break
    if not ok:
        return False
    anc[:] = prep[:BLOCK]
    if kind_x:
        _step(pk, P_AXH, anc, eps, gam, state, sp, sc, codes, bits, gen, mgen)
    return True


@jit
def _extract(pk, is_z, eps, gam, state, sp, sc, codes, bits, gen, mgen, retry_cap, data, big, prep, anc):
    """Returns the syndrome, or -1 on starvation; updates ``data`` in place."""
    if not _prepare(pk, not is_z, eps, gam, state, sp, sc, codes, bits, gen, mgen, retry_cap, prep, anc):
        return -1
    for h in range(BLOCK):
        for lo in range(BLOCK):
            big[h * BLOCK + lo] = anc[h] * data[lo]
    _step(pk, P_EXZ if is_z else P_EXX, big, eps, gam, state, sp, sc, codes, bits, gen, mgen)
    w = 0
    for i in range(7):
        w |= bits[i] << i
    data[:] = big[:BLOCK]
    return SYND[w]


@jit
def correct_round(pk, eps, gam, state, sp, sc, codes, bits, gen, mgen, retry_cap, data, big, prep, anc):
    for is_z in (True, False):
        s1 = _extract(pk, is_z, eps, gam, state, sp, sc, codes, bits, gen, mgen, retry_cap, data, big, prep, anc)
        if s1 < 0:
            return False
        s2 = _extract(pk, is_z, eps, gam, state, sp, sc, codes, bits, gen, mgen, retry_cap, data, big, prep, anc)
        if s2 < 0:
            return False
        s3 = _extract(pk, is_z, eps, gam, state, sp, sc, codes, bits, gen, mgen, retry_cap, data, big, prep, anc)
        if s3 < 0:
            return False
        v = vote(s1, s2, s3)
        if v != 0:
            first = P_CORZ if is_z else P_CORX
            _step(pk, first + v - 1, data, eps, gam, state, sp, sc, codes, bits, gen, mgen)
    return True


@jit
def channel_trial(pk, mode, eps, gam, t_max, period, gen, mgen, retry_cap, ref,
                  state, sp, sc, codes, bits, data, big, prep, anc, fid):
    """State-vector twin of ``trials.channel_trial``; ``ref`` is the test state
    (2 amplitudes for the naked qubit, 128 for the encoded one)."""
    init_sampler(state, eps, gam, gen)
    n = ref.shape[0]
    reg = data[:n]
    reg[:] = ref
    fid[0] = overlap2(ref, reg)
    for t in range(1, t_max + 1):
        if mode == NAKED:
            _step(pk, P_MEM1, reg, eps, gam, state, sp, sc, codes, bits, gen, mgen)
        else:
            _step(pk, P_MEM7, reg, eps, gam, state, sp, sc, codes, bits, gen, mgen)
            if mode == ENCODED and t % period == 0:
                if not correct_round(pk, eps, gam, state, sp, sc, codes, bits, gen, mgen, retry_cap,
                                     reg, big, prep, anc):
                    return False
        fid[t] = overlap2(ref, reg)
    return True


@jit
def channel_batch(pk, mode, eps, gam, t_max, period, gen, mgen, retry_cap, ref, n_trials,
                  state, sp, sc, codes, bits, data, big, prep, anc, fid, total, total_sq):
    """State-vector twin of ``trials.channel_batch``."""
    kept = 0
    for _ in range(n_trials):
        if channel_trial(pk, mode, eps, gam, t_max, period, gen, mgen, retry_cap, ref,
                         state, sp, sc, codes, bits, data, big, prep, anc, fid):
            kept += 1
            for t in range(fid.shape[0]):
                total[t] += fid[t]
                total_sq[t] += fid[t] * fid[t]
    return kept
