"""State-vector gate kernels.

Little-endian layout: qubit ``k`` is bit ``k`` of the amplitude index.  Two
implementations exist for every kernel: explicit loops compiled by numba and
vectorised numpy slices.  The module exports whichever one the accelerator
toggle selects under the public names.
"""

import math

import numpy as np

from .._accel import HAVE_NUMBA, jit
from .rng import next_double
from .opcodes import (
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

INV_SQRT2 = 1.0 / math.sqrt(2.0)

# ---------------------------------------------------------------- loop kernels


# The H, X and CNOT loops work on the float64 view of the amplitudes and move
# contiguous runs, which lets the compiler vectorise them.


def _h_loop(amps, q):
    f = amps.view(np.float64)
    run = 2 << q
    for base in range(0, f.shape[0], 2 * run):
        lo = f[base:base + run]
        hi = f[base + run:base + 2 * run]
        for i in range(run):
            a = lo[i]
            b = hi[i]
            lo[i] = (a + b) * INV_SQRT2
            hi[i] = (a - b) * INV_SQRT2


def _swap_runs(f, i, j, run):
    for k in range(run):
        a = f[i + k]
        f[i + k] = f[j + k]
        f[j + k] = a


def _x_loop(amps, q):
    f = amps.view(np.float64)
    run = 2 << q
    for base in range(0, f.shape[0], 2 * run):
        _swap_runs(f, base, base + run, run)


def _y_loop(amps, q):
    bit = 1 << q
    n = amps.shape[0]
    for base in range(0, n, 2 * bit):
        for i in range(base, base + bit):
            a = amps[i]
            amps[i] = -1j * amps[i + bit]
            amps[i + bit] = 1j * a


def _z_loop(amps, q):
    bit = 1 << q
    n = amps.shape[0]
    for base in range(0, n, 2 * bit):
        for i in range(base + bit, base + 2 * bit):
            amps[i] = -amps[i]


def _cnot_loop(amps, c, t):
    f = amps.view(np.float64)
    low = min(c, t)
    run = 2 << low  # floats in a run of indices sharing every bit above ``low``
    cbit = 2 << c
    tbit = 2 << t
    for base in range(0, f.shape[0], 2 * run):
        if low == c:
            if base & tbit == 0:
                _swap_runs(f, base + cbit, base + cbit + tbit, run)
        elif base & cbit:
            _swap_runs(f, base, base + tbit, run)


def _pauli_loop(amps, xmask, zmask, phase):
    out = np.empty_like(amps)
    for i in range(amps.shape[0]):
        v = i & zmask
        par = 0
        while v:
            par ^= 1
            v &= v - 1
        if par:
            out[i ^ xmask] = -phase * amps[i]
        else:
            out[i ^ xmask] = phase * amps[i]
    amps[:] = out


def _prob_one_loop(amps, q):
    bit = 1 << q
    p = 0.0
    for base in range(bit, amps.shape[0], 2 * bit):
        for i in range(base, base + bit):
            p += amps[i].real * amps[i].real + amps[i].imag * amps[i].imag
    return p


def _collapse_loop(amps, q, outcome, prob):
    bit = 1 << q
    scale = 1.0 / math.sqrt(prob)
    keep = bit if outcome == 1 else 0
    for base in range(0, amps.shape[0], 2 * bit):
        for i in range(base, base + bit):
            amps[i ^ keep] = amps[i ^ keep] * scale
            amps[i ^ keep ^ bit] = 0.0


# --------------------------------------------------------------- numpy kernels


def _split(amps, q):
    # (high, 2, low) view whose middle axis is qubit q
    return amps.reshape(-1, 2, 1 << q)


def _h_np(amps, q):
    v = _split(amps, q)
    a = v[:, 0, :].copy()
    b = v[:, 1, :]
    v[:, 0, :] = (a + b) * INV_SQRT2
    v[:, 1, :] = (a - b) * INV_SQRT2


def _x_np(amps, q):
    v = _split(amps, q)
    v[:] = v[:, ::-1, :].copy()


def _y_np(amps, q):
    v = _split(amps, q)
    a = v[:, 0, :].copy()
    v[:, 0, :] = -1j * v[:, 1, :]
    v[:, 1, :] = 1j * a


def _z_np(amps, q):
    _split(amps, q)[:, 1, :] *= -1


def _cnot_np(amps, c, t):
    idx = np.arange(amps.shape[0])
    sel = idx[((idx >> c) & 1 == 1) & ((idx >> t) & 1 == 0)]
    other = sel | (1 << t)
    amps[sel], amps[other] = amps[other].copy(), amps[sel].copy()


def _pauli_np(amps, xmask, zmask, phase):
    idx = np.arange(amps.shape[0])
    signs = 1 - 2 * (np.bitwise_count(idx & zmask) & 1)
    out = np.empty_like(amps)
    out[idx ^ xmask] = phase * signs * amps
    amps[:] = out


def _prob_one_np(amps, q):
    return float(np.sum(np.abs(_split(amps, q)[:, 1, :]) ** 2))


def _collapse_np(amps, q, outcome, prob):
    v = _split(amps, q)
    v[:, 1 - outcome, :] = 0.0
    v[:, outcome, :] *= 1.0 / math.sqrt(prob)


if HAVE_NUMBA:
    _swap_runs = jit(_swap_runs)
    apply_h = jit(_h_loop, fastmath=True)
    apply_x = jit(_x_loop)
    apply_y = jit(_y_loop)
    apply_z = jit(_z_loop)
    apply_cnot = jit(_cnot_loop)
    apply_pauli_masks = jit(_pauli_loop)
    prob_one = jit(_prob_one_loop)
    collapse = jit(_collapse_loop)
else:
    apply_h = _h_np
    apply_x = _x_np
    apply_y = _y_np
    apply_z = _z_np
    apply_cnot = _cnot_np
    apply_pauli_masks = _pauli_np
    prob_one = _prob_one_np
    collapse = _collapse_np


@jit
def measure(amps, q, u):
    """Born-rule Z measurement of qubit ``q`` driven by the uniform ``u``."""
    p1 = prob_one(amps, q)
    if u < p1:
        outcome = 1
        p = p1
    else:
        outcome = 0
        p = 1.0 - p1
    if p <= 1e-300:
        raise RuntimeError("measurement selected a zero-norm branch")
    collapse(amps, q, outcome, p)
    return outcome


@jit
def _readout_top(amps, first, count, slot, bits, u):
    """Measure and reset the qubits from ``first`` up to the top one in a single
    Born draw over their joint outcome; equivalent to reading them one by one."""
    low = 1 << first
    n_words = amps.shape[0] >> first
    probs = np.zeros(n_words)
    for w in range(n_words):
        p = 0.0
        for i in range(w * low, (w + 1) * low):
            p += amps[i].real * amps[i].real + amps[i].imag * amps[i].imag
        probs[w] = p
    total = probs.sum()
    target = u * total
    acc = 0.0
    w = 0
    for k in range(n_words):
        acc += probs[k]
        w = k
        if probs[k] > 0.0 and target < acc:
            break
    # last nonzero bin absorbs rounding at the top of the range
    while probs[w] <= 1e-300 and w > 0:
        w -= 1
    if probs[w] <= 1e-300:
        raise RuntimeError("measurement selected a zero-norm branch")
    scale = 1.0 / math.sqrt(probs[w])
    for i in range(low):
        amps[i] = amps[w * low + i] * scale
    for i in range(low, amps.shape[0]):
        amps[i] = 0.0
    for j in range(count):
        bits[slot + j] = (w >> j) & 1


@jit
def _apply_code(amps, q, code):
    if code == 1:
        apply_x(amps, q)
    elif code == 2:
        apply_y(amps, q)
    elif code == 3:
        apply_z(amps, q)


@jit
def run_program(amps, ops, start, stop, codes, bits, gen):
    """Execute rows ``start:stop`` of ``ops`` on ``amps`` in place.

    ``codes[loc]`` is the Pauli fault drawn for location ``loc`` (0 = none);
    measurement results go to ``bits``; ``gen`` drives Born sampling only.
    """
    # outcome of each qubit's latest measurement while nothing has touched it
    # since, so that a reset right after a readout needs no second Born draw
    known = np.full(64, -1, dtype=np.int64)
    n_qubits = 0
    while (1 << n_qubits) < amps.shape[0]:
        n_qubits += 1
    for i in range(start, stop):
        op = ops[i, 0]
        a = ops[i, 1]
        b = ops[i, 2]
        if op != OP_MEASURE and op != OP_RESET and op != OP_READOUT:
            known[a] = -1
            if op == OP_CNOT or op == OP_NOISE2:
                known[b] = -1
        if op == OP_H:
            apply_h(amps, a)
        elif op == OP_X or op == OP_CORR_X:
            apply_x(amps, a)
        elif op == OP_Y:
            apply_y(amps, a)
        elif op == OP_Z or op == OP_CORR_Z:
            apply_z(amps, a)
        elif op == OP_CNOT:
            apply_cnot(amps, a, b)
        elif op == OP_NOISE1:
            code = codes[ops[i, 3]]
            if code != 0:
                _apply_code(amps, a, code)
        elif op == OP_NOISE2:
            code = codes[ops[i, 3]]
            if code != 0:
                _apply_code(amps, a, code >> 2)
                _apply_code(amps, b, code & 3)
        elif op == OP_MEASURE:
            bits[b] = measure(amps, a, next_double(gen))
            known[a] = bits[b]
        elif op == OP_RESET:
            outcome = known[a]
            if outcome < 0:
                outcome = measure(amps, a, next_double(gen))
            if outcome == 1:
                apply_x(amps, a)
            known[a] = 0
        elif op == OP_READOUT:
            c = ops[i, 3]
            if (a + c) == n_qubits:
                _readout_top(amps, a, c, b, bits, next_double(gen))
            else:
                for j in range(c):
                    bits[b + j] = measure(amps, a + j, next_double(gen))
                    if bits[b + j] == 1:
                        apply_x(amps, a + j)
            for j in range(c):
                known[a + j] = 0
