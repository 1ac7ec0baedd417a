"""Pauli-frame program runner on integer bit masks (15 qubits fit in one word)."""

from .._accel import jit
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
)


@jit(inline=True)
def _code_bits(code):
    # Pauli code -> (x bit, z bit); I=0, X=1, Y=2, Z=3
    return (1 if code == 1 or code == 2 else 0), (1 if code == 2 or code == 3 else 0)


@jit(inline=True)
def run_program(ops, start, stop, codes, nf, has_corr, x, z, bits):
    """Propagate the frame ``(x, z)`` through rows ``start:stop``; return it.

    Measurement rows store the flip of the outcome relative to the ideal
    circuit; ``bits`` must be zeroed by the caller.  ``nf`` is the number of
    nonzero entries in ``codes``: with an identity frame, no faults and no
    correction rows nothing can change, so the rows are skipped.
    """
    if x == 0 and z == 0 and nf == 0 and not has_corr:
        return x, z
    for i in range(start, stop):
        op = ops[i, 0]
        a = ops[i, 1]
        b = ops[i, 2]
        if op == OP_H:
            xa = (x >> a) & 1
            za = (z >> a) & 1
            if xa != za:
                x ^= 1 << a
                z ^= 1 << a
        elif op == OP_CNOT:
            if (x >> a) & 1:
                x ^= 1 << b
            if (z >> b) & 1:
                z ^= 1 << a
        elif op == OP_NOISE1:
            code = codes[ops[i, 3]]
            if code != 0:
                fx, fz = _code_bits(code)
                x ^= fx << a
                z ^= fz << a
        elif op == OP_NOISE2:
            code = codes[ops[i, 3]]
            if code != 0:
                fx, fz = _code_bits(code >> 2)
                x ^= fx << a
                z ^= fz << a
                fx, fz = _code_bits(code & 3)
                x ^= fx << b
                z ^= fz << b
        elif op == OP_MEASURE:
            bits[b] = (x >> a) & 1
            z &= ~(1 << a)
        elif op == OP_RESET:
            x &= ~(1 << a)
            z &= ~(1 << a)
        elif op == OP_READOUT:
            c = ops[i, 3]
            for j in range(c):
                bits[b + j] = (x >> (a + j)) & 1
            block = ((1 << c) - 1) << a
            x &= ~block
            z &= ~block
        elif op == OP_CORR_X:
            x ^= 1 << a
        elif op == OP_CORR_Z:
            z ^= 1 << a
    return x, z
