"""Depolarizing fault sampler with geometric gap skipping.

Fault locations of each class (one-qubit, probability epsilon; two-qubit,
probability gamma) form one long Bernoulli sequence per trial.  Instead of a
uniform draw per location the sampler keeps, per class, the number of clean
locations left before the next fault.  The state survives across programs, so
a trial's fault pattern is iid regardless of how it is cut into programs.

``gen`` is a :mod:`~steanesim.kernels.rng` state array.  Sampler state is an int64 array ``[gap_one, gap_two, location_counter]``.  The
counter numbers every location the trial has visited and is what fault
scripts (forced injections) are keyed on.
"""

import math

from .._accel import jit
from .rng import next_double

NEVER = 1 << 62


@jit(inline=True)
def geometric_gap(p, gen):
    """Number of clean Bernoulli(p) trials before the next success."""
    if p <= 0.0:
        return NEVER
    if p >= 1.0:
        return 0
    g = math.log1p(-next_double(gen)) / math.log1p(-p)
    if g >= 4.0e18:
        return NEVER
    return int(g)


@jit
def init_sampler(state, eps, gam, gen):
    state[0] = geometric_gap(eps, gen)
    state[1] = geometric_gap(gam, gen)
    state[2] = 0


@jit(inline=True)
def sample_program(loc_one, loc_two, n_loc, eps, gam, state, gen, script_pos, script_code, codes):
    """Fill ``codes[:n_loc]`` with the faults of one program run; return the count.

    ``loc_one``/``loc_two`` list the program's location indices of each class in
    execution order.  Scripted faults override sampled ones at their global
    location number; a scripted code of 0 forces "no fault".
    """
    for i in range(n_loc):
        codes[i] = 0
    nf = 0
    pos = state[0]
    n1 = loc_one.shape[0]
    while pos < n1:
        codes[loc_one[pos]] = 1 + int(next_double(gen) * 3.0)
        nf += 1
        pos += 1 + geometric_gap(eps, gen)
    state[0] = pos - n1
    pos = state[1]
    n2 = loc_two.shape[0]
    while pos < n2:
        codes[loc_two[pos]] = 1 + int(next_double(gen) * 15.0)
        nf += 1
        pos += 1 + geometric_gap(gam, gen)
    state[1] = pos - n2
    base = state[2]
    for j in range(script_pos.shape[0]):
        g = script_pos[j]
        if base <= g < base + n_loc:
            codes[g - base] = script_code[j]
            nf += 1
    state[2] = base + n_loc
    return nf
