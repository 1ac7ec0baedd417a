"""xoshiro256** uniform source for the compiled trial loops.

numba passes a ``numpy.random.Generator`` into every compiled function that
touches it at a cost of tens of nanoseconds per call, which dominated the
nested trial kernels.  The generator here is a plain ``uint64[4]`` state
array, free to pass around.  Seeding is left to ``numpy.random.SeedSequence``
(see :mod:`steanesim.streams`).

The numba and pure-Python variants produce the same bit stream.
"""

from .._accel import HAVE_NUMBA, jit

_MASK = (1 << 64) - 1
_INV53 = 1.0 / 9007199254740992.0  # 2**-53

if HAVE_NUMBA:
    import numpy as np

    _U5 = np.uint64(5)
    _U7 = np.uint64(7)
    _U9 = np.uint64(9)
    _U11 = np.uint64(11)
    _U17 = np.uint64(17)
    _U45 = np.uint64(45)
    _U57 = np.uint64(57)
    _U19 = np.uint64(19)

    @jit
    def next_double(s):
        """Advance ``s`` and return a uniform double in [0, 1) with 53 random bits."""
        s0 = s[0]
        s1 = s[1]
        s2 = s[2]
        s3 = s[3]
        m = s1 * _U5
        result = ((m << _U7) | (m >> _U57)) * _U9
        t = s1 << _U17
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = (s3 << _U45) | (s3 >> _U19)
        s[0] = s0
        s[1] = s1
        s[2] = s2
        s[3] = s3
        return float(result >> _U11) * _INV53

else:

    def _rotl(v, k):
        return ((v << k) | (v >> (64 - k))) & _MASK

    def next_double(s):
        """Advance ``s`` and return a uniform double in [0, 1) with 53 random bits."""
        s0, s1, s2, s3 = int(s[0]), int(s[1]), int(s[2]), int(s[3])
        result = (_rotl((s1 * 5) & _MASK, 7) * 9) & _MASK
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        s[0], s[1], s[2], s[3] = s0, s1, s2, s3
        return (result >> 11) * _INV53
