"""Hot loops: state-vector gate kernels, Pauli-frame runner, fault sampler and
the Monte Carlo trial loops built on them.

Every function here is compiled with numba when available; with
``QSIM_DISABLE_NUMBA=1`` the same entry points fall back to numpy or plain
Python and produce identical random-stream consumption.
"""
