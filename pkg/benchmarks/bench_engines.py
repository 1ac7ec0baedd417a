#!/usr/bin/env python3
"""Numba kernels vs the pure numpy/Python fallback.

Each backend runs in its own interpreter because the switch
(``QSIM_DISABLE_NUMBA``) is read at import time.  Workloads:

- ``h14``       transversal H on the top 7 qubits of a 14-qubit state
- ``cnot14``    transversal CNOT between the two 7-qubit blocks
- ``ancilla``   verified |0_L> preparations with the frame engine
- ``channel``   encoded, corrected memory trials with the frame engine
- ``sv_round``  encoded, corrected memory trials with the state-vector engine

Usage::

    python benchmarks/bench_engines.py [--quick]
"""

import argparse
import json
import os
import subprocess
import sys
import time

WORKER = r"""
import json, sys, time
import numpy as np
from steanesim import backend_name
from steanesim.kernels import statevec as k
from steanesim.noise import NoiseParams
from steanesim.ancilla import ancilla_statistics
from steanesim.experiments import ChannelConfig, run_channel

scale = float(sys.argv[1])
out = {"backend": backend_name()}

def timed(fn, reps):
    fn()  # warm up (and compile)
    t = time.perf_counter()
    for _ in range(reps):
        fn()
    return (time.perf_counter() - t) / reps

amps = np.zeros(1 << 14, dtype=np.complex128)
amps[0] = 1.0
out["h14"] = timed(lambda: [k.apply_h(amps, q) for q in range(7, 14)], max(1, int(200 * scale)))
out["cnot14"] = timed(lambda: [k.apply_cnot(amps, q + 7, q) for q in range(7)], max(1, int(200 * scale)))

params = NoiseParams(1e-3, 1e-3)
n = max(10, int(2000 * scale))
out["ancilla"] = timed(lambda: ancilla_statistics(params, n, seed=1), 1) / n

cfg = ChannelConfig(1e-3, 1e-3, t_max=20, trials=max(2, int(100 * scale)), mode="encoded_corrected", seed=1)
out["channel"] = timed(lambda: run_channel(cfg, threads=1), 1) / (cfg.trials * cfg.t_max)

cfg = ChannelConfig(1e-3, 1e-3, t_max=5, trials=max(1, int(10 * scale)), mode="encoded_corrected",
                    engine="statevector", seed=1)
out["sv_round"] = timed(lambda: run_channel(cfg, threads=1), 1) / (cfg.trials * cfg.t_max)
print(json.dumps(out))
"""

UNITS = {"h14": "per 7 gates", "cnot14": "per 7 gates", "ancilla": "per trial",
         "channel": "per round", "sv_round": "per round"}


def run_backend(disable: bool, scale: float) -> dict:
    env = dict(os.environ, QSIM_DISABLE_NUMBA="1" if disable else "0")
    t = time.perf_counter()
    proc = subprocess.run([sys.executable, "-c", WORKER, str(scale)], env=env, capture_output=True,
                          text=True, check=True)
    res = json.loads(proc.stdout.strip().splitlines()[-1])
    res["wall"] = time.perf_counter() - t
    return res


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true", help="smaller workloads for a smoke run")
    args = ap.parse_args()
    scale = 0.1 if args.quick else 1.0
    fast = run_backend(False, scale)
    slow = run_backend(True, scale * 0.1)
    print(f"{'workload':<10} {'numba':>12} {'fallback':>12} {'speedup':>9}  unit")
    for key, unit in UNITS.items():
        a, b = fast[key], slow[key]
        print(f"{key:<10} {a * 1e6:>10.1f}us {b * 1e6:>10.1f}us {b / a:>8.1f}x  {unit}")
    print(f"backends: {fast['backend']} / {slow['backend']}; "
          f"wall {fast['wall']:.1f}s / {slow['wall']:.1f}s (includes compilation)")


if __name__ == "__main__":
    main()
