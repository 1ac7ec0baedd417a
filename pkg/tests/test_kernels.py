import os
import subprocess
import sys

import numpy as np
import pytest

from steanesim import networks as nw
from steanesim.engines import PauliFrameEngine
from steanesim.experiments import ChannelConfig, run_channel
from steanesim.kernels import faults as _faults
from steanesim.kernels import trials as _trials
from steanesim.kernels.rng import next_double
from steanesim.noise import FaultStream, NoiseParams
from steanesim.pauli import PauliString
from steanesim.recovery import correct_round
from steanesim.streams import KernelRandom, as_kernel_random, block_rng, trial_blocks


def test_xoshiro_reference_outputs():
    # first raw outputs of xoshiro256** from state (1, 2, 3, 4), top 53 bits kept
    s = np.array([1, 2, 3, 4], dtype=np.uint64)
    for raw in (11520, 0, 1509978240):
        assert int(next_double(s) * 2**53) == raw >> 11


def test_kernel_random_seeding():
    a, b = KernelRandom.from_seed(3), KernelRandom.from_seed(3)
    assert [a.random() for _ in range(5)] == [b.random() for _ in range(5)]
    assert KernelRandom.from_seed(4).random() != KernelRandom.from_seed(3).random()
    with pytest.raises(ValueError):
        KernelRandom(np.zeros(4, dtype=np.uint64))
    g = as_kernel_random(np.random.default_rng(1))
    assert 0.0 <= g.random() < 1.0
    assert as_kernel_random(a) is a


def test_uniform_moments():
    r = KernelRandom.from_seed(11)
    u = np.array([r.random() for _ in range(50_000)])
    assert abs(u.mean() - 0.5) < 5 * np.sqrt(1 / 12 / u.size)
    assert abs((u < 0.1).mean() - 0.1) < 5 * np.sqrt(0.09 / u.size)


def test_block_streams():
    assert trial_blocks(600) == [(0, 0, 256), (1, 256, 512), (2, 512, 600)]
    assert block_rng(1, 0).random() != block_rng(1, 1).random()
    assert block_rng(1, 0, 0).random() != block_rng(1, 0, 1).random()
    assert block_rng(1, 2).random() == block_rng(1, 2).random()


def _kernel_round(x, z, params, seed, script):
    pk = nw.pack(params.include_idle_memory)
    scratch = _trials.Scratch(nw.max_locations(params.include_idle_memory), script)
    gen = KernelRandom.from_seed(seed).state
    _faults.init_sampler(scratch.state, params.epsilon, params.gamma, gen)
    ok, x, z = _trials.correct_round(pk, x, z, params.epsilon, params.gamma, *scratch.args(), gen, 100)
    return ok, int(x), int(z), scratch.state.tolist()


def _python_round(x, z, params, seed, script):
    stream = FaultStream(params, KernelRandom.from_seed(seed), script)
    data, _ = correct_round(PauliString(7, x, z), params, PauliFrameEngine(), stream)
    return True, data.x_mask, data.z_mask, stream.state.tolist()


@pytest.mark.parametrize("where", [0, 40, 300, 900])
def test_clean_round_skip_respects_scripted_faults(where):
    params = NoiseParams(1e-5, 1e-5, False)
    script = {where: 1}
    assert _kernel_round(0, 0, params, 5, script) == _python_round(0, 0, params, 5, script)


def test_clean_round_skip_matches_full_round():
    for seed in range(200):
        params = NoiseParams(2e-4, 2e-4, seed % 2 == 0)
        assert _kernel_round(0, 0, params, seed, None) == _python_round(0, 0, params, seed, None)


def test_low_noise_channel_matches_reference_loop():
    cfg = ChannelConfig(2e-4, 2e-4, t_max=40, trials=60, mode="encoded_corrected", seed=8)
    assert run_channel(cfg, reference=True).points == run_channel(cfg).points


FALLBACK_SCRIPT = r"""
from steanesim import backend_name
from steanesim.ancilla import ancilla_statistics
from steanesim.experiments import ChannelConfig, run_channel
from steanesim.noise import NoiseParams
print(backend_name())
print(ancilla_statistics(NoiseParams(1e-2, 1e-2), 50, seed=3))
print(run_channel(ChannelConfig(1e-2, 1e-2, t_max=3, trials=8, mode="encoded_corrected", seed=3)).points)
"""


def test_pure_python_fallback_gives_identical_results():
    out = {}
    for flag in ("0", "1"):
        env = dict(os.environ, QSIM_DISABLE_NUMBA=flag)
        proc = subprocess.run([sys.executable, "-c", FALLBACK_SCRIPT], env=env, capture_output=True,
                              text=True, timeout=600, check=True)
        out[flag] = proc.stdout.splitlines()
    assert out["0"][0] != out["1"][0]
    assert out["0"][1:] == out["1"][1:]
