import math

import numpy as np
import pytest

from steanesim.experiments import (
    ChannelConfig,
    CurvePoint,
    default_threads,
    find_critical_time,
    naked_fidelity_closed_form,
    run_channel,
    run_encoded,
    run_naked,
)


def curve(values, se=0.0):
    return [CurvePoint(t, v, se, 100) for t, v in enumerate(values)]


def exact_by_recursion(eps, t):
    """Phase-flip parity as a two-state Markov chain, stepped ``t`` times."""
    q = 2 * eps / 3
    even = 1.0
    for _ in range(t):
        even = even * (1 - q) + (1 - even) * q
    return even


def test_closed_form_against_recursion():
    for eps in (0.0, 2e-4, 1e-3, 0.3):
        for t in (0, 1, 7, 500):
            est, exact = naked_fidelity_closed_form(eps, t)
            assert exact == pytest.approx(exact_by_recursion(eps, t), rel=1e-12)
            assert est == pytest.approx((1 - 2 * eps / 3) ** t)


def test_closed_form_values():
    est, exact = naked_fidelity_closed_form(2e-4, 1000)
    assert est == pytest.approx(0.875, abs=1e-3)
    assert exact == pytest.approx(0.883, abs=1e-3)
    assert naked_fidelity_closed_form(0.0, 50) == (1.0, 1.0)


def test_estimate_never_exceeds_exact():
    for eps in np.linspace(0, 0.75, 31):
        for t in range(0, 2000, 37):
            est, exact = naked_fidelity_closed_form(float(eps), t)
            assert est <= exact + 1e-15


def test_find_critical_time_examples():
    naked = curve([1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3])
    assert find_critical_time(naked, naked) is None
    # starts below, overtakes at t=2 and stays above
    enc = curve([1.0, 0.85, 0.85, 0.8, 0.8, 0.8, 0.8, 0.8])
    assert find_critical_time(naked, enc) == 2
    # an encoded curve stuck at one never starts at or below the naked one after t=0
    assert find_critical_time(naked, curve([1.0] * 8)) == 1
    # a lead inside the joint error bar does not count
    assert find_critical_time(curve([1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3], 1.0), enc) is None
    # crossing that does not hold for the whole window
    short = curve([1.0, 0.85, 0.85, 0.8, 0.8, 0.4, 0.3, 0.2])
    assert find_critical_time(naked, short) is None
    assert find_critical_time(naked, short, window=3) == 2
    with pytest.raises(ValueError):
        find_critical_time(naked, curve([1.0] * 7))


def test_critical_time_against_a_perfect_encoded_qubit():
    # encoded fixed at 1: crossing at the first epoch where naked < 1 - joint stderr
    naked = [CurvePoint(t, 1.0 - 0.01 * t * t, 0.03, 100) for t in range(12)]
    enc = [CurvePoint(t, 1.0, 0.0, 100) for t in range(12)]
    first = next(p.t for p in naked if p.fidelity < 1.0 - p.stderr)
    assert find_critical_time(naked, enc) == first == 2


def test_config_validation():
    with pytest.raises(ValueError):
        ChannelConfig(1e-3, mode="teleport")
    with pytest.raises(ValueError):
        ChannelConfig(1e-3, engine="tensor")
    with pytest.raises(ValueError):
        ChannelConfig(1e-3, t_max=0)
    with pytest.raises(ValueError):
        ChannelConfig(2.0)
    assert ChannelConfig(1e-3, engine="pauli-frame").engine == "pauli_frame"
    assert ChannelConfig(1e-3).params.include_idle_memory is False
    with pytest.raises(ValueError):
        run_naked(ChannelConfig(1e-3, mode="encoded_corrected"))
    with pytest.raises(ValueError):
        run_encoded(ChannelConfig(1e-3))


@pytest.mark.parametrize("eps", [2e-4, 1e-3])
def test_naked_curve_matches_exact(eps):
    cfg = ChannelConfig(eps, t_max=1000, trials=20_000, seed=3)
    points = run_channel(cfg).points
    assert [p.t for p in points] == list(range(1001))
    assert points[0].fidelity == 1.0
    for p in points[100::100]:
        exact = naked_fidelity_closed_form(eps, p.t)[1]
        assert abs(p.fidelity - exact) < 4 * math.sqrt(exact * (1 - exact) / p.n_trials)


def test_zero_noise_curves_stay_at_one():
    for mode in ("naked", "encoded_corrected", "encoded_uncorrected"):
        for engine in ("pauli_frame", "statevector"):
            pts = run_channel(ChannelConfig(0.0, 0.0, t_max=3, trials=4, mode=mode, engine=engine)).points
            assert all(p.fidelity == pytest.approx(1.0, abs=1e-10) for p in pts)


def test_uncorrected_encoded_decays_faster_than_corrected():
    base = dict(epsilon=1e-2, gamma=1e-3, t_max=40, trials=2000, seed=5)
    corr = run_channel(ChannelConfig(mode="encoded_corrected", **base)).points
    unc = run_channel(ChannelConfig(mode="encoded_uncorrected", **base)).points
    assert corr[-1].fidelity > unc[-1].fidelity


def test_uncorrected_encoded_decays_faster_than_naked():
    base = dict(epsilon=2e-4, t_max=300, trials=20_000, seed=6)
    naked = run_channel(ChannelConfig(mode="naked", **base)).points
    unc = run_channel(ChannelConfig(mode="encoded_uncorrected", **base)).points
    for t in (100, 200, 300):
        gap = naked[t].fidelity - unc[t].fidelity
        assert gap > 3 * math.hypot(naked[t].stderr, unc[t].stderr)


def test_seed_determinism_and_thread_independence(monkeypatch):
    cfg = ChannelConfig(1e-3, 1e-3, t_max=20, trials=700, mode="encoded_corrected", seed=9)
    a = run_channel(cfg, threads=1).points
    b = run_channel(cfg, threads=3).points
    monkeypatch.setenv("QSIM_THREADS", "2")
    assert default_threads() == 2
    c = run_channel(cfg).points
    assert a == b == c
    other = run_channel(ChannelConfig(1e-3, 1e-3, t_max=20, trials=700, mode="encoded_corrected",
                                      seed=10)).points
    assert other != a


def test_bad_thread_setting(monkeypatch):
    monkeypatch.setenv("QSIM_THREADS", "0")
    with pytest.raises(ValueError):
        default_threads()


@pytest.mark.parametrize("mode", ["naked", "encoded_corrected", "encoded_uncorrected"])
def test_reference_loop_matches_kernels(mode):
    cfg = ChannelConfig(5e-3, 5e-3, t_max=6, period=2, trials=40, mode=mode, seed=2)
    assert run_channel(cfg, reference=True).points == run_channel(cfg).points


def test_engines_agree_on_identical_streams():
    cfg = ChannelConfig(5e-3, 5e-3, t_max=4, trials=30, mode="encoded_corrected", seed=1)
    frame = run_channel(cfg).points
    state = run_channel(ChannelConfig(**{**cfg.__dict__, "engine": "statevector"})).points
    for f, s in zip(frame, state):
        assert f.fidelity == pytest.approx(s.fidelity, abs=1e-9)


def test_starved_trials_are_dropped():
    res = run_channel(ChannelConfig(0.5, 0.9, t_max=2, trials=20, mode="encoded_corrected", retry_cap=1))
    assert res.n_starved > 0
    assert res.points[0].n_trials == 20 - res.n_starved
