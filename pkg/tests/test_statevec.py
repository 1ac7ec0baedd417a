import math
from functools import reduce

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steanesim import statevec as sv
from steanesim.pauli import PauliString
from steanesim.statevec import Gate, StateVector
from steanesim.steane import logical_state, plus_logical
from steanesim.streams import KernelRandom

R = 1 / math.sqrt(2)
_MATS = {
    "H": np.array([[1, 1], [1, -1]]) * R,
    "X": np.array([[0, 1], [1, 0]]),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.array([[1, 0], [0, -1]]),
}


def dense(gate: Gate, n: int) -> np.ndarray:
    """Full 2**n matrix of ``gate`` built from Kronecker products (little endian)."""
    eye = np.eye(2)
    if gate.kind != "CNOT":
        ops = [_MATS[gate.kind] if q == gate.qubits[0] else eye for q in range(n)]
        return reduce(np.kron, reversed(ops))
    c, t = gate.qubits
    dim = 1 << n
    m = np.zeros((dim, dim))
    for i in range(dim):
        j = i ^ (1 << t) if (i >> c) & 1 else i
        m[j, i] = 1
    return m


def random_state(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return StateVector(n, a / np.linalg.norm(a))


gates4 = st.one_of(
    st.builds(lambda k, q: Gate(k, (q,)), st.sampled_from("HXYZ"), st.integers(0, 3)),
    st.builds(lambda c, d: Gate("CNOT", (c, (c + d) % 4)), st.integers(0, 3), st.integers(1, 3)),
)


def test_new_zero_state():
    s = sv.new_zero_state(3)
    assert s.amplitudes.shape == (8,)
    assert s.amplitudes[0] == 1 and np.count_nonzero(s.amplitudes) == 1
    assert sv.new_zero_state(1).amplitudes.tolist() == [1, 0]
    with pytest.raises(ValueError):
        sv.new_zero_state(16)
    assert sv.new_zero_state(16, max_qubits=16).n_qubits == 16


def test_basic_gates():
    plus = sv.apply_gate(sv.new_zero_state(1), Gate("H", (0,)))
    assert np.allclose(plus.amplitudes, [R, R])
    bell_in = StateVector(2, np.array([R, R, 0, 0]))  # (|00> + |10>)/sqrt2 with qubit 0 the control
    out = sv.apply_gate(bell_in, Gate("CNOT", (0, 1)))
    assert np.allclose(out.amplitudes, [R, 0, 0, R])


@pytest.mark.parametrize("n", [1, 3, 5])
def test_gates_match_dense_matrices(n):
    state = random_state(n, n)
    for q in range(n):
        for kind in "HXYZ":
            g = Gate(kind, (q,))
            assert np.allclose(sv.apply_gate(state, g).amplitudes, dense(g, n) @ state.amplitudes, atol=1e-12)
        for t in range(n):
            if t != q:
                g = Gate("CNOT", (q, t))
                assert np.allclose(sv.apply_gate(state, g).amplitudes, dense(g, n) @ state.amplitudes,
                                   atol=1e-12)


def test_large_register_h_and_cnot_match_dense():
    # the 15-qubit kernels take a different (block) code path than small ones
    state = random_state(9, 0)
    for g in (Gate("H", (8,)), Gate("H", (0,)), Gate("CNOT", (8, 0)), Gate("CNOT", (0, 8)), Gate("CNOT", (3, 7))):
        assert np.allclose(sv.apply_gate(state, g).amplitudes, dense(g, 9) @ state.amplitudes, atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.lists(gates4, min_size=1, max_size=12), st.integers(0, 2**32 - 1))
def test_norm_and_involutions(gates, seed):
    state = random_state(4, seed)
    out = sv.apply_circuit(state, gates)
    assert abs(out.norm() - 1) < 1e-10
    back = sv.apply_circuit(out, list(reversed(gates)))
    assert np.allclose(back.amplitudes, state.amplitudes, atol=1e-12)


def test_apply_pauli():
    zero = sv.new_zero_state(1)
    assert np.allclose(sv.apply_pauli(zero, PauliString.from_label("I")).amplitudes, [1, 0])
    assert np.allclose(sv.apply_pauli(zero, PauliString.from_label("X")).amplitudes, [0, 1])
    plus = StateVector(1, np.array([R, R]))
    assert np.allclose(sv.apply_pauli(plus, PauliString.from_label("Z")).amplitudes, [R, -R])
    s = random_state(3, 7)
    y = sv.apply_pauli(s, PauliString.from_label("IYI"))
    assert np.allclose(y.amplitudes, dense(Gate("Y", (1,)), 3) @ s.amplitudes)
    with pytest.raises(ValueError):
        sv.apply_pauli(s, PauliString.from_label("XX"))


def test_measure_deterministic_and_reset():
    rng = KernelRandom.from_seed(1)
    one = StateVector(1, np.array([0, 1]))
    for _ in range(5):
        bit, post = sv.measure_z(one, 0, rng)
        assert bit == 1 and np.allclose(post.amplitudes, [0, 1])
        bit, post = sv.measure_z(sv.new_zero_state(1), 0, rng)
        assert bit == 0
    assert np.allclose(sv.reset_qubit(one, 0, rng).amplitudes, [1, 0])
    assert np.allclose(sv.reset_qubit(sv.new_zero_state(1), 0, rng).amplitudes, [1, 0])
    bell = StateVector(2, np.array([R, 0, 0, R]))
    for _ in range(10):
        out = sv.reset_qubit(bell, 1, rng)
        # qubit 1 back in |0>, qubit 0 collapsed to a definite value
        assert np.isclose(np.abs(out.amplitudes[0]) + np.abs(out.amplitudes[1]), 1)
        assert np.allclose(out.amplitudes[2:], 0)


def test_measure_born_frequencies():
    rng = KernelRandom.from_seed(2)
    plus = StateVector(1, np.array([R, R]))
    n = 100_000
    ones = sum(sv.measure_z(plus, 0, rng)[0] for _ in range(n))
    assert abs(ones / n - 0.5) < 5e-3
    # unequal weights: P(1) = 0.2, within 4 standard errors
    s = StateVector(1, np.array([math.sqrt(0.8), math.sqrt(0.2)]))
    m = 20_000
    ones = sum(sv.measure_z(s, 0, rng)[0] for _ in range(m))
    assert abs(ones / m - 0.2) < 4 * math.sqrt(0.2 * 0.8 / m)


def test_fidelity():
    s = random_state(3, 3)
    assert sv.fidelity(s, s) == pytest.approx(1.0)
    assert sv.fidelity(sv.new_zero_state(1), StateVector(1, np.array([0, 1]))) == 0.0
    t = random_state(3, 4)
    assert sv.fidelity(s, t) == pytest.approx(sv.fidelity(t, s))
    phased = StateVector(3, s.amplitudes * np.exp(0.7j))
    assert sv.fidelity(phased, t) == pytest.approx(sv.fidelity(s, t))
    a = plus_logical()
    z1 = sv.apply_pauli(a, PauliString.single(7, 0, "Z"))
    assert sv.fidelity(a, z1) == pytest.approx(0.0, abs=1e-12)


def test_tensor_and_drop_high():
    low = random_state(2, 5)
    high = StateVector(1, np.array([1, 0]))
    joint = sv.tensor(low, high)
    assert joint.n_qubits == 3
    assert np.allclose(sv.drop_high(joint, 2).amplitudes, low.amplitudes)
    with pytest.raises(ValueError):
        sv.drop_high(sv.tensor(low, StateVector(1, np.array([0, 1]))), 2)


def test_logical_states_normalised():
    for a, b in ((1, 0), (0, 1), (R, R)):
        assert logical_state(a, b).norm() == pytest.approx(1.0)
