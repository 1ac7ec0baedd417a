import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steanesim import statevec as sv
from steanesim.pauli import (
    PauliFrame,
    PauliString,
    ResidualClass,
    conjugate_through,
    inject,
    measurement_flip,
    residual_class,
)
from steanesim.statevec import Gate
from steanesim.steane import ALL_ONES, TABLES, plus_logical, word

from test_statevec import random_state

paulis2 = st.builds(lambda x, z, s: PauliString(2, x, z, s), st.integers(0, 3), st.integers(0, 3),
                    st.sampled_from([1, -1]))
gates2 = st.sampled_from([Gate("H", (0,)), Gate("H", (1,)), Gate("CNOT", (0, 1)), Gate("CNOT", (1, 0)),
                          Gate("X", (0,)), Gate("Y", (1,)), Gate("Z", (0,))])


def frame(p: PauliString) -> PauliFrame:
    return PauliFrame(p)


def conj_oracle(p: PauliString, gate: Gate, n: int, seed=0) -> bool:
    """``U P |psi> == (U P U^dag) U |psi>`` on a random state, sign included."""
    psi = random_state(n, seed)
    lhs = sv.apply_gate(sv.apply_pauli(psi, p), gate)
    q = conjugate_through(frame(p), gate).frame
    rhs = sv.apply_pauli(sv.apply_gate(psi, gate), q)
    return np.allclose(lhs.amplitudes, rhs.amplitudes, atol=1e-12)


def test_label_round_trip():
    p = PauliString.from_label("-XIZY")
    assert p.label == "-XIZY"
    assert p.weight == 3
    assert PauliString.single(4, 3, "Y").label == "IIIY"
    with pytest.raises(ValueError):
        PauliString.from_label("XQ")
    with pytest.raises(ValueError):
        PauliString(2, 4, 0)


def test_h_turns_bit_flip_into_phase_flip():
    out = conjugate_through(frame(PauliString.from_label("X")), Gate("H", (0,))).frame
    assert out.label == "Z"


def test_cnot_copies_control_x_to_target():
    out = conjugate_through(frame(PauliString.from_label("XI")), Gate("CNOT", (0, 1))).frame
    assert out.label == "XX"
    assert conj_oracle(PauliString.from_label("XI"), Gate("CNOT", (0, 1)), 2)


def test_identity_frame_stays_identity():
    for g in (Gate("H", (0,)), Gate("CNOT", (1, 0)), Gate("Y", (1,))):
        assert conjugate_through(PauliFrame.identity(2), g).frame.is_identity()


@pytest.mark.parametrize("gate", [Gate("H", (0,)), Gate("H", (1,)), Gate("CNOT", (0, 1)), Gate("CNOT", (1, 0)),
                                  Gate("X", (0,)), Gate("Y", (0,)), Gate("Z", (1,))])
def test_conjugation_matches_state_vector_exhaustively(gate):
    for x, z in itertools.product(range(4), repeat=2):
        for s in (1, -1):
            assert conj_oracle(PauliString(2, x, z, s), gate, 2, seed=x + 4 * z)


@settings(max_examples=200, deadline=None)
@given(paulis2, paulis2, gates2)
def test_conjugation_is_a_homomorphism(p1, p2, gate):
    if not p1.commutes_with(p2):
        return  # the product of anticommuting Hermitian Paulis is not Hermitian
    both = conjugate_through(frame(p1 * p2), gate).frame
    each = conjugate_through(frame(p1), gate).frame * conjugate_through(frame(p2), gate).frame
    assert both == each


def test_inject():
    f = inject(PauliFrame.identity(4), PauliString.single(4, 3, "X"))
    assert f.frame.label == "IIIX"
    assert inject(f, PauliString.single(4, 3, "X")).frame.is_identity()
    y = inject(f, PauliString.single(4, 3, "Z"))
    assert y.frame.x_mask == y.frame.z_mask == 8
    with pytest.raises(ValueError):
        inject(f, PauliString.single(3, 0, "X"))


def test_measurement_flip():
    assert measurement_flip(PauliFrame.identity(3), 1) == 0
    assert measurement_flip(frame(PauliString.from_label("IXI")), 1) == 1
    assert measurement_flip(frame(PauliString.from_label("IZI")), 1) == 0
    assert measurement_flip(frame(PauliString.from_label("IYI")), 1) == 1


def test_residual_class_examples():
    assert residual_class(PauliString(7), TABLES) is ResidualClass.IDENTITY
    assert residual_class(PauliString(7, word("1010101"), 0), TABLES) is ResidualClass.STABILIZER
    assert residual_class(PauliString.single(7, 4, "X"), TABLES) is ResidualClass.DETECTABLE
    assert residual_class(PauliString(7, ALL_ONES, 0), TABLES) is ResidualClass.LOGICAL_X
    assert residual_class(PauliString(7, 0, ALL_ONES), TABLES) is ResidualClass.LOGICAL_Z
    assert residual_class(PauliString(7, ALL_ONES, ALL_ONES), TABLES) is ResidualClass.LOGICAL_Y
    with pytest.raises(ValueError):
        residual_class(PauliString(6), TABLES)


def test_whole_stabilizer_group_is_stabilizer():
    # 8 X-type times 8 Z-type generators' span = 64 elements
    n = 0
    for cx in TABLES.dual_codewords:
        for cz in TABLES.dual_codewords:
            expected = ResidualClass.IDENTITY if cx == cz == 0 else ResidualClass.STABILIZER
            assert residual_class(PauliString(7, cx, cz), TABLES) is expected
            n += 1
    assert n == 64


def test_stabilizers_fix_the_code_states():
    plus = plus_logical()
    for cx in TABLES.dual_codewords:
        for cz in TABLES.dual_codewords:
            out = sv.apply_pauli(plus, PauliString(7, cx, cz))
            assert sv.fidelity(plus, out) == pytest.approx(1.0)


# --- engine equivalence on random small circuits -------------------------------------------------

def _random_circuit(rng, n, depth):
    gates = []
    for _ in range(depth):
        kind = rng.choice(["H", "X", "Y", "Z", "CNOT"] if n > 1 else ["H", "X", "Y", "Z"])
        if kind == "CNOT":
            c, t = rng.choice(n, size=2, replace=False)
            gates.append(Gate("CNOT", (int(c), int(t))))
        else:
            gates.append(Gate(str(kind), (int(rng.integers(n)),)))
    return gates


def test_frame_and_state_vector_agree_on_random_faulty_circuits():
    rng = np.random.default_rng(12)
    for trial in range(1000):
        n = int(rng.integers(1, 5))
        gates = _random_circuit(rng, n, int(rng.integers(1, 12)))
        psi = random_state(n, trial)
        ideal = sv.apply_circuit(psi, gates)
        noisy = psi
        fr = PauliFrame.identity(n)
        for g in gates:
            noisy = sv.apply_gate(noisy, g)
            fr = conjugate_through(fr, g)
            if rng.random() < 0.4:
                p = PauliString(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)))
                noisy = sv.apply_pauli(noisy, p)
                fr = inject(fr, p)
        expected = sv.apply_pauli(ideal, fr.frame)
        assert sv.fidelity(expected, noisy) == pytest.approx(1.0, abs=1e-10)
