import itertools

import pytest

from steanesim import statevec as sv
from steanesim.engines import PauliFrameEngine, StateVectorEngine
from steanesim.noise import NoiseParams
from steanesim.pauli import PauliString
from steanesim.recovery import correct_round, extract_x_syndrome, extract_z_syndrome, vote
from steanesim.steane import Syndrome

ZERO = NoiseParams(0.0, 0.0)
ENGINES = [PauliFrameEngine, lambda: StateVectorEngine(0)]


def with_error(engine, p):
    reg = engine.prepare("plus_L")
    return reg * p if isinstance(engine, PauliFrameEngine) else sv.apply_pauli(reg, p)


def test_vote_majority():
    assert vote(5, 5, 5) == Syndrome(5)
    assert vote(5, 5, 2) == Syndrome(5)
    assert vote(1, 2, 4) == Syndrome(0)
    assert vote(3, 3, 5) == Syndrome(3)
    assert vote(3, 5, 3) == Syndrome(3)
    assert vote(5, 3, 3) == Syndrome(3)
    assert vote(0, 0, 0) == Syndrome(0)


def test_vote_bitwise_when_all_differ():
    # 0b011, 0b101, 0b110 -> every bit is set in exactly two of them
    assert vote(3, 5, 6) == Syndrome(7)
    for a, b, c in itertools.permutations(range(8), 3):
        expected = sum(1 << k for k in range(3) if ((a >> k) & 1) + ((b >> k) & 1) + ((c >> k) & 1) >= 2)
        assert vote(a, b, c) == Syndrome(expected)


@pytest.mark.parametrize("make", ENGINES)
@pytest.mark.parametrize("q", range(7))
def test_extraction_reads_single_errors(make, q):
    engine = make()
    for letter, extract in (("X", extract_x_syndrome), ("Z", extract_z_syndrome)):
        data = with_error(engine, PauliString.single(7, q, letter))
        data, s = extract(data, ZERO, engine, 0)
        assert s == q + 1
        # the other kind of syndrome is blind to this error
        other = extract_z_syndrome if extract is extract_x_syndrome else extract_x_syndrome
        _, s = other(data, ZERO, engine, 0)
        assert s == 0


@pytest.mark.parametrize("make", ENGINES)
def test_round_removes_single_errors_and_reports(make):
    engine = make()
    data = with_error(engine, PauliString.single(7, 4, "Y"))
    data, report = correct_round(data, ZERO, engine, 1)
    assert report.z_syndromes == [Syndrome(5)] * 3 and report.x_syndromes == [Syndrome(5)] * 3
    assert report.voted_z == report.voted_x == Syndrome(5)
    assert report.corrections_applied == [("Z", 5), ("X", 5)]
    assert report.ancilla_retries == 0
    assert engine.fidelity(data, "plus_L") == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("make", ENGINES)
def test_clean_extraction_leaves_data_alone(make):
    engine = make()
    for extract in (extract_x_syndrome, extract_z_syndrome):
        data, s = extract(engine.prepare("plus_L"), ZERO, engine, 3)
        assert s == 0
        assert engine.fidelity(data, "plus_L") == pytest.approx(1.0, abs=1e-10)


def test_clean_data_gets_no_corrections():
    data, report = correct_round(PauliFrameEngine().prepare("plus_L"), ZERO, "pauli_frame", 0)
    assert report.corrections_applied == []
    assert data.is_identity()


def test_wrong_register_size():
    with pytest.raises(ValueError):
        extract_x_syndrome(PauliString(8), ZERO, "pauli_frame", 0)
