import random

import pytest

from surfdeform.pauli import PauliOperator
from surfdeform.tableau import TableauError, TableauState


def P(text):
    return PauliOperator.from_string(text)


def source(rng):
    return lambda: rng.randrange(2)


def test_zero_state_measures_z_plus():
    state = TableauState.zero_state(3)
    for q in range(3):
        out, det = state.measure(PauliOperator.single(3, q, "Z"), source(random.Random(0)))
        assert out == 1 and det


def test_measure_x_on_zero_state_randomizes():
    rng = random.Random(1)
    seen = set()
    for _ in range(20):
        state = TableauState.zero_state(1)
        out, det = state.measure(P("X"), source(rng))
        assert not det
        seen.add(out)
        again, det2 = state.measure(P("X"), source(rng))
        assert det2 and again == out
    assert seen == {1, -1}


def test_repeat_measurement_deterministic():
    rng = random.Random(2)
    state = TableauState.zero_state(4)
    for _ in range(30):
        p = PauliOperator(4, rng.getrandbits(4), rng.getrandbits(4), 0)
        p = PauliOperator(4, p.xbits, p.zbits, (p.xbits & p.zbits).bit_count() % 4)
        out1, _ = state.measure(p, source(rng))
        out2, det = state.measure(p, source(rng))
        assert det and out1 == out2


def test_apply_pauli_flips_sign():
    state = TableauState.zero_state(2)
    state.apply_pauli(P("XI"))
    out, det = state.measure(P("ZI"), source(random.Random(0)))
    assert det and out == -1
    out, det = state.measure(P("IZ"), source(random.Random(0)))
    assert det and out == 1


def test_apply_stabilizer_element_no_change():
    state = TableauState.zero_state(2)
    state.apply_pauli(P("ZZ"))
    for text in ["ZI", "IZ"]:
        out, det = state.measure(P(text), source(random.Random(0)))
        assert det and out == 1


def test_bell_state_correlations():
    rng = random.Random(3)
    state = TableauState.zero_state(2)
    state.force_measure(P("XX"), 1, source(rng))
    out, det = state.measure(P("ZZ"), source(rng))
    assert det and out == 1
    out, det = state.measure(P("YY"), source(rng))
    assert det and out == -1


def test_force_measure():
    rng = random.Random(4)
    state = TableauState.zero_state(1)
    out, _ = state.force_measure(P("X"), -1, source(rng))
    assert out == -1
    out, det = state.measure(P("X"), source(rng))
    assert det and out == -1
    with pytest.raises(TableauError):
        state.force_measure(P("X"), 1, source(rng))


def test_forced_replay():
    state = TableauState.zero_state(1)
    out, det = state.measure(P("X"), source(random.Random(0)), forced=-1)
    assert out == -1 and not det
    assert state.expectation_sign(P("X")) == -1


def test_expectation_sign():
    state = TableauState.zero_state(2)
    assert state.expectation_sign(P("ZI")) == 1
    assert state.expectation_sign(P("ZZ")) == 1
    assert state.expectation_sign(P("XI")) is None
    assert state.expectation_sign(P("-ZI")) == -1


def test_non_hermitian_rejected():
    state = TableauState.zero_state(1)
    with pytest.raises(TableauError):
        state.measure(PauliOperator(1, 1, 1, 0), source(random.Random(0)))


def test_extend_register():
    state = TableauState.zero_state(2)
    bigger = state.extend(2)
    assert bigger.n == 4
    assert bigger.expectation_sign(P("IIZI")) == 1
    assert bigger.expectation_sign(P("IIIZ")) == 1
    same = state.extend(0)
    assert same.n == 2


def test_random_circuit_invariants_hold():
    rng = random.Random(5)
    state = TableauState.zero_state(6)
    for _ in range(120):
        x, z = rng.getrandbits(6), rng.getrandbits(6)
        p = PauliOperator(6, x, z, (x & z).bit_count() % 4)
        if rng.random() < 0.5:
            state.measure(p, source(rng))
        else:
            state.apply_pauli(p)
        state.check()
