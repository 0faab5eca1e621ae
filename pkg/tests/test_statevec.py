import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partial_grover.statevec import (
    QubitSet,
    StateVector,
    amplitude_at,
    apply_hadamard,
    apply_walsh_hadamard,
    make_basis_state,
    norm,
    phase_flip_index,
    phase_flip_zero_of_set,
    random_state,
    success_probability,
)

R = 1 / np.sqrt(2)


def vec(n, amps):
    return StateVector(n, np.array(amps, dtype=float))


def test_make_basis_state():
    np.testing.assert_array_equal(make_basis_state(1, 0).amplitudes, [1.0, 0.0])
    np.testing.assert_array_equal(make_basis_state(2, 3).amplitudes, [0, 0, 0, 1.0])
    with pytest.raises(ValueError):
        make_basis_state(2, 4)


def test_statevector_shape_checked():
    with pytest.raises(ValueError):
        StateVector(2, np.zeros(3))
    with pytest.raises(ValueError):
        make_basis_state(29, 0)


def test_hadamard_examples():
    s = apply_hadamard(make_basis_state(1, 0), 0)
    np.testing.assert_allclose(s.amplitudes, [R, R], atol=1e-15)
    apply_hadamard(s, 0)
    np.testing.assert_allclose(s.amplitudes, [1, 0], atol=1e-15)
    s = apply_hadamard(make_basis_state(2, 3), 1)
    np.testing.assert_allclose(s.amplitudes, [0, R, 0, -R], atol=1e-15)
    with pytest.raises(ValueError):
        apply_hadamard(make_basis_state(2, 0), 2)


def test_walsh_hadamard_examples():
    s = apply_walsh_hadamard(make_basis_state(2, 0), QubitSet.full(2))
    np.testing.assert_allclose(s.amplitudes, [0.5] * 4, atol=1e-15)
    s = apply_walsh_hadamard(make_basis_state(2, 3), QubitSet.full(2))
    np.testing.assert_allclose(s.amplitudes, [0.5, -0.5, -0.5, 0.5], atol=1e-15)
    with pytest.raises(ValueError):
        apply_walsh_hadamard(make_basis_state(2, 0), [0, 2])


def test_qubit_set_validation():
    assert QubitSet([3, 1]) == (1, 3)
    with pytest.raises(ValueError):
        QubitSet([])
    with pytest.raises(ValueError):
        QubitSet([1, 1])


@pytest.mark.parametrize("n", range(1, 7))
def test_walsh_hadamard_columns(n):
    dim = 1 << n
    x = np.arange(dim)
    for y in range(dim):
        s = apply_walsh_hadamard(make_basis_state(n, y), range(n))
        parity = np.array([bin(v & y).count("1") & 1 for v in x])
        expected = np.where(parity == 0, 1.0, -1.0) / np.sqrt(dim)
        np.testing.assert_allclose(s.amplitudes, expected, atol=1e-12, rtol=0)


def test_phase_flips():
    s = phase_flip_index(vec(2, [0.5] * 4), 2)
    np.testing.assert_array_equal(s.amplitudes, [0.5, 0.5, -0.5, 0.5])
    np.testing.assert_array_equal(phase_flip_index(vec(1, [1, 0]), 1).amplitudes, [1, 0])
    s = phase_flip_zero_of_set(vec(2, [0.5] * 4), [0])
    np.testing.assert_array_equal(s.amplitudes, [-0.5, 0.5, -0.5, 0.5])
    s = phase_flip_zero_of_set(vec(2, [0.1, 0.2, 0.3, 0.4]), range(2))
    np.testing.assert_array_equal(s.amplitudes, [-0.1, 0.2, 0.3, 0.4])
    with pytest.raises(ValueError):
        phase_flip_index(vec(1, [1, 0]), 2)


def test_reads():
    s = vec(2, [0.5] * 4)
    assert amplitude_at(s, 3) == 0.5
    assert norm(make_basis_state(5, 7)) == 1.0
    assert success_probability(vec(1, [0, -1]), 1) == 1.0
    with pytest.raises(ValueError):
        amplitude_at(s, 4)


@st.composite
def state_and_set(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    members = draw(st.sets(st.integers(0, n - 1), min_size=1))
    state = random_state(n, np.random.default_rng(seed))
    return state, QubitSet(members)


OPS = {
    "hadamard": lambda s, qs: apply_hadamard(s, qs[0]),
    "walsh_hadamard": apply_walsh_hadamard,
    "phase_flip_index": lambda s, qs: phase_flip_index(s, qs.mask % s.dim),
    "phase_flip_zero_of_set": phase_flip_zero_of_set,
}


@settings(max_examples=120, deadline=None)
@given(state_and_set(), st.sampled_from(sorted(OPS)))
def test_norm_preserved(case, op):
    state, qset = case
    OPS[op](state, qset)
    assert abs(norm(state) - 1.0) <= 1e-12


@settings(max_examples=120, deadline=None)
@given(state_and_set(), st.sampled_from(["walsh_hadamard", "phase_flip_index", "phase_flip_zero_of_set"]))
def test_involutions(case, op):
    state, qset = case
    before = state.amplitudes.copy()
    OPS[op](state, qset)
    OPS[op](state, qset)
    np.testing.assert_allclose(state.amplitudes, before, atol=1e-12, rtol=0)


@settings(max_examples=60, deadline=None)
@given(state_and_set(max_n=10), st.data())
def test_hadamards_on_distinct_qubits_commute(case, data):
    state, _ = case
    if state.n_qubits < 2:
        return
    a, b = data.draw(st.lists(st.integers(0, state.n_qubits - 1), min_size=2, max_size=2, unique=True))
    one = apply_hadamard(apply_hadamard(state.copy(), a), b)
    two = apply_hadamard(apply_hadamard(state.copy(), b), a)
    np.testing.assert_allclose(one.amplitudes, two.amplitudes, atol=1e-12, rtol=0)


def test_walsh_hadamard_is_sequential_hadamards():
    state = random_state(7, np.random.default_rng(3))
    qs = QubitSet([1, 4, 6])
    seq = state.copy()
    for q in qs:
        apply_hadamard(seq, q)
    apply_walsh_hadamard(state, qs)
    np.testing.assert_array_equal(state.amplitudes, seq.amplitudes)
