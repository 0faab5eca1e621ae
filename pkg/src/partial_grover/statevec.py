"""Dense real-amplitude register and the elementary operators acting on it.

Qubit 0 is the least significant bit of the basis index. Every operator
mutates the register in place and returns it, so calls can be chained.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

MAX_QUBITS = 28
INV_SQRT2 = 1.0 / np.sqrt(2.0)


class StateVector:
    """2**n real amplitudes of an n-qubit register."""

    __slots__ = ("n_qubits", "amplitudes")

    def __init__(self, n_qubits: int, amplitudes: np.ndarray):
        n_qubits = int(n_qubits)
        if not 1 <= n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}], got {n_qubits}")
        amplitudes = np.ascontiguousarray(amplitudes, dtype=np.float64)
        if amplitudes.shape != (1 << n_qubits,):
            raise ValueError(
                f"expected {1 << n_qubits} amplitudes for {n_qubits} qubits, "
                f"got shape {amplitudes.shape}"
            )
        self.n_qubits = n_qubits
        self.amplitudes = amplitudes

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def copy(self) -> "StateVector":
        return StateVector(self.n_qubits, self.amplitudes.copy())

    def __repr__(self) -> str:
        return f"StateVector(n_qubits={self.n_qubits})"


class QubitSet(tuple):
    """Sorted, duplicate-free, non-empty tuple of qubit indices."""

    def __new__(cls, members: Iterable[int]):
        items = sorted(int(q) for q in members)
        if not items:
            raise ValueError("qubit set must be non-empty")
        if len(set(items)) != len(items):
            raise ValueError(f"duplicate qubits in {items}")
        if items[0] < 0:
            raise ValueError(f"negative qubit index in {items}")
        return super().__new__(cls, items)

    @classmethod
    def full(cls, n_qubits: int) -> "QubitSet":
        return cls(range(n_qubits))

    @property
    def mask(self) -> int:
        m = 0
        for q in self:
            m |= 1 << q
        return m

    def check(self, n_qubits: int) -> None:
        if self[-1] >= n_qubits:
            raise ValueError(f"qubit {self[-1]} out of range for {n_qubits} qubits")

    def __repr__(self) -> str:
        return f"QubitSet({list(self)})"


def as_qubit_set(members) -> QubitSet:
    return members if isinstance(members, QubitSet) else QubitSet(members)


def _check_index(state: StateVector, index: int) -> int:
    index = int(index)
    if not 0 <= index < state.dim:
        raise ValueError(f"index {index} out of range for {state.n_qubits} qubits")
    return index


def _check_qubit(state: StateVector, qubit: int) -> int:
    qubit = int(qubit)
    if not 0 <= qubit < state.n_qubits:
        raise ValueError(f"qubit {qubit} out of range for {state.n_qubits} qubits")
    return qubit


def block_view(state: StateVector, qset: QubitSet) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reshape the amplitudes so that runs of consecutive qubits become axes.

    Returns the view and the axes that belong to ``qset``. Fixing every other
    axis selects one block of 2**|qset| amplitudes that share their bits
    outside the set.
    """
    n = state.n_qubits
    members = set(qset)
    shape: list[int] = []
    axes: list[int] = []
    q = n - 1
    # C order: the highest qubit varies slowest, so walk from the top bit down.
    while q >= 0:
        inside = q in members
        width = 0
        while q >= 0 and (q in members) == inside:
            width += 1
            q -= 1
        if inside:
            axes.append(len(shape))
        shape.append(1 << width)
    return state.amplitudes.reshape(shape), tuple(axes)


def make_basis_state(n_qubits: int, index: int) -> StateVector:
    n_qubits = int(n_qubits)
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}], got {n_qubits}")
    index = int(index)
    if not 0 <= index < (1 << n_qubits):
        raise ValueError(f"index {index} out of range for {n_qubits} qubits")
    amps = np.zeros(1 << n_qubits)
    amps[index] = 1.0
    return StateVector(n_qubits, amps)


def random_state(n_qubits: int, rng: np.random.Generator) -> StateVector:
    amps = rng.standard_normal(1 << n_qubits)
    amps /= np.linalg.norm(amps)
    return StateVector(n_qubits, amps)


def apply_hadamard(state: StateVector, qubit: int, ledger=None) -> StateVector:
    qubit = _check_qubit(state, qubit)
    view = state.amplitudes.reshape(-1, 2, 1 << qubit)
    lo = view[:, 0, :]
    hi = view[:, 1, :]
    diff = lo - hi
    lo += hi
    lo *= INV_SQRT2
    np.multiply(diff, INV_SQRT2, out=hi)
    if ledger is not None:
        ledger.charge_ops(1)
    return state


def apply_walsh_hadamard(state: StateVector, qset, ledger=None) -> StateVector:
    """Hadamard on every qubit of ``qset``, lowest qubit first."""
    qset = as_qubit_set(qset)
    qset.check(state.n_qubits)
    for q in qset:
        apply_hadamard(state, q)
    if ledger is not None:
        ledger.charge_ops(len(qset))
    return state


def phase_flip_index(state: StateVector, t: int, ledger=None) -> StateVector:
    """Negate the amplitude of basis state ``t``; the one counted query."""
    t = _check_index(state, t)
    state.amplitudes[t] = -state.amplitudes[t]
    if ledger is not None:
        ledger.charge_query()
    return state


def phase_flip_zero_of_set(state: StateVector, qset, ledger=None) -> StateVector:
    """Negate every amplitude whose bits on ``qset`` are all zero."""
    qset = as_qubit_set(qset)
    qset.check(state.n_qubits)
    view, axes = block_view(state, qset)
    index = tuple(0 if ax in axes else slice(None) for ax in range(view.ndim))
    view[index] *= -1.0
    if ledger is not None:
        ledger.charge_ops(len(qset))
    return state


def amplitude_at(state: StateVector, index: int) -> float:
    return float(state.amplitudes[_check_index(state, index)])


def success_probability(state: StateVector, t: int) -> float:
    return amplitude_at(state, t) ** 2


def norm(state: StateVector) -> float:
    return float(np.linalg.norm(state.amplitudes))
