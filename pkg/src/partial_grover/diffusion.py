"""Inversion about average, its per-block variant, and the composite U."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from . import _kernels
from .statevec import (
    QubitSet,
    StateVector,
    apply_walsh_hadamard,
    as_qubit_set,
    block_view,
    phase_flip_index,
)

# Set to False to force the pure numpy kernels.
USE_COMPILED = True


@dataclass(frozen=True)
class PartitionSpec:
    """Either an explicit number of sets or a set-size exponent."""

    eta: Optional[int] = None
    alpha: Optional[float] = None

    def __post_init__(self):
        if (self.eta is None) == (self.alpha is None):
            raise ValueError("give exactly one of eta or alpha")
        if self.eta is not None and self.eta < 1:
            raise ValueError(f"eta must be >= 1, got {self.eta}")
        if self.alpha is not None and not self.alpha > 1:
            raise ValueError(f"alpha must be > 1, got {self.alpha}")

    @classmethod
    def explicit_eta(cls, eta: int) -> "PartitionSpec":
        return cls(eta=int(eta))

    @classmethod
    def from_alpha(cls, alpha: float) -> "PartitionSpec":
        return cls(alpha=float(alpha))

    def as_dict(self) -> dict:
        if self.eta is not None:
            return {"mode": "explicit-eta", "eta": self.eta}
        return {"mode": "alpha", "alpha": self.alpha}


@dataclass(frozen=True)
class Partition:
    """Disjoint qubit sets covering the register, in application order."""

    n_qubits: int
    sets: tuple[QubitSet, ...]

    def __post_init__(self):
        if not self.sets:
            raise ValueError("partition needs at least one set")
        seen: set[int] = set()
        for s in self.sets:
            if seen.intersection(s):
                raise ValueError("partition sets overlap")
            seen.update(s)
        if seen != set(range(self.n_qubits)):
            raise ValueError(f"partition does not cover qubits 0..{self.n_qubits - 1}")

    @property
    def eta(self) -> int:
        return len(self.sets)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.sets)

    @property
    def is_equal_size(self) -> bool:
        return len(set(self.sizes)) == 1

    @property
    def effective_alpha(self) -> float:
        """Largest set size over log2(log2 N)."""
        return max(self.sizes) / math.log2(self.n_qubits)


def build_partition(n_qubits: int, spec: PartitionSpec) -> Partition:
    if n_qubits < 2:
        raise ValueError(f"need at least 2 qubits to partition, got {n_qubits}")
    if spec.eta is not None:
        eta = spec.eta
        if n_qubits % eta:
            raise ValueError(f"eta={eta} does not divide n={n_qubits}")
        m = n_qubits // eta
        sizes = [m] * eta
    else:
        m = round(spec.alpha * math.log2(n_qubits))
        m = min(max(m, 1), n_qubits)
        eta = -(-n_qubits // m)
        sizes = [m] * (eta - 1) + [n_qubits - (eta - 1) * m]
    sets = []
    start = 0
    for size in sizes:
        sets.append(QubitSet(range(start, start + size)))
        start += size
    return Partition(n_qubits, tuple(sets))


def inversion_about_average(state: StateVector, ledger=None) -> StateVector:
    """Replace every amplitude a_i by 2 * mean - a_i."""
    amps = state.amplitudes
    mean = amps.mean()
    amps *= -1.0
    amps += 2.0 * mean
    if ledger is not None:
        ledger.charge_ops(3 * state.n_qubits)
    return state


def partial_inversion_about_average(state: StateVector, qset, ledger=None) -> StateVector:
    """Inversion about average inside every block of amplitudes that agree on
    all qubits outside ``qset``."""
    qset = as_qubit_set(qset)
    qset.check(state.n_qubits)
    lo_q, hi_q = qset[0], qset[-1]
    if USE_COMPILED and _kernels.block_reflect is not None and hi_q - lo_q + 1 == len(qset):
        # contiguous set: one summing pass and one update pass
        n = state.n_qubits
        _kernels.block_reflect(
            state.amplitudes, 1 << (n - 1 - hi_q), 1 << len(qset), 1 << lo_q
        )
    else:
        view, axes = block_view(state, qset)
        means = view.mean(axis=axes, keepdims=True)
        view *= -1.0
        view += 2.0 * means
    if ledger is not None:
        ledger.charge_ops(3 * len(qset))
    return state


def reflect_about_uniform(state: StateVector) -> StateVector:
    """W I_0 W in a single pass: subtract twice the mean. Not charged."""
    amps = state.amplitudes
    amps -= 2.0 * amps.mean()
    return state


def grover_iteration(state: StateVector, t: int, ledger=None) -> StateVector:
    phase_flip_index(state, t, ledger)
    return inversion_about_average(state, ledger)


def _composite_body(state, partition, t, ledger, hook):
    for i, qset in enumerate(partition.sets):
        phase_flip_index(state, t, ledger)
        if hook is not None:
            hook(i, state)
        partial_inversion_about_average(state, qset, ledger)


def _composite_dagger_body(state, partition, t, ledger):
    for qset in reversed(partition.sets):
        partial_inversion_about_average(state, qset, ledger)
        phase_flip_index(state, t, ledger)


def apply_composite_u(
    state: StateVector,
    partition: Partition,
    t: int,
    ledger=None,
    hook: Optional[Callable[[int, StateVector], None]] = None,
) -> StateVector:
    """Full W, then for each set in order: flip t, partial inversion on the set.

    ``hook(i, state)`` runs just before the i-th partial inversion.
    """
    _check_partition(state, partition)
    apply_walsh_hadamard(state, QubitSet.full(state.n_qubits), ledger)
    _composite_body(state, partition, t, ledger, hook)
    return state


def apply_composite_u_dagger(
    state: StateVector, partition: Partition, t: int, ledger=None
) -> StateVector:
    """The factors of ``apply_composite_u`` in reverse order."""
    _check_partition(state, partition)
    _composite_dagger_body(state, partition, t, ledger)
    apply_walsh_hadamard(state, QubitSet.full(state.n_qubits), ledger)
    return state


def apply_standard_u(state: StateVector, k: int, t: int, ledger=None) -> StateVector:
    """W followed by ``k`` standard iterations."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    apply_walsh_hadamard(state, QubitSet.full(state.n_qubits), ledger)
    for _ in range(k):
        grover_iteration(state, t, ledger)
    return state


def apply_standard_u_dagger(state: StateVector, k: int, t: int, ledger=None) -> StateVector:
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    for _ in range(k):
        inversion_about_average(state, ledger)
        phase_flip_index(state, t, ledger)
    return apply_walsh_hadamard(state, QubitSet.full(state.n_qubits), ledger)


def composite_recurrence(partition: Partition) -> float:
    """Target amplitude of U applied to |0>, from the per-block update rule.

    Just before the i-th partial inversion, t carries -a/sqrt(N) and every
    other state of its block still carries 1/sqrt(N), so with B = 2**|S_i|
    the inversion leaves ``a (1 - 2/B) + 2 (B - 1)/B``.
    """
    a = 1.0
    for size in partition.sizes:
        b = float(1 << size)
        a = a * (1 - 2 / b) + 2 * (b - 1) / b
    return a / math.sqrt(2.0**partition.n_qubits)


def _check_partition(state: StateVector, partition: Partition) -> None:
    if partition.n_qubits != state.n_qubits:
        raise ValueError(
            f"partition is for {partition.n_qubits} qubits, state has {state.n_qubits}"
        )

