"""Dense-matrix versions of every operator, for cross-checking the fast kernels.

Matrices are built from their entry definitions (or Kronecker products of
single-qubit factors), never by running the fast kernels on basis vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from . import diffusion, statevec
from .diffusion import Partition, PartitionSpec, build_partition, composite_recurrence
from .statevec import QubitSet, StateVector, as_qubit_set

MAX_DENSE_QUBITS = 10
MAX_PRODUCT_QUBITS = 8


class ResourceLimitError(RuntimeError):
    pass


def _check_size(n: int, cap: int = MAX_DENSE_QUBITS) -> int:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > cap:
        raise ResourceLimitError(f"dense operators are capped at {cap} qubits, got {n}")
    return 1 << n


def _popcount(a: np.ndarray) -> np.ndarray:
    count = np.zeros_like(a)
    while np.any(a):
        count += a & 1
        a = a >> 1
    return count


def dense_walsh_hadamard(n: int) -> np.ndarray:
    dim = _check_size(n)
    idx = np.arange(dim)
    parity = _popcount(idx[:, None] & idx[None, :]) & 1
    return np.where(parity == 0, 1.0, -1.0) / math.sqrt(dim)


def dense_hadamard(n: int, qubit: int) -> np.ndarray:
    _check_size(n)
    h = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)
    return np.kron(np.kron(np.eye(1 << (n - 1 - qubit)), h), np.eye(1 << qubit))


def dense_walsh_hadamard_set(n: int, qset) -> np.ndarray:
    qset = as_qubit_set(qset)
    factors = [dense_hadamard(n, q) for q in qset]
    return reduce(np.matmul, factors)


def dense_flip_index(n: int, t: int) -> np.ndarray:
    diag = np.ones(_check_size(n))
    diag[t] = -1.0
    return np.diag(diag)


def dense_flip_zero_of_set(n: int, qset) -> np.ndarray:
    idx = np.arange(_check_size(n))
    mask = as_qubit_set(qset).mask
    return np.diag(np.where(idx & mask == 0, -1.0, 1.0))


def dense_inversion_about_average(n: int) -> np.ndarray:
    dim = _check_size(n)
    return np.full((dim, dim), 2.0 / dim) - np.eye(dim)


def dense_partial_inversion(n: int, qset) -> np.ndarray:
    w = dense_walsh_hadamard_set(n, qset)
    return -(w @ dense_flip_zero_of_set(n, qset) @ w)


def _composite_factors(n: int, partition: Partition, t: int) -> list[np.ndarray]:
    """Factors of U in application order (rightmost operator first)."""
    _check_size(n, MAX_PRODUCT_QUBITS)
    flip = dense_flip_index(n, t)
    factors = [dense_walsh_hadamard(n)]
    for qset in partition.sets:
        factors += [flip, dense_partial_inversion(n, qset)]
    return factors


def dense_composite_u(n: int, partition: Partition, t: int) -> np.ndarray:
    out = np.eye(1 << n)
    for f in _composite_factors(n, partition, t):
        out = f @ out
    return out


def dense_composite_u_dagger(n: int, partition: Partition, t: int) -> np.ndarray:
    out = np.eye(1 << n)
    for f in reversed(_composite_factors(n, partition, t)):
        out = f @ out
    return out


def is_orthogonal(m: np.ndarray, tol: float = 1e-10) -> bool:
    return bool(np.max(np.abs(m.T @ m - np.eye(m.shape[0]))) <= tol)


@dataclass
class Deviation:
    operator: str
    n: int
    detail: str
    max_abs: float
    worst_input: str


@dataclass
class VerificationReport:
    tol: float
    rows: list[Deviation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.max_abs <= self.tol for r in self.rows)

    @property
    def first_failure(self) -> Deviation | None:
        return next((r for r in self.rows if r.max_abs > self.tol), None)

    def max_by_operator(self) -> dict[str, float]:
        out: dict[str, float] = {}
        for r in self.rows:
            out[r.operator] = max(out.get(r.operator, 0.0), r.max_abs)
        return out


def _test_sets(n: int, rng: np.random.Generator) -> list[QubitSet]:
    sets = {QubitSet.full(n), QubitSet([0]), QubitSet([n - 1]), QubitSet(range(0, n, 2))}
    size = int(rng.integers(1, n + 1))
    sets.add(QubitSet(rng.choice(n, size=size, replace=False)))
    return sorted(sets)


def _test_partitions(n: int) -> list[Partition]:
    parts = [build_partition(n, PartitionSpec.explicit_eta(eta)) for eta in range(1, n + 1) if n % eta == 0]
    # an interleaved partition exercises non-contiguous sets
    if n >= 2:
        parts.append(Partition(n, (QubitSet(range(0, n, 2)), QubitSet(range(1, n, 2)))))
    return parts


def _compare(name, n, detail, fast, dense, inputs, labels, report):
    """Apply ``fast`` to each input column and ``dense`` to all of them."""
    expected = dense @ inputs
    worst, worst_label = 0.0, ""
    for j in range(inputs.shape[1]):
        state = StateVector(n, inputs[:, j].copy())
        fast(state)
        dev = float(np.max(np.abs(state.amplitudes - expected[:, j])))
        if dev > worst:
            worst, worst_label = dev, labels[j]
    report.rows.append(Deviation(name, n, detail, worst, worst_label))


def verify_equivalence(
    n_max: int = 8, tol: float = 1e-10, trials: int = 50, seed: int = 0, n_min: int = 2
) -> VerificationReport:
    """Run every fast kernel against its dense matrix on random and basis states.

    Kernels are looked up on their modules at call time.
    """
    _check_size(n_max, MAX_PRODUCT_QUBITS)
    rng = np.random.default_rng(seed)
    report = VerificationReport(tol)
    for n in range(n_min, n_max + 1):
        dim = 1 << n
        rand = rng.standard_normal((dim, trials))
        rand /= np.linalg.norm(rand, axis=0)
        inputs = np.hstack([rand, np.eye(dim)])
        labels = [f"random[{j}]" for j in range(trials)] + [f"basis|{j}>" for j in range(dim)]
        t = int(rng.integers(dim))

        def cmp(name, detail, fast, dense):
            _compare(name, n, detail, fast, dense, inputs, labels, report)

        for q in range(n):
            cmp("hadamard", f"qubit={q}", lambda s, q=q: statevec.apply_hadamard(s, q),
                dense_hadamard(n, q))
        cmp("walsh_hadamard", "full", lambda s: statevec.apply_walsh_hadamard(s, range(n)),
            dense_walsh_hadamard(n))
        cmp("phase_flip_index", f"t={t}", lambda s: statevec.phase_flip_index(s, t),
            dense_flip_index(n, t))
        cmp("inversion_about_average", "full", diffusion.inversion_about_average,
            dense_inversion_about_average(n))
        for qset in _test_sets(n, rng):
            d = f"set={list(qset)}"
            cmp("walsh_hadamard_set", d, lambda s, qs=qset: statevec.apply_walsh_hadamard(s, qs),
                dense_walsh_hadamard_set(n, qset))
            cmp("phase_flip_zero_of_set", d,
                lambda s, qs=qset: statevec.phase_flip_zero_of_set(s, qs),
                dense_flip_zero_of_set(n, qset))
            cmp("partial_inversion_about_average", d,
                lambda s, qs=qset: diffusion.partial_inversion_about_average(s, qs),
                dense_partial_inversion(n, qset))
        for part in _test_partitions(n):
            d = f"sets={[list(s) for s in part.sets]} t={t}"
            cmp("composite_u", d, lambda s, p=part: diffusion.apply_composite_u(s, p, t),
                dense_composite_u(n, part, t))
            cmp("composite_u_dagger", d,
                lambda s, p=part: diffusion.apply_composite_u_dagger(s, p, t),
                dense_composite_u_dagger(n, part, t))
        # the per-block recurrence against the dense product, on |0>
        for part in _test_partitions(n):
            dense_amp = float(dense_composite_u(n, part, t)[t, 0])
            report.rows.append(
                Deviation(
                    "composite_recurrence", n, f"eta={part.eta} t={t}",
                    abs(dense_amp - composite_recurrence(part)), "basis|0>",
                )
            )
    return report
