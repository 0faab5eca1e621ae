"""Amplitude amplification driver for the standard and partial-inversion searches."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .costs import CostLedger, cost_of_composite_u, cost_of_standard_u
from .diffusion import (
    Partition,
    PartitionSpec,
    _composite_body,
    _composite_dagger_body,
    apply_composite_u,
    apply_composite_u_dagger,
    apply_standard_u,
    apply_standard_u_dagger,
    build_partition,
    composite_recurrence,
    grover_iteration,
    reflect_about_uniform,
)
from .statevec import (
    MAX_QUBITS,
    QubitSet,
    StateVector,
    amplitude_at,
    apply_walsh_hadamard,
    make_basis_state,
    phase_flip_index,
    phase_flip_zero_of_set,
    success_probability,
)

MODES = ("standard", "improved")


@dataclass
class RunConfig:
    n_qubits: int
    target: Union[int, str] = "random"
    mode: str = "standard"
    partition_spec: Optional[PartitionSpec] = None
    repetitions: Union[int, str] = "auto"
    seed: int = 0
    query_cost_K: float = 0.0
    # Standard mode only: U = W followed by this many iterations. 0 is plain search.
    inner_iterations: int = 0
    paper_convention: bool = False

    def __post_init__(self):
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}], got {self.n_qubits}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.target != "random":
            if isinstance(self.target, bool) or not isinstance(self.target, (int, np.integer)):
                raise ValueError(f"target must be an index or 'random', got {self.target!r}")
            if not 0 <= self.target < (1 << self.n_qubits):
                raise ValueError(f"target {self.target} out of range for n={self.n_qubits}")
        if self.repetitions != "auto":
            if not isinstance(self.repetitions, (int, np.integer)) or self.repetitions < 0:
                raise ValueError(f"repetitions must be 'auto' or >= 0, got {self.repetitions!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.query_cost_K < 0:
            raise ValueError(f"query_cost_K must be >= 0, got {self.query_cost_K}")
        if self.inner_iterations < 0:
            raise ValueError("inner_iterations must be >= 0")
        if self.mode == "improved":
            if self.partition_spec is None:
                raise ValueError("improved mode needs a partition spec")
            # raises on an invalid spec for this register size
            build_partition(self.n_qubits, self.partition_spec)

    @property
    def partition(self) -> Optional[Partition]:
        if self.mode != "improved":
            return None
        return build_partition(self.n_qubits, self.partition_spec)

    def resolved_target(self) -> int:
        if self.target == "random":
            rng = np.random.default_rng(self.seed)
            return int(rng.integers(0, 1 << self.n_qubits))
        return int(self.target)

    def as_dict(self) -> dict:
        return {
            "n_qubits": self.n_qubits,
            "target": self.target if self.target == "random" else int(self.target),
            "resolved_target": self.resolved_target(),
            "mode": self.mode,
            "partition_spec": self.partition_spec.as_dict() if self.partition_spec else None,
            "repetitions": self.repetitions,
            "seed": self.seed,
            "query_cost_K": self.query_cost_K,
            "inner_iterations": self.inner_iterations,
            "paper_convention": self.paper_convention,
        }


@dataclass
class RunReport:
    config: RunConfig
    target: int
    measured_uts: float
    repetitions_used: int
    success_probability: float
    ledger: CostLedger
    ledger_paper_convention: CostLedger
    predicted: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def reported_ledger(self) -> CostLedger:
        return self.ledger_paper_convention if self.config.paper_convention else self.ledger

    def as_dict(self, timing: bool = True) -> dict:
        return {
            "config": self.config.as_dict(),
            "measured_uts": self.measured_uts,
            "repetitions": self.repetitions_used,
            "success_probability": self.success_probability,
            "ledger": self.reported_ledger.as_dict(),
            "predicted": dict(self.predicted),
            "wall_time_s": self.wall_time if timing else None,
        }


def _apply_u(state: StateVector, config: RunConfig, t: int, ledger=None) -> StateVector:
    if config.mode == "improved":
        return apply_composite_u(state, config.partition, t, ledger)
    return apply_standard_u(state, config.inner_iterations, t, ledger)


def measure_uts(config: RunConfig) -> float:
    """Target amplitude after one U on |0>."""
    t = config.resolved_target()
    state = _apply_u(make_basis_state(config.n_qubits, 0), config, t)
    return amplitude_at(state, t)


def optimal_repetitions(uts_magnitude: float) -> int:
    """Number of amplification steps r maximising sin^2((2r + 1) theta)."""
    if not 0 < uts_magnitude <= 1:
        raise ValueError(f"|U_ts| must be in (0, 1], got {uts_magnitude}")
    theta = math.asin(uts_magnitude)
    return max(0, math.floor(math.pi / (4 * theta)))


def rotation_success(uts_magnitude: float, r: int) -> float:
    return math.sin((2 * r + 1) * math.asin(uts_magnitude)) ** 2


def predicted_uts_lower_bound(n: int, partition: Partition) -> float:
    """Guaranteed target amplitude of U on |0> for an equal-size partition."""
    if partition.n_qubits != n:
        raise ValueError(f"partition is for {partition.n_qubits} qubits, not {n}")
    if not partition.is_equal_size:
        raise ValueError(f"bound needs equal-size sets, got sizes {partition.sizes}")
    alpha = partition.effective_alpha
    if alpha < 1:
        raise ValueError(f"effective alpha {alpha:.4f} < 1")
    eta = partition.eta
    return (2 * eta * (1 - float(n) ** (1 - alpha)) + 1) / math.sqrt(2.0**n)


def amplify(
    state: StateVector,
    apply_u,
    apply_u_dagger,
    t: int,
    repetitions: int,
    ledger=None,
) -> StateVector:
    """Generic amplification: U, then ``repetitions`` of (I_t, U-dagger, I_0, U).

    ``apply_u`` and ``apply_u_dagger`` take ``(state, ledger)``.
    """
    full = QubitSet.full(state.n_qubits)
    apply_u(state, ledger)
    for _ in range(repetitions):
        phase_flip_index(state, t, ledger)
        apply_u_dagger(state, ledger)
        phase_flip_zero_of_set(state, full, ledger)
        apply_u(state, ledger)
    return state


def _amplify_composite_fused(
    state: StateVector, partition: Partition, t: int, repetitions: int, ledger: CostLedger
) -> StateVector:
    # U-dagger ends with W and the next U starts with W; W I_0 W is a single
    # mean subtraction, so each step costs O(N) per set instead of O(N n).
    n = state.n_qubits
    apply_composite_u(state, partition, t, ledger)
    for _ in range(repetitions):
        phase_flip_index(state, t, ledger)
        _composite_dagger_body(state, partition, t, ledger)
        reflect_about_uniform(state)
        ledger.charge_ops(3 * n)
        _composite_body(state, partition, t, ledger, None)
    return state


def run(config: RunConfig, fused: bool = True) -> RunReport:
    """Run the configured search from |0> and account for every operation."""
    start = time.perf_counter()
    n = config.n_qubits
    t = config.resolved_target()
    sqrt_n = math.sqrt(2.0**n)
    ledger = CostLedger()
    predicted: dict = {}

    if config.mode == "improved":
        partition = config.partition
        uts = measure_uts(config)
        r = _repetitions(config, uts)
        state = make_basis_state(n, 0)
        if fused:
            _amplify_composite_fused(state, partition, t, r, ledger)
        else:
            amplify(
                state,
                lambda s, lg: apply_composite_u(s, partition, t, lg),
                lambda s, lg: apply_composite_u_dagger(s, partition, t, lg),
                t,
                r,
                ledger,
            )
        lone_u = cost_of_composite_u(partition)
        eta = partition.eta
        gain = None
        if partition.is_equal_size and partition.effective_alpha >= 1:
            bound = predicted_uts_lower_bound(n, partition)
            predicted["uts_lower_bound"] = bound
            predicted["bound_applicable"] = partition.effective_alpha >= 2
            gain = bound * sqrt_n
        predicted["uts_recurrence"] = composite_recurrence(partition)
        if gain is not None:
            reps = math.pi * sqrt_n / 4 / gain
            predicted["queries"] = (2 * eta + 1) * reps
            predicted["nonquery_ops"] = 9 / 8 * 2 * math.pi * sqrt_n * n / gain
        predicted["queries_identity"] = r * (2 * eta + 1) + eta
        predicted["nonquery_ops_identity"] = 9 * n * r + 4 * n
    else:
        k = config.inner_iterations
        if k == 0:
            uts = 1.0 / sqrt_n
            r = _repetitions(config, uts)
            state = make_basis_state(n, 0)
            apply_walsh_hadamard(state, QubitSet.full(n), ledger)
            for _ in range(r):
                grover_iteration(state, t, ledger)
            lone_u = cost_of_standard_u(n, 0)
            predicted["queries_identity"] = r
            predicted["nonquery_ops_identity"] = n + 3 * n * r
        else:
            uts = measure_uts(config)
            r = _repetitions(config, uts)
            state = make_basis_state(n, 0)
            amplify(
                state,
                lambda s, lg: apply_standard_u(s, k, t, lg),
                lambda s, lg: apply_standard_u_dagger(s, k, t, lg),
                t,
                r,
                ledger,
            )
            lone_u = cost_of_standard_u(n, k)
            predicted["queries_identity"] = r * (2 * k + 1) + k
            predicted["nonquery_ops_identity"] = r * (2 * (n + 3 * k * n) + n) + n + 3 * k * n
        predicted["uts_lower_bound"] = 1.0 / sqrt_n if k == 0 else None
        predicted["queries"] = math.pi * sqrt_n / 4
        predicted["nonquery_ops"] = 3 * n * math.pi * sqrt_n / 4

    predicted["success_rotation"] = rotation_success(abs(uts), r)
    if config.query_cost_K and "queries" in predicted:
        predicted["total_ops"] = config.query_cost_K * n * predicted["queries"] + predicted["nonquery_ops"]

    return RunReport(
        config=config,
        target=t,
        measured_uts=uts,
        repetitions_used=r,
        success_probability=min(1.0, success_probability(state, t)),
        ledger=ledger,
        ledger_paper_convention=ledger - lone_u,
        predicted=predicted,
        wall_time=time.perf_counter() - start,
    )


def _repetitions(config: RunConfig, uts: float) -> int:
    if config.repetitions != "auto":
        return int(config.repetitions)
    if uts == 0:
        raise ValueError("measured U_ts is 0; cannot choose a repetition count")
    return optimal_repetitions(min(1.0, abs(uts)))
