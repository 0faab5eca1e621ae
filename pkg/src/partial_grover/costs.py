"""Operation counting for standard and partial-inversion search.

Counting convention: a Walsh-Hadamard or a zero-state inversion on a qubit
set costs one operation per qubit in the set, a query is one application of
the target phase flip, and the final zero inversion of amplitude
amplification costs ``n``. Simulated ledgers hold integers; the analytic
totals below are real-valued and never rounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass
class CostLedger:
    queries: int = 0
    nonquery_ops: int = 0

    def charge_query(self, count: int = 1) -> None:
        self.queries += count

    def charge_ops(self, count: int) -> None:
        self.nonquery_ops += count

    def __add__(self, other: "CostLedger") -> "CostLedger":
        return CostLedger(self.queries + other.queries, self.nonquery_ops + other.nonquery_ops)

    def __sub__(self, other: "CostLedger") -> "CostLedger":
        return CostLedger(self.queries - other.queries, self.nonquery_ops - other.nonquery_ops)

    def copy(self) -> "CostLedger":
        return CostLedger(self.queries, self.nonquery_ops)

    def as_dict(self) -> dict:
        return {"queries": self.queries, "nonquery_ops": self.nonquery_ops}


@dataclass
class CostSummary:
    """Analytic totals for one algorithm at one problem size.

    ``total_ops_with_query_cost`` charges every query ``K * n`` qubit
    operations on top of the non-query count. For the improved algorithm the
    loose upper bounds and the itemised non-query components are kept next
    to the exact expressions.
    """

    mode: str
    n: int
    K: float
    queries: float
    nonquery_ops: float
    total_ops_with_query_cost: float
    params: dict = field(default_factory=dict)
    query_bound: float | None = None
    nonquery_bound: float | None = None
    bound_valid: bool = True
    components: dict = field(default_factory=dict)


def cost_of_composite_u(partition) -> CostLedger:
    """Cost of one composite U (or its adjoint): the leading full W plus a
    flip and a partial inversion per set."""
    n = partition.n_qubits
    return CostLedger(
        queries=len(partition.sets),
        nonquery_ops=n + 3 * sum(len(s) for s in partition.sets),
    )


def cost_of_standard_u(n: int, k: int) -> CostLedger:
    """W followed by ``k`` standard iterations."""
    return CostLedger(queries=k, nonquery_ops=n + 3 * n * k)


def _check_n(n: int, minimum: int) -> None:
    if n < minimum:
        raise ValueError(f"n must be >= {minimum}, got {n}")


def analytic_totals_standard(n: int, K: float = 0.0) -> CostSummary:
    _check_n(n, 1)
    if K < 0:
        raise ValueError(f"K must be >= 0, got {K}")
    queries = math.pi * 2.0 ** (n / 2) / 4
    nonquery = 3 * n * queries
    return CostSummary(
        mode="standard",
        n=n,
        K=K,
        queries=queries,
        nonquery_ops=nonquery,
        total_ops_with_query_cost=K * n * queries + nonquery,
    )


def eta_for_alpha(n: int, alpha: float) -> float:
    """Real-valued number of qubit sets for set size ``alpha * log2(n)``."""
    return n / (alpha * math.log2(n))


def uts_shortfall(n: int, alpha: float) -> float:
    """``(log2 N) ** (1 - alpha)``, the per-set amplitude loss term."""
    return float(n) ** (1.0 - alpha)


def analytic_totals_improved(n: int, alpha: float, K: float = 0.0) -> CostSummary:
    _check_n(n, 4)
    if not alpha > 1:
        raise ValueError(f"alpha must be > 1, got {alpha}")
    if K < 0:
        raise ValueError(f"K must be >= 0, got {K}")
    sqrt_n = 2.0 ** (n / 2)
    eta = eta_for_alpha(n, alpha)
    eps = uts_shortfall(n, alpha)
    gain = 2 * eta * (1 - eps) + 1
    reps = math.pi * sqrt_n / 4 / gain
    queries = (2 * eta + 1) * reps
    u_ops = 2 * reps * 4 * n
    is_ops = reps * n
    nonquery = u_ops + is_ops
    return CostSummary(
        mode="improved",
        n=n,
        K=K,
        queries=queries,
        nonquery_ops=nonquery,
        total_ops_with_query_cost=K * n * queries + nonquery,
        params={"alpha": alpha, "eta": eta, "repetitions": reps},
        query_bound=math.pi * sqrt_n / 4 / (1 - eps),
        nonquery_bound=9 / 8 * math.pi * alpha * sqrt_n * math.log2(n),
        bound_valid=alpha >= 2,
        components={"u_and_u_dagger": u_ops, "zero_inversion": is_ops},
    )


def total_ops_objective(n: int, K: float, alpha: float) -> float:
    """First-order total operation count as a function of alpha.

    Normalised by pi * sqrt(N). The non-query term carries unit weight, which
    is the weighting whose stationary point is ``optimal_alpha``.
    """
    return K * n / 4 * (1 + float(n) ** (1 - alpha)) + alpha * math.log2(n)


def optimal_alpha(n: int, K: float) -> float:
    """Alpha minimising the total operation count for query cost ``K * n``.

    Solves ``n ** (alpha - 2) = K ln 2 / 4``. The result is not clamped; see
    ``alpha_warnings`` for when it leaves the range the bounds cover.
    """
    if not K > 0:
        raise ValueError(f"K must be > 0, got {K}")
    _check_n(n, 4)
    return 2 + math.log(K * math.log(2) / 4) / math.log(n)


def alpha_warnings(n: int, alpha: float) -> list[str]:
    out = []
    if alpha < 2:
        out.append(f"alpha={alpha:.4f} < 2: the non-query upper bound does not apply")
    if alpha * math.log2(n) < 1:
        out.append(f"alpha={alpha:.4f} implies a qubit set smaller than one qubit")
    return out


def reduction_factor(n: int) -> float:
    _check_n(n, 4)
    return n / (3 * math.log2(n))


def q_iteration_op_ratio(n: int, eta: int) -> float:
    """Non-query operations per amplification step, partial-inversion U over
    a standard U with ``eta`` inner iterations.

    Each step is U, U-dagger and one full zero inversion: ``9n`` against
    ``2(n + 3 eta n) + n``.
    """
    if eta < 1 or n % eta:
        raise ValueError(f"eta={eta} must be a positive divisor of n={n}")
    improved = 2 * (n + 3 * n) + n
    standard = 2 * (n + 3 * eta * n) + n
    return improved / standard
