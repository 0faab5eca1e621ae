"""State-vector simulation and operation accounting for quantum search with
partial inversion about average."""

from .amplify import RunConfig, RunReport, measure_uts, optimal_repetitions, run
from .costs import CostLedger, CostSummary
from .diffusion import Partition, PartitionSpec, build_partition
from .statevec import QubitSet, StateVector, make_basis_state

__all__ = [
    "CostLedger",
    "CostSummary",
    "Partition",
    "PartitionSpec",
    "QubitSet",
    "RunConfig",
    "RunReport",
    "StateVector",
    "build_partition",
    "make_basis_state",
    "measure_uts",
    "optimal_repetitions",
    "run",
]
