"""Compare query counts of standard and partial-inversion search over n.

Usage: python3 scripts/sweep_queries.py [--n-max 20] [--eta 2]
"""

import argparse

from partial_grover.amplify import RunConfig, run
from partial_grover.diffusion import PartitionSpec


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--n-min", type=int, default=8)
    parser.add_argument("--n-max", type=int, default=20)
    parser.add_argument("--eta", type=int, default=2)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    print(f"{'n':>3} {'U_ts':>12} {'reps':>5} {'q_std':>6} {'q_imp':>6} {'gap':>4} {'P_imp':>10}")
    for n in range(args.n_min, args.n_max + 1):
        if n % args.eta:
            continue
        std = run(RunConfig(n_qubits=n, seed=args.seed))
        imp = run(RunConfig(n_qubits=n, mode="improved", seed=args.seed,
                            partition_spec=PartitionSpec.explicit_eta(args.eta)))
        gap = imp.ledger.queries - std.ledger.queries
        print(f"{n:3d} {imp.measured_uts:12.6g} {imp.repetitions_used:5d} {std.ledger.queries:6d} "
              f"{imp.ledger.queries:6d} {gap:4d} {imp.success_probability:10.6f}")


if __name__ == "__main__":
    main()
