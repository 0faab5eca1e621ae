"""Analytic non-query cost ratio and optimal alpha as n grows.

Usage: python3 scripts/cost_table.py [--K 1.0]
"""

import argparse

from partial_grover.costs import (
    analytic_totals_improved,
    analytic_totals_standard,
    optimal_alpha,
    reduction_factor,
)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--K", type=float, default=1.0, help="query cost in units of n ops")
    parser.add_argument("--alpha", type=float, default=2.0)
    args = parser.parse_args()

    print(f"{'n':>5} {'eta':>8} {'ratio':>9} {'3/(2eta)':>9} {'rel':>7} {'alpha*':>8} {'reduction':>10}")
    for n in (16, 32, 64, 128, 256, 512, 1024):
        imp = analytic_totals_improved(n, args.alpha, args.K)
        std = analytic_totals_standard(n, args.K)
        eta = imp.params["eta"]
        ratio = imp.nonquery_ops / std.nonquery_ops
        target = 3 / (2 * eta)
        print(f"{n:5d} {eta:8.3f} {ratio:9.5f} {target:9.5f} {ratio / target - 1:7.2%} "
              f"{optimal_alpha(n, args.K):8.4f} {reduction_factor(n):10.4f}")


if __name__ == "__main__":
    main()
