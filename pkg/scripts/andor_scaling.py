#!/usr/bin/env python3
"""AND-OR tree query-cost scaling.

Part 1: two-level n x n trees -- leaf queries stay O(sqrt(N)) as the
grid grows. Part 2: fixed leaf count, growing depth -- the per-level
driver overhead compounds geometrically in d.

Run:
    python scripts/andor_scaling.py
"""
from __future__ import annotations

import argparse

from besearch import AndOrTree, GATE_OR, evaluate_quantum_cost


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", default="9,27,81", help="fanouts for the 2-level part")
    ap.add_argument("--shots", type=int, default=1000)
    args = ap.parse_args()
    grid = [int(tok) for tok in args.grid.split(",")]

    print("two-level n x n trees:")
    print(f"{'n':>6} {'N':>8} {'leaf_queries':>14} {'Q/sqrt(N)':>12}")
    for n in grid:
        tree = AndOrTree(2, (n, n), GATE_OR)
        q = evaluate_quantum_cost(tree, args.shots)
        print(f"{n:>6} {tree.n_leaves:>8} {q:>14} {q / n:>12.2f}")

    print()
    print("depth growth at fixed N = 729:")
    print(f"{'d':>3} {'fanouts':>12} {'leaf_queries':>14} {'ratio':>12}")
    prev = None
    for d, fanouts in ((1, (729,)), (2, (27, 27)), (3, (9, 9, 9))):
        q = evaluate_quantum_cost(AndOrTree(d, fanouts, GATE_OR), args.shots)
        ratio = "" if prev is None else f"{q / prev:.1f}"
        print(f"{d:>3} {'x'.join(map(str, fanouts)):>12} {q:>14} {ratio:>12}")
        prev = q


if __name__ == "__main__":
    main()
