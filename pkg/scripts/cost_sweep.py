#!/usr/bin/env python3
"""Cost-scaling experiment over n = 9^1 .. 9^max_power.

Tabulates the interleaved search's worst-case (full-sweep) query cost
against the two baseline cost models: per-query majority boosting under
Grover (O(sqrt(n) log n)) and recursive block splitting. The
cost/sqrt(n) column flattening out is the whole point.

Run:
    python scripts/cost_sweep.py --max-power 8 [--csv sweep.csv]
"""
from __future__ import annotations

import argparse
import csv
import math

from besearch import full_sweep_cost, search_blocks, verification_repetitions
from besearch.oracles import block_recursion_cost, simple_search_cost


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-power", type=int, default=8, help="largest power of 9")
    ap.add_argument("--shots", type=int, default=1000)
    ap.add_argument("--csv", help="also write the table as CSV")
    args = ap.parse_args()

    fields = [
        "n", "blocks", "verify_reps", "interleaved_cost", "interleaved_over_sqrt_n",
        "simple_cost", "simple_over_sqrt_n", "block_cost", "block_over_sqrt_n",
    ]
    rows = []
    for j in range(1, args.max_power + 1):
        n = 9**j
        sweep = full_sweep_cost(n, args.shots)
        simple = simple_search_cost(n)
        block = block_recursion_cost(n)
        rows.append(
            dict(
                n=n,
                blocks=search_blocks(n),
                verify_reps=verification_repetitions(n, args.shots),
                interleaved_cost=sweep,
                interleaved_over_sqrt_n=round(sweep / math.sqrt(n), 3),
                simple_cost=simple,
                simple_over_sqrt_n=round(simple / math.sqrt(n), 3),
                block_cost=block,
                block_over_sqrt_n=round(block / math.sqrt(n), 3),
            )
        )

    widths = {f: max(len(f), *(len(str(r[f])) for r in rows)) for f in fields}
    print("  ".join(f.rjust(widths[f]) for f in fields))
    for r in rows:
        print("  ".join(str(r[f]).rjust(widths[f]) for f in fields))

    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        print(f"wrote {args.csv}")


if __name__ == "__main__":
    main()
