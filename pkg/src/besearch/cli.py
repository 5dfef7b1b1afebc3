"""Batch experiment front-end.

Subcommands: ``search`` (one search execution), ``curve`` (exact
per-round statistics), ``sweep`` (cost scaling over an n grid),
``andor`` (tree evaluation plus per-level cost table), ``check-facts``
(dense and binomial oracle suites), ``baselines`` (intro cost models).

Every CSV starts with a versioned schema comment line, and every row
carries the config hash and the seed, so identical config + seed
reproduces byte-identical files. A config file (JSON document or
``key = value`` lines) is merged underneath explicit flags. The
environment variable ``BESEARCH_OUTDIR`` supplies a default directory
for relative output paths.

Exit codes: 0 success, 1 invariant violation, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .andor import evaluate_classical, evaluate_quantum_cost, evaluate_quantum_sim, load_tree
from .driver import (
    DEFAULT_SHOTS,
    ceil_log9,
    exact_success_curve,
    full_sweep_cost,
    run_search,
    search_blocks,
    verification_repetitions,
)
from .error_reduction import schedule_for_round
from .model import IndexClass, ProblemInstance, make_instance
from .oracles import (
    amplification_residual,
    block_recursion_cost,
    enumerate_majority,
    majority_oracle_gap,
    random_scenario,
    simple_search_cost,
    structured_vs_dense_round,
)

CSV_SCHEMA = 1

OUTDIR_ENV = "BESEARCH_OUTDIR"


class UsageError(Exception):
    """Bad flag/config combination; reported with exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    """Resolved parameters of one subcommand invocation.

    Precedence: explicit flag > config file > built-in default (the
    defaults carry the algorithm's constants: 1000 shots, 9/10 promise).
    The hash identifies the experiment; output paths are excluded from it.
    """

    cmd: str
    params: dict
    config_hash: str

    def __getitem__(self, key):
        return self.params[key]

    def get(self, key, default=None):
        return self.params.get(key, default)


def resolve_config(cmd: str, args: argparse.Namespace, defaults: dict) -> RunConfig:
    params = _merged(args, defaults)
    return RunConfig(cmd=cmd, params=params, config_hash=_config_hash(cmd, params))


def _resolve_out(path: Optional[str]) -> Optional[str]:
    if path is None:
        return None
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir and not os.path.isabs(path):
        return os.path.join(outdir, path)
    return path


def _config_hash(cmd: str, params: dict) -> str:
    """Short stable hash of the resolved configuration.

    Output paths are excluded so renaming a file does not change the
    identity of the experiment.
    """
    payload = {k: v for k, v in sorted(params.items()) if k not in ("csv", "json", "config")}
    payload["cmd"] = cmd
    blob = json.dumps(payload, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:12]


def _write_rows(cfg: RunConfig, fieldnames: list[str], rows: list[dict]) -> None:
    seed = cfg.get("seed", "")
    tagged = [dict(row, config_hash=cfg.config_hash, seed=seed) for row in rows]
    names = fieldnames + ["config_hash", "seed"]
    if cfg.get("csv"):
        path = _resolve_out(cfg["csv"])
        with open(path, "w", newline="", encoding="utf-8") as fh:
            fh.write(
                f"# besearch-csv schema={CSV_SCHEMA} cmd={cfg.cmd} "
                f"config_hash={cfg.config_hash} seed={seed}\n"
            )
            writer = csv.DictWriter(fh, fieldnames=names, lineterminator="\n")
            writer.writeheader()
            writer.writerows(tagged)
        print(f"wrote {path}")
    if cfg.get("json"):
        path = _resolve_out(cfg["json"])
        doc = {
            "schema": CSV_SCHEMA,
            "cmd": cfg.cmd,
            "config_hash": cfg.config_hash,
            "seed": seed,
            "rows": tagged,
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, sort_keys=True)
            fh.write("\n")
        print(f"wrote {path}")


def _load_config(path: Optional[str]) -> dict:
    if path is None:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        doc = json.loads(text)
        if not isinstance(doc, dict):
            raise UsageError("config JSON must be an object")
        return doc
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def _merged(args: argparse.Namespace, defaults: dict) -> dict:
    """Resolve parameters: explicit flag > config file > default."""
    config = _load_config(getattr(args, "config", None))
    unknown = set(config) - set(defaults)
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    params = {}
    for key, default in defaults.items():
        cli_value = getattr(args, key, None)
        if cli_value is not None:
            params[key] = cli_value
        elif key in config:
            params[key] = _coerce(config[key], default)
        else:
            params[key] = default
    return params


def _coerce(value, default):
    if isinstance(value, str):
        if isinstance(default, bool):
            return value.lower() in ("1", "true", "yes", "on")
        if isinstance(default, int):
            return int(value)
        if isinstance(default, float):
            return float(value)
    return value


def _parse_grid(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"bad integer list {text!r}") from None


def _instance(cfg, n: Optional[int] = None):
    try:
        return make_instance(
            cfg["n"] if n is None else n,
            cfg["t"], cfg["p_good"], cfg["p_bad"],
            strict=not cfg["relaxed"],
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------- search

SEARCH_DEFAULTS = dict(
    n=81, t=1, p_good=0.9, p_bad=0.1, seed=0, shots=DEFAULT_SHOTS, relaxed=False
)


def cmd_search(args) -> int:
    cfg = resolve_config("search", args, SEARCH_DEFAULTS)
    inst = _instance(cfg)
    try:
        result = run_search(inst, cfg["seed"], cfg["shots"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(
        f"besearch search: n={inst.n} t={inst.t} strict={inst.strict} "
        f"seed={cfg['seed']} shots={cfg['shots']} config={cfg.config_hash}"
    )
    if result.outcome == "found":
        cls = inst.classes[result.found_class]
        print(f"outcome: found class={result.found_class} is_solution={cls.is_solution}")
    else:
        print("outcome: no_solutions")
    print(f"cost: {result.total_cost}")
    for row in result.trace:
        print(
            f"trace: m={row.m} alpha={row.alpha:.6f} beta={row.beta:.6f} "
            f"theta={row.theta:.6f} p_solution={row.p_solution:.6g} "
            f"cost={row.cost} shots={row.shots} verified={row.verified}"
        )
    return 0


# ----------------------------------------------------------------- curve

CURVE_DEFAULTS = dict(
    n=81, t=1, p_good=0.9, p_bad=0.1, m_max=-1, relaxed=False, csv=None, json=None
)


def cmd_curve(args) -> int:
    cfg = resolve_config("curve", args, CURVE_DEFAULTS)
    inst = _instance(cfg)
    m_max = cfg["m_max"] if cfg["m_max"] >= 0 else ceil_log9(inst.n)
    rows = [
        dict(m=pt.m, alpha=repr(pt.alpha), beta=repr(pt.beta), theta=repr(pt.theta),
             p_solution=repr(pt.p_solution), cost=pt.cost, strict=inst.strict)
        for pt in exact_success_curve(inst, m_max)
    ]
    for row in rows:
        print(
            f"m={row['m']} alpha={row['alpha']} beta={row['beta']} "
            f"theta={row['theta']} p_solution={row['p_solution']} cost={row['cost']}"
        )
    _write_rows(cfg, ["m", "alpha", "beta", "theta", "p_solution", "cost", "strict"], rows)
    return 0


# ----------------------------------------------------------------- sweep

SWEEP_DEFAULTS = dict(
    n="9,81,729,6561", t=1, p_good=0.9, p_bad=0.1, seed=0,
    shots=DEFAULT_SHOTS, relaxed=False, csv=None, json=None,
)


def cmd_sweep(args) -> int:
    cfg = resolve_config("sweep", args, SWEEP_DEFAULTS)
    grid = _parse_grid(cfg["n"])
    if not grid:
        raise UsageError("empty n grid")
    substreams = np.random.SeedSequence(cfg["seed"]).spawn(len(grid))
    rows = []
    for n, ss in zip(grid, substreams):
        inst = _instance(cfg, n=n)
        result = run_search(inst, ss, cfg["shots"])
        sweep_cost = full_sweep_cost(n, cfg["shots"])
        rows.append(
            dict(
                n=n, t=inst.t, blocks=search_blocks(n),
                verify_reps=verification_repetitions(n, cfg["shots"]),
                outcome=result.outcome,
                found_class="" if result.found_class is None else result.found_class,
                search_cost=result.total_cost,
                full_sweep_cost=sweep_cost,
                cost_over_sqrt_n=repr(sweep_cost / math.sqrt(n)),
                strict=inst.strict,
            )
        )
    for row in rows:
        print(
            f"n={row['n']} outcome={row['outcome']} search_cost={row['search_cost']} "
            f"full_sweep_cost={row['full_sweep_cost']} cost_over_sqrt_n={row['cost_over_sqrt_n']}"
        )
    _write_rows(
        cfg,
        ["n", "t", "blocks", "verify_reps", "outcome", "found_class",
         "search_cost", "full_sweep_cost", "cost_over_sqrt_n", "strict"],
        rows,
    )
    return 0


# ----------------------------------------------------------------- andor

ANDOR_DEFAULTS = dict(tree=None, seed=0, shots=DEFAULT_SHOTS, csv=None, json=None)


def cmd_andor(args) -> int:
    cfg = resolve_config("andor", args, ANDOR_DEFAULTS)
    if cfg["tree"] is None:
        raise UsageError("andor requires --tree FILE")
    try:
        tree, bits = load_tree(cfg["tree"])
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot load tree: {exc}") from None
    classical = evaluate_classical(tree, bits)
    simulated = evaluate_quantum_sim(tree, bits, cfg["seed"], cfg["shots"])
    print(
        f"besearch andor: depth={tree.depth} root={tree.root_gate} "
        f"fanouts={','.join(map(str, tree.fanouts))} leaves={tree.n_leaves} "
        f"seed={cfg['seed']} config={cfg.config_hash}"
    )
    print(f"classical: {classical}")
    print(f"quantum_sim: {simulated}")
    rows = []
    levels = []
    sub = tree
    while sub.depth > 0:
        levels.append(sub)
        sub = sub.child()
    for node in reversed(levels):
        q = evaluate_quantum_cost(node, cfg["shots"])
        rows.append(
            dict(
                level=node.depth, fanout=node.fanouts[0], leaves=node.n_leaves,
                gate=node.root_gate, leaf_queries=q,
                q_over_sqrt_leaves=repr(q / math.sqrt(node.n_leaves)),
            )
        )
    for row in rows:
        print(
            f"cost: level={row['level']} fanout={row['fanout']} leaves={row['leaves']} "
            f"leaf_queries={row['leaf_queries']} q_over_sqrt_leaves={row['q_over_sqrt_leaves']}"
        )
    _write_rows(
        cfg, ["level", "fanout", "leaves", "gate", "leaf_queries", "q_over_sqrt_leaves"], rows
    )
    return 0


# ------------------------------------------------------------ check-facts

CHECK_DEFAULTS = dict(scenarios=200, dims="2,4,8,16", seed=0, max_r=15)

DENSE_TOL = 1e-10
ENUM_TOL = 1e-12
ROUND_TOL = 1e-9


def cmd_check_facts(args) -> int:
    cfg = resolve_config("check-facts", args, CHECK_DEFAULTS)
    dims = _parse_grid(cfg["dims"])
    failures = 0

    worst = 0.0
    for i in range(cfg["scenarios"]):
        scenario = random_scenario(dims[i % len(dims)], cfg["seed"] + i)
        worst = max(worst, amplification_residual(scenario))
    ok = worst <= DENSE_TOL
    failures += not ok
    print(f"rotation-oracle: max residual {worst:.3e} (tol {DENSE_TOL:.0e}) "
          f"over {cfg['scenarios']} scenarios: {'ok' if ok else 'FAIL'}")

    gap = majority_oracle_gap(cfg["max_r"])
    ok = gap <= ENUM_TOL
    failures += not ok
    print(f"majority-oracle: max gap {gap:.3e} (tol {ENUM_TOL:.0e}) "
          f"odd r <= {cfg['max_r']}: {'ok' if ok else 'FAIL'}")

    want = (5, 7, 7)
    got = tuple(schedule_for_round(k).r for k in (1, 2, 3))
    oracle = []
    for k in (1, 2, 3):
        r = 1
        while enumerate_majority(r, 0.1) > 2.0 ** -(k + 5):
            r += 2
        oracle.append(r)
    ok = got == want == tuple(oracle)
    failures += not ok
    print(f"round-schedule: r1,r2,r3 = {got} (oracle {tuple(oracle)}, "
          f"expected {want}): {'ok' if ok else 'FAIL'}")

    worst = 0.0
    for pvals in ((0.0,), (0.3,), (1.0,), (0.9, 0.1), (1.0, 0.0), (0.75, 0.25), (0.5, 0.5)):
        classes = tuple(
            IndexClass(p=p, count=1, is_solution=p >= 0.5) for p in pvals
        )
        inst = ProblemInstance(classes, strict=False)
        worst = max(worst, structured_vs_dense_round(inst))
    ok = worst <= ROUND_TOL
    failures += not ok
    print(f"round-crosscheck: max deviation {worst:.3e} (tol {ROUND_TOL:.0e}): "
          f"{'ok' if ok else 'FAIL'}")

    return 1 if failures else 0


# -------------------------------------------------------------- baselines

BASELINES_DEFAULTS = dict(n="100,1000,10000,100000,1000000", csv=None, json=None)


def cmd_baselines(args) -> int:
    cfg = resolve_config("baselines", args, BASELINES_DEFAULTS)
    grid = _parse_grid(cfg["n"])
    rows = []
    for n in grid:
        simple = simple_search_cost(n)
        block = block_recursion_cost(n)
        rows.append(
            dict(
                n=n,
                simple_cost=simple,
                simple_over_sqrtn_log2n=repr(simple / (math.sqrt(n) * math.log2(n))),
                block_cost=block,
                block_over_sqrt_n=repr(block / math.sqrt(n)),
            )
        )
    for row in rows:
        print(
            f"n={row['n']} simple_cost={row['simple_cost']} block_cost={row['block_cost']} "
            f"block_over_sqrt_n={row['block_over_sqrt_n']}"
        )
    _write_rows(
        cfg,
        ["n", "simple_cost", "simple_over_sqrtn_log2n", "block_cost", "block_over_sqrt_n"],
        rows,
    )
    return 0


# ------------------------------------------------------------------ main

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="besearch",
        description="Quantum search over bounded-error subroutines: exact simulator and cost toolkit.",
    )
    parser.add_argument("--version", action="version", version=f"besearch {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add_common(p, *, seeded=False, emits=False, instance=False, grid_n=False):
        p.add_argument("--config", help="config file (JSON or key = value lines)")
        if instance:
            if grid_n:
                p.add_argument("--n", help="comma list of space sizes")
            else:
                p.add_argument("--n", type=int)
            p.add_argument("--t", type=int)
            p.add_argument("--p-good", dest="p_good", type=float)
            p.add_argument("--p-bad", dest="p_bad", type=float)
            p.add_argument("--relaxed", action="store_const", const=True,
                           help="allow instances outside the 9/10-1/10 promise")
        if seeded:
            p.add_argument("--seed", type=int)
            p.add_argument("--shots", type=int)
        if emits:
            p.add_argument("--csv", help="write rows as CSV")
            p.add_argument("--json", help="write rows as JSON")

    p = sub.add_parser("search", help="run one search execution")
    add_common(p, seeded=True, instance=True)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("curve", help="exact per-round statistics")
    add_common(p, emits=True, instance=True)
    p.add_argument("--m-max", dest="m_max", type=int)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("sweep", help="cost scaling over an n grid")
    add_common(p, seeded=True, emits=True, instance=True, grid_n=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("andor", help="evaluate an AND-OR tree file")
    add_common(p, seeded=True, emits=True)
    p.add_argument("--tree", help="tree description file")
    p.set_defaults(func=cmd_andor)

    p = sub.add_parser("check-facts", help="run the oracle suites")
    add_common(p)
    p.add_argument("--scenarios", type=int)
    p.add_argument("--dims", help="comma list of dense dimensions")
    p.add_argument("--seed", type=int)
    p.add_argument("--max-r", dest="max_r", type=int)
    p.set_defaults(func=cmd_check_facts)

    p = sub.add_parser("baselines", help="intro baseline cost tables")
    add_common(p, emits=True)
    p.add_argument("--n", help="comma list of n values")
    p.set_defaults(func=cmd_baselines)

    return parser


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else int(exc.code)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
