"""Interleaved AND-OR trees evaluated by recursive bounded-error search.

A d-level tree alternates OR and AND gates over N leaves. A 0-level
tree is a single input variable. Each AND/OR node can be decided by
searching its children for a witness (OR: a 1-child; AND: a 0-child,
by De Morgan with free negation). Children are wrapped as worst-case
promise black boxes -- correct with probability exactly 9/10 -- so every
level uses one uniform bounded-error interface, and the per-node
decision is the search driver's actual stochastic outcome. Level-1
nodes use a one-sided Grover cost model over exact leaves; its
one-sidedness is conservatively discarded for the error model.

Tree description files are line-oriented::

    # comment lines and blank lines are ignored
    depth 2
    root OR
    fanouts 3 3
    leaves 010000110

``fanouts`` lists one fanout per level, root first, and is omitted for
depth 0. ``leaves`` is a bitstring of length N = product of fanouts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .driver import (
    DEFAULT_SHOTS,
    analytic_cost,
    ceil_log9,
    run_search,
    verification_repetitions,
)
from .model import make_instance

GATE_OR = "OR"
GATE_AND = "AND"


@dataclass(frozen=True)
class AndOrTree:
    """Shape of a d-level AND-OR tree: per-level fanouts and the root gate.

    Gates alternate by level; the gate at each lower level is implied by
    ``root_gate``. ``depth == 0`` is a single input variable.
    """

    depth: int
    fanouts: tuple[int, ...]
    root_gate: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "fanouts", tuple(self.fanouts))
        if self.depth < 0:
            raise ValueError(f"depth must be >= 0, got {self.depth}")
        if len(self.fanouts) != self.depth:
            raise ValueError(
                f"need one fanout per level: depth {self.depth}, got {len(self.fanouts)}"
            )
        if any(f < 1 for f in self.fanouts):
            raise ValueError("fanouts must be positive")
        if self.root_gate not in (GATE_OR, GATE_AND):
            raise ValueError(f"root gate must be OR or AND, got {self.root_gate!r}")

    @property
    def n_leaves(self) -> int:
        return math.prod(self.fanouts)

    def child(self) -> "AndOrTree":
        """The subtree rooted one level down (gates alternate)."""
        if self.depth == 0:
            raise ValueError("a 0-level tree has no children")
        flipped = GATE_AND if self.root_gate == GATE_OR else GATE_OR
        return AndOrTree(self.depth - 1, self.fanouts[1:], flipped)


def evaluate_classical(tree: AndOrTree, bits: Sequence[int]) -> int:
    """Ground-truth recursive evaluation of the tree on the given leaves."""
    bits = _as_bits(tree, bits)
    return _eval(tree, bits)


def _as_bits(tree: AndOrTree, bits: Sequence[int]) -> list[int]:
    vals = [int(b) for b in bits]
    if len(vals) != tree.n_leaves:
        raise ValueError(f"expected {tree.n_leaves} leaves, got {len(vals)}")
    if any(b not in (0, 1) for b in vals):
        raise ValueError("leaves must be bits")
    return vals


def _eval(tree: AndOrTree, bits: Sequence[int]) -> int:
    if tree.depth == 0:
        return bits[0]
    sub = tree.child()
    chunk = sub.n_leaves
    vals = (
        _eval(sub, bits[i * chunk : (i + 1) * chunk]) for i in range(tree.fanouts[0])
    )
    if tree.root_gate == GATE_OR:
        return int(any(vals))
    return int(all(vals))


def evaluate_quantum_sim(
    tree: AndOrTree,
    bits: Sequence[int],
    seed,
    shots: int = DEFAULT_SHOTS,
) -> int:
    """Simulated bounded-error evaluation of the tree (two-sided error).

    Depth 0 reads the variable exactly. Depth 1 is one draw of its
    bounded-error box: the classical value, flipped with probability
    1/10. Depth >= 2 decides the root by running the search driver over
    its children, each wrapped as a worst-case promise box (9/10 correct)
    around its true value; per-invocation error is at most 1/10.
    """
    bits = _as_bits(tree, bits)
    if tree.depth == 0:
        return bits[0]
    truth = _eval(tree, bits)
    if tree.depth == 1:
        rng = np.random.default_rng(seed)
        return truth ^ (rng.random() < 0.1)
    sub = tree.child()
    chunk = sub.n_leaves
    witness = 1 if tree.root_gate == GATE_OR else 0
    child_values = [
        _eval(sub, bits[i * chunk : (i + 1) * chunk]) for i in range(tree.fanouts[0])
    ]
    t = sum(1 for v in child_values if v == witness)
    instance = make_instance(tree.fanouts[0], t, 0.9, 0.1)
    found = run_search(instance, seed, shots).outcome == "found"
    if tree.root_gate == GATE_OR:
        return int(found)
    return int(not found)


def evaluate_quantum_cost(tree: AndOrTree, shots: int = DEFAULT_SHOTS) -> int:
    """Worst-case leaf-query count of the recursive evaluation.

    Depth 0 costs one query; a depth-1 node of fanout f costs
    ceil(pi/4 sqrt(f)) (one-sided Grover over exact leaves); a deeper
    node costs the driver's full sweep over its fanout -- every block's
    shots plus one verification pass -- times the cost of one child.
    """
    if tree.depth == 0:
        return 1
    f = tree.fanouts[0]
    if tree.depth == 1:
        return math.ceil(math.pi / 4 * math.sqrt(f))
    node = shots * sum(analytic_cost(m) for m in range(ceil_log9(f)))
    node += shots * verification_repetitions(f, shots)
    return node * evaluate_quantum_cost(tree.child(), shots)


def dump_tree(tree: AndOrTree, bits: Sequence[int]) -> str:
    """Serialize a tree and its leaves in the line-oriented file format."""
    bits = _as_bits(tree, bits)
    lines = [f"depth {tree.depth}", f"root {tree.root_gate}"]
    if tree.depth > 0:
        lines.append("fanouts " + " ".join(str(f) for f in tree.fanouts))
    lines.append("leaves " + "".join(str(b) for b in bits))
    return "\n".join(lines) + "\n"


def parse_tree(text: str) -> tuple[AndOrTree, list[int]]:
    """Parse the line-oriented tree description format."""
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition(" ")
        if key in fields:
            raise ValueError(f"line {lineno}: duplicate field {key!r}")
        fields[key] = value.strip()
    for required in ("depth", "root", "leaves"):
        if required not in fields:
            raise ValueError(f"missing field {required!r}")
    try:
        depth = int(fields["depth"])
    except ValueError:
        raise ValueError(f"bad depth {fields['depth']!r}") from None
    if depth > 0:
        if "fanouts" not in fields:
            raise ValueError("missing field 'fanouts'")
        try:
            fanouts = tuple(int(f) for f in fields["fanouts"].split())
        except ValueError:
            raise ValueError(f"bad fanouts {fields['fanouts']!r}") from None
    else:
        fanouts = ()
    if any(ch not in "01" for ch in fields["leaves"]):
        raise ValueError("leaves must be a bitstring")
    tree = AndOrTree(depth=depth, fanouts=fanouts, root_gate=fields["root"])
    bits = [int(ch) for ch in fields["leaves"]]
    _as_bits(tree, bits)
    return tree, bits


def load_tree(path) -> tuple[AndOrTree, list[int]]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_tree(fh.read())
