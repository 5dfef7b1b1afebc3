"""Domain model for quantum search over bounded-error subroutines.

The search space is a family of n black-box subroutines; subroutine i
outputs a "this index is a solution" bit that is correct only with some
probability p_i per run. Indices sharing the same (p, is_solution) pair
are grouped into an :class:`IndexClass`, and the simulator tracks one
signed real amplitude per (class, flag, history) branch instead of one
per index. State size then depends on classes and rounds only, which
keeps exact simulation cheap for n up to ~1e12.

Workspace/junk registers are never materialized: a branch's identity
(its position in the split history) encodes the orthogonality of its
junk sector, which is all the round operators rely on.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

# The promise separating solutions from non-solutions: a solution
# subroutine says "1" with probability >= 9/10, a non-solution with
# probability <= 1/10.
PROMISE_GOOD = 0.9
PROMISE_BAD = 0.1

# Tolerance for the "state is normalized" precondition of round operations.
NORM_TOL = 1e-6


@dataclass(frozen=True)
class IndexClass:
    """A group of indices whose subroutines behave identically.

    Parameters
    ----------
    p : float
        Probability that one run of the subroutine outputs 1.
    count : int
        Number of indices in the class (>= 1).
    is_solution : bool
        Whether these indices really are solutions.
    """

    p: float
    count: int
    is_solution: bool

    def __post_init__(self) -> None:
        if not (isinstance(self.count, int) and self.count >= 1):
            raise ValueError(f"class count must be a positive integer, got {self.count!r}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"class probability must lie in [0, 1], got {self.p!r}")


@dataclass(frozen=True)
class ProblemInstance:
    """A search space of bounded-error subroutines, collapsed by class.

    ``strict=True`` enforces the promise: solution classes must have
    p >= 9/10 and non-solution classes p <= 1/10. Relaxed instances are
    allowed for exploratory sweeps and are flagged in all CLI output.
    """

    classes: tuple[IndexClass, ...]
    strict: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "classes", tuple(self.classes))
        if self.n < 1:
            raise ValueError("instance must contain at least one index")
        if self.strict:
            for c in self.classes:
                if c.is_solution and c.p < PROMISE_GOOD:
                    raise ValueError(
                        f"strict mode: solution class has p={c.p} < {PROMISE_GOOD}"
                    )
                if not c.is_solution and c.p > PROMISE_BAD:
                    raise ValueError(
                        f"strict mode: non-solution class has p={c.p} > {PROMISE_BAD}"
                    )

    @property
    def n(self) -> int:
        """Total number of indices."""
        return sum(c.count for c in self.classes)

    @property
    def t(self) -> int:
        """Number of solution indices."""
        return sum(c.count for c in self.classes if c.is_solution)


def make_instance(
    n: int,
    t: int,
    p_good: float,
    p_bad: float,
    strict: bool = True,
) -> ProblemInstance:
    """Build the canonical two-class instance: t solutions, n - t non-solutions.

    Raises ``ValueError`` for t > n, probabilities outside [0, 1], or
    strict-mode promise violations.
    """
    if not (isinstance(n, int) and n >= 1):
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not (isinstance(t, int) and 0 <= t <= n):
        raise ValueError(f"t must satisfy 0 <= t <= n, got t={t!r}, n={n}")
    for name, p in (("p_good", p_good), ("p_bad", p_bad)):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {p!r}")
    if strict:
        if p_good < PROMISE_GOOD:
            raise ValueError(f"strict mode requires p_good >= {PROMISE_GOOD}, got {p_good}")
        if p_bad > PROMISE_BAD:
            raise ValueError(f"strict mode requires p_bad <= {PROMISE_BAD}, got {p_bad}")
    classes = []
    if t > 0:
        classes.append(IndexClass(p=p_good, count=t, is_solution=True))
    if t < n:
        classes.append(IndexClass(p=p_bad, count=n - t, is_solution=False))
    return ProblemInstance(classes=tuple(classes), strict=strict)


def expand_classes(instance: ProblemInstance) -> ProblemInstance:
    """Split every class into singleton classes (one per index).

    Exact statistics are invariant under this expansion; it exists for
    cross-checks and for the per-index dense validation harness.
    """
    singles = tuple(
        IndexClass(p=c.p, count=1, is_solution=c.is_solution)
        for c in instance.classes
        for _ in range(c.count)
    )
    return ProblemInstance(classes=singles, strict=instance.strict)


@dataclass(frozen=True)
class Branch:
    """One amplitude branch of the structured state.

    ``amplitude`` is the per-index amplitude, identical for all indices
    of the class by symmetry. ``flag`` is the algorithm's current
    solution-claim qubit. Distinct branches are orthogonal sectors.
    """

    class_id: int
    flag: int
    amplitude: float


@dataclass(frozen=True)
class StructuredState:
    """Exact branch decomposition of the round-k preparation state A_k|0>."""

    branches: tuple[Branch, ...]
    round: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "branches", tuple(self.branches))
        if self.round < 1:
            raise ValueError("round index starts at 1")


@dataclass(frozen=True)
class StateStats:
    """Summary statistics of a structured state.

    ``alpha``/``beta`` are the square roots of the flag-1 solution and
    flag-1 non-solution masses; ``theta = arcsin(sqrt(alpha^2 + beta^2))``
    is the amplification angle; ``p_solution`` is the probability that a
    measurement of the index register yields a solution index (all flags).
    """

    alpha: float
    beta: float
    theta: float
    p_solution: float


def init_state(instance: ProblemInstance, ledger=None) -> StructuredState:
    """Run every subroutine once in uniform superposition over indices.

    Per class: a flag-1 branch with per-index amplitude sqrt(p/n) and a
    flag-0 branch with sqrt((1-p)/n). Exactly-zero branches are omitted.
    Charges one query to ``ledger`` if given (one superposed call over
    all indices costs one unit).
    """
    n = instance.n
    branches = []
    for cid, c in enumerate(instance.classes):
        if c.p > 0.0:
            branches.append(Branch(class_id=cid, flag=1, amplitude=math.sqrt(c.p / n)))
        if c.p < 1.0:
            branches.append(Branch(class_id=cid, flag=0, amplitude=math.sqrt((1.0 - c.p) / n)))
    if ledger is not None:
        ledger.add(1)
    return StructuredState(branches=tuple(branches), round=1)


def total_mass(state: StructuredState, instance: ProblemInstance) -> float:
    """Total probability mass of the state (1 for a normalized state)."""
    return math.fsum(
        instance.classes[b.class_id].count * b.amplitude * b.amplitude
        for b in state.branches
    )


def state_stats(state: StructuredState, instance: ProblemInstance) -> StateStats:
    """Compute (alpha, beta, theta, p_solution) for a structured state."""
    a2: list[float] = []
    b2: list[float] = []
    psol: list[float] = []
    for b in state.branches:
        c = instance.classes[b.class_id]
        mass = c.count * b.amplitude * b.amplitude
        if c.is_solution:
            psol.append(mass)
        if b.flag == 1:
            (a2 if c.is_solution else b2).append(mass)
    alpha2 = math.fsum(a2)
    beta2 = math.fsum(b2)
    s = min(1.0, math.sqrt(min(1.0, alpha2 + beta2)))
    return StateStats(
        alpha=math.sqrt(alpha2),
        beta=math.sqrt(beta2),
        theta=math.asin(s),
        p_solution=math.fsum(psol),
    )


def measurement_weights(state: StructuredState, instance: ProblemInstance) -> list[float]:
    """Exact index-register measurement distribution, per class.

    Entry c is the probability that measuring the index register yields
    an index of class c, i.e. count_c * sum of amplitude^2 over all of
    class c's branches (any flag).
    """
    weights = [0.0] * len(instance.classes)
    for b in state.branches:
        weights[b.class_id] += instance.classes[b.class_id].count * b.amplitude * b.amplitude
    return weights
