"""Search driver: round recursion, cost accounting, and the full search loop.

The round recursion interleaves one amplification with one error
reduction: starting from the base preparation (all subroutines run once
in superposition), round k first triples the solution weight and then
majority-filters the false positives within budget 2^-(k+5). Query cost
follows C(0) = 1, C(k) = 3 C(k-1) + r_k, which stays O(3^m).

The full search loop sweeps m = 0 .. ceil(log9 n) - 1, runs the m-round
preparation ``shots`` times, and classically verifies each measured
index by a majority vote sized so the whole execution's false-accept
probability stays below 1/100. Because the exact output distribution is
available, shots are sampled from it directly; no per-shot state-vector
evolution is needed -- randomness enters only through the classical
control flow.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .amplification import apply_amplification
from .error_reduction import repetitions_for, schedule_for_round, apply_error_reduction
from .model import (
    ProblemInstance,
    StructuredState,
    init_state,
    measurement_weights,
    state_stats,
)

#: Classical repetitions of the whole measurement block, per the driver's
#: success analysis. Configurable in run_search; tests pin the default.
DEFAULT_SHOTS = 1000

#: The execution-wide false-accept budget is 1/VERIFICATION_CONFIDENCE.
VERIFICATION_CONFIDENCE = 100

Seed = Union[int, np.random.SeedSequence]


@dataclass
class CostLedger:
    """Running count of subroutine invocations.

    One unit is one invocation of any F_i or its inverse; one superposed
    call over all indices costs 1.
    """

    invocations: int = 0

    def add(self, q: int) -> None:
        self.invocations += q

    def scale(self, factor: int) -> None:
        self.invocations *= factor


@dataclass(frozen=True)
class TraceRow:
    """Per-block record of one search execution."""

    m: int
    alpha: float
    beta: float
    theta: float
    p_solution: float
    cost: int
    shots: int
    verified: int


@dataclass(frozen=True)
class SearchResult:
    """Outcome of one full search execution."""

    outcome: str  # "found" | "no_solutions"
    found_class: Optional[int]
    total_cost: int
    trace: tuple[TraceRow, ...]


@dataclass(frozen=True)
class CurvePoint:
    """One row of the exact success curve: statistics after m rounds."""

    m: int
    alpha: float
    beta: float
    theta: float
    p_solution: float
    cost: int


def ceil_log9(n: int) -> int:
    """Smallest M >= 0 with 9^M >= n (integer-exact)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    m, power = 0, 1
    while power < n:
        power *= 9
        m += 1
    return m


def analytic_cost(m: int) -> int:
    """Query cost of the m-round preparation: C(0)=1, C(k)=3C(k-1)+r_k."""
    if m < 0:
        raise ValueError(f"rounds must be >= 0, got {m}")
    c = 1
    for k in range(1, m + 1):
        c = 3 * c + schedule_for_round(k).r
    return c


def verification_repetitions(n: int, shots: int = DEFAULT_SHOTS) -> int:
    """Majority size for classically verifying one measured index.

    The per-verification error budget is
    1 / (VERIFICATION_CONFIDENCE * shots * (ceil_log9(n) + 1)), so by a
    union bound over at most shots * ceil_log9(n) verifications the whole
    execution's false-accept probability stays below 1/100. O(log n).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    budget = 1.0 / (VERIFICATION_CONFIDENCE * shots * (ceil_log9(n) + 1))
    return repetitions_for(budget, 0.1)


def build_state(
    instance: ProblemInstance, rounds: int
) -> tuple[StructuredState, CostLedger]:
    """Build the preparation state with the given number of amplify/reduce rounds.

    rounds = 0 returns the base state (cost 1). The ledger equals
    analytic_cost(rounds) exactly, by construction of the same recursion.
    """
    if rounds < 0:
        raise ValueError(f"rounds must be >= 0, got {rounds}")
    ledger = CostLedger()
    state = init_state(instance, ledger)
    for k in range(1, rounds + 1):
        state = apply_amplification(state, instance, ledger)
        state = apply_error_reduction(state, k, instance, ledger)
    return state, ledger


def exact_success_curve(
    instance: ProblemInstance, m_max: int
) -> tuple[CurvePoint, ...]:
    """Exact per-round statistics for m = 0 .. m_max.

    Computed in one incremental pass; since the round maps are
    deterministic, each row equals an independent m-round build.
    """
    if m_max < 0:
        raise ValueError(f"m_max must be >= 0, got {m_max}")
    ledger = CostLedger()
    state = init_state(instance, ledger)
    rows = []
    for m in range(m_max + 1):
        st = state_stats(state, instance)
        rows.append(
            CurvePoint(
                m=m,
                alpha=st.alpha,
                beta=st.beta,
                theta=st.theta,
                p_solution=st.p_solution,
                cost=ledger.invocations,
            )
        )
        if m < m_max:
            state = apply_amplification(state, instance, ledger)
            state = apply_error_reduction(state, m + 1, instance, ledger)
    return tuple(rows)


def search_blocks(n: int) -> int:
    """Number of m-blocks the search loop executes for a space of size n.

    ceil(log9 n), with a floor of one block so that n = 1 still runs the
    base preparation instead of skipping the loop entirely.
    """
    return max(1, ceil_log9(n))


def full_sweep_cost(n: int, shots: int = DEFAULT_SHOTS) -> int:
    """Worst-case ledger of a search that exhausts every block without a hit.

    Each of the search_blocks(n) blocks runs the preparation ``shots``
    times and classically verifies every sample, so the total is
    sum_m shots * (C(m) + v(n)).
    """
    v = verification_repetitions(n, shots)
    return sum(shots * (analytic_cost(m) + v) for m in range(search_blocks(n)))


def _sample_block(
    rng: np.random.Generator,
    state: StructuredState,
    instance: ProblemInstance,
    v: int,
    shots: int,
) -> tuple[Optional[int], int]:
    """Sample one measurement block and verify sample-by-sample.

    Returns (accepted class id or None, number of samples verified).
    Verification of index j majority-votes v fresh runs of F_j, i.e. a
    Binomial(v, p_j) draw compared against v/2; it stops at the first
    accepted sample.
    """
    weights = np.asarray(measurement_weights(state, instance), dtype=float)
    weights = np.maximum(weights, 0.0)
    weights /= weights.sum()
    sampled = rng.choice(len(weights), size=shots, p=weights)
    ps = np.asarray([instance.classes[cid].p for cid in sampled])
    accepts = rng.binomial(v, ps) * 2 > v
    hits = np.flatnonzero(accepts)
    if hits.size:
        first = int(hits[0])
        return int(sampled[first]), first + 1
    return None, shots


def run_search(
    instance: ProblemInstance,
    seed: Seed,
    shots_per_m: int = DEFAULT_SHOTS,
    mode: str = "exact-sampling",
) -> SearchResult:
    """Run the full search loop and return its outcome, cost, and trace.

    For m = 0 .. search_blocks(n) - 1: build the m-round preparation
    exactly, sample ``shots_per_m`` measured indices from its exact
    distribution, and verify each sampled index classically; stop at the
    first verified solution. Charges shots_per_m * C(m) per entered
    block plus v(n) per verified sample.
    """
    if mode != "exact-sampling":
        raise ValueError(f"unsupported mode {mode!r}")
    if not (isinstance(shots_per_m, int) and shots_per_m >= 1):
        raise ValueError(f"shots_per_m must be a positive integer, got {shots_per_m!r}")
    if isinstance(seed, (bool, float)) or not isinstance(
        seed, (int, np.integer, np.random.SeedSequence)
    ):
        raise ValueError(f"seed must be an integer or SeedSequence, got {seed!r}")
    if isinstance(seed, (int, np.integer)) and seed < 0:
        raise ValueError(f"seed must be nonnegative, got {seed}")

    rng = np.random.default_rng(seed)
    n = instance.n
    v = verification_repetitions(n, shots_per_m)
    blocks = search_blocks(n)

    ledger = CostLedger()
    state = init_state(instance, ledger)
    total = 0
    trace: list[TraceRow] = []
    for m in range(blocks):
        st = state_stats(state, instance)
        cost_m = ledger.invocations
        total += shots_per_m * cost_m
        hit, verified = _sample_block(rng, state, instance, v, shots_per_m)
        total += verified * v
        trace.append(
            TraceRow(
                m=m,
                alpha=st.alpha,
                beta=st.beta,
                theta=st.theta,
                p_solution=st.p_solution,
                cost=cost_m,
                shots=shots_per_m,
                verified=verified,
            )
        )
        if hit is not None:
            return SearchResult(
                outcome="found", found_class=hit, total_cost=total, trace=tuple(trace)
            )
        if m + 1 < blocks:
            state = apply_amplification(state, instance, ledger)
            state = apply_error_reduction(state, m + 1, instance, ledger)
    return SearchResult(
        outcome="no_solutions", found_class=None, total_cost=total, trace=tuple(trace)
    )


def run_block(
    instance: ProblemInstance,
    m: int,
    seed: Seed,
    shots: int = DEFAULT_SHOTS,
) -> tuple[Optional[int], int]:
    """Run a single m-block in isolation (for per-block success studies).

    Builds the m-round preparation, samples ``shots`` indices, verifies
    sample-by-sample. Returns (accepted class id or None, total cost).
    """
    rng = np.random.default_rng(seed)
    v = verification_repetitions(instance.n, shots)
    state, ledger = build_state(instance, m)
    hit, verified = _sample_block(rng, state, instance, v, shots)
    return hit, shots * ledger.invocations + verified * v
