"""One exact round of amplitude amplification on a structured state.

The reflection pair G = -A S0 A^-1 S1 rotates the state by 2*theta in
the plane spanned by its normalized flag-1 and flag-0 components, taking
the flag-1 weight from sin(theta) to sin(3*theta). Componentwise that is
a scaling of every flag-1 amplitude by sin(3t)/sin(t) = 3 - 4sin^2(t)
and every flag-0 amplitude by cos(3t)/cos(t) = 1 - 4sin^2(t); the closed
forms are used so the endpoints theta in {0, pi/2} need no special
casing. The simulator knows theta exactly (amplification itself would
work without knowing it) and recomputes it from the state at each call.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .model import (
    NORM_TOL,
    Branch,
    ProblemInstance,
    StructuredState,
    state_stats,
    total_mass,
)


@dataclass(frozen=True)
class AmplificationFactors:
    """Per-flag amplitude scalings of one amplification round at angle theta."""

    g1: float
    g0: float
    theta: float


def amplification_factors(theta: float) -> AmplificationFactors:
    """Exact branch scalings (3 - 4sin^2, 1 - 4sin^2) at the given angle.

    At theta = 0 this is the small-angle limit (3, 1); at theta = pi/2 it
    is (-1, -3), where g0 is irrelevant because the flag-0 mass is zero.
    Either factor may be negative -- amplitudes are signed reals.
    """
    if not 0.0 <= theta <= math.pi / 2:
        raise ValueError(f"theta must lie in [0, pi/2], got {theta!r}")
    s2 = math.sin(theta) ** 2
    return AmplificationFactors(g1=3.0 - 4.0 * s2, g0=1.0 - 4.0 * s2, theta=theta)


def apply_amplification(
    state: StructuredState,
    instance: ProblemInstance,
    ledger=None,
) -> StructuredState:
    """Apply one amplification round G to a normalized structured state.

    Every flag-1 amplitude is scaled by g1 and every flag-0 amplitude by
    g0, with theta recomputed from the state. Norm is preserved exactly:
    g1^2 sin^2 + g0^2 cos^2 = 1. The ledger cost triples (the round runs
    the state preparation twice more, once inverted).
    """
    if abs(total_mass(state, instance) - 1.0) > NORM_TOL:
        raise ValueError("state is not normalized")
    f = amplification_factors(state_stats(state, instance).theta)
    branches = []
    for b in state.branches:
        amp = b.amplitude * (f.g1 if b.flag == 1 else f.g0)
        if amp != 0.0:
            branches.append(Branch(class_id=b.class_id, flag=b.flag, amplitude=amp))
    if ledger is not None:
        ledger.scale(3)
    return StructuredState(branches=tuple(branches), round=state.round)
