"""Independent brute-force oracles and the two baseline cost models.

The structured engine is validated against two fully independent
routes: a dense complex linear-algebra check of the amplification
rotation (explicit reflection matrices on a random unitary), and an
exhaustive 2^r enumeration of majority voting. Neither shares code with
the engine's closed forms. A one-round cross-validation harness builds
the whole round -- preparation, reflections, and a 5-run majority vote
-- as explicit matrices and compares per-index masses with the
structured engine.

The two baseline cost models from the simple approaches (per-query
majority boosting under Grover, and block-recursive splitting) are
deterministic integer formulas; their internal dynamics are not
simulated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .driver import build_state
from .error_reduction import majority_prob, repetitions_for
from .model import ProblemInstance, expand_classes

# Dense scenarios stay comfortably below this Hilbert-space dimension.
MAX_DENSE_DIM = 64

# Resource guard for the one-round cross-check (total dimension 2^14).
MAX_ROUND_DIM = 2**14

# Explicit repetition count of the dense round-1 majority vote.
ROUND_ONE_REPS = 5


class UnitarityError(RuntimeError):
    """A matrix that must be unitary is not: a construction bug, reported
    distinctly from a residual failure."""


def _check_unitary(mat: np.ndarray, name: str, tol: float = 1e-12) -> None:
    dim = mat.shape[0]
    defect = np.max(np.abs(mat.conj().T @ mat - np.eye(dim)))
    if not defect <= tol:  # also catches NaN from a broken construction
        raise UnitarityError(f"{name} deviates from unitarity by {defect:.3e}")


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-like random unitary: QR of a complex Gaussian, phases fixed."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def unitary_with_first_column(psi: np.ndarray) -> np.ndarray:
    """Deterministic unitary completion of a real unit vector as column 0.

    Negated Householder reflection through psi + e0: it maps e0 to psi,
    is unitary for any unit psi (zero entries included), and the choice
    of sign avoids cancellation because psi's first component is
    nonnegative in every caller.
    """
    psi = np.asarray(psi, dtype=complex)
    dim = len(psi)
    v = psi.copy()
    v[0] += 1.0
    nv2 = np.vdot(v, v).real
    u = 2.0 * np.outer(v, v.conj()) / nv2 - np.eye(dim, dtype=complex)
    if np.linalg.norm(u[:, 0] - psi) > 1e-12:
        raise UnitarityError("completion does not reproduce the prescribed column")
    return u


@dataclass
class DenseScenario:
    """A dense amplification test case: a unitary plus a flag-1 index set.

    ``theta``, ``phi1`` and ``phi0`` are derived from column 0 of the
    unitary: theta from the flag-1 mass, phi1/phi0 the normalized flag-1
    and flag-0 components placed in their subspaces (zero vectors when
    the corresponding mass vanishes).
    """

    unitary: np.ndarray
    flag_indices: frozenset[int]
    theta: float = field(init=False)
    phi1: np.ndarray = field(init=False)
    phi0: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        dim = self.unitary.shape[0]
        if dim > MAX_DENSE_DIM:
            raise ValueError(f"dense dimension capped at {MAX_DENSE_DIM}, got {dim}")
        self.flag_indices = frozenset(self.flag_indices)
        if not self.flag_indices or len(self.flag_indices) >= dim:
            raise ValueError("flag partition must be nonempty and proper")
        if any(i < 0 or i >= dim for i in self.flag_indices):
            raise ValueError("flag index out of range")
        _check_unitary(self.unitary, "A")
        psi = self.unitary[:, 0]
        mask = np.zeros(dim, dtype=bool)
        mask[list(self.flag_indices)] = True
        w = float(np.sum(np.abs(psi[mask]) ** 2))
        self.theta = math.asin(min(1.0, math.sqrt(min(1.0, w))))
        self.phi1 = _normalized_part(psi, mask)
        self.phi0 = _normalized_part(psi, ~mask)

    @property
    def dim(self) -> int:
        return self.unitary.shape[0]


def _normalized_part(psi: np.ndarray, mask: np.ndarray) -> np.ndarray:
    part = np.where(mask, psi, 0.0)
    norm = np.linalg.norm(part)
    return part / norm if norm > 0.0 else part


def random_scenario(dim: int, seed) -> DenseScenario:
    """Random scenario: Haar-like unitary and a random proper flag set."""
    rng = np.random.default_rng(seed)
    a = random_unitary(dim, rng)
    size = int(rng.integers(1, dim))
    flags = frozenset(int(i) for i in rng.choice(dim, size=size, replace=False))
    return DenseScenario(unitary=a, flag_indices=flags)


def grover_operator(scenario: DenseScenario) -> np.ndarray:
    """G = -A S0 A^-1 S1 as an explicit matrix."""
    dim = scenario.dim
    a = scenario.unitary
    s0 = np.eye(dim, dtype=complex)
    s0[0, 0] = -1.0
    s1 = np.eye(dim, dtype=complex)
    for i in scenario.flag_indices:
        s1[i, i] = -1.0
    return -(a @ s0 @ a.conj().T @ s1)


def amplification_residual(scenario: DenseScenario) -> float:
    """Distance of G A|0> from the 3-theta rotation target, up to global phase."""
    g = grover_operator(scenario)
    _check_unitary(g, "G")
    out = g @ scenario.unitary[:, 0]
    target = math.sin(3 * scenario.theta) * scenario.phi1 + math.cos(
        3 * scenario.theta
    ) * scenario.phi0
    overlap = np.vdot(target, out)
    if abs(overlap) > 0.0:
        out = out * (abs(overlap) / overlap)
    return float(np.linalg.norm(out - target))


def dense_amplification_check(dim: int, flag_indices, seed) -> float:
    """Residual of the rotation identity on a seeded random scenario."""
    rng = np.random.default_rng(seed)
    a = random_unitary(dim, rng)
    return amplification_residual(DenseScenario(unitary=a, flag_indices=flag_indices))


def _majority_permutation(reps: int) -> np.ndarray:
    """Permutation on reps vote qubits + 1 output qubit: output ^= majority."""
    dim = 2 ** (reps + 1)
    perm = np.zeros((dim, dim))
    for b in range(2**reps):
        maj = 1 if bin(b).count("1") * 2 > reps else 0
        for c in (0, 1):
            perm[b * 2 + (c ^ maj), b * 2 + c] = 1.0
    return perm


def _rotation(p: float) -> np.ndarray:
    """Single-qubit rotation taking |0> to sqrt(1-p)|0> + sqrt(p)|1>."""
    s, c = math.sqrt(p), math.sqrt(1.0 - p)
    return np.array([[c, -s], [s, c]])


def structured_vs_dense_round(instance: ProblemInstance) -> float:
    """Max per-index deviation between one dense round and the engine.

    Builds the whole first round as explicit matrices -- the preparation
    (a controlled rotation per index), the reflection pair, and a
    majority vote on ROUND_ONE_REPS fresh runs feeding a new flag qubit
    -- then compares per-index flag-1/flag-0 masses against the
    structured engine after one round.
    """
    per_index = expand_classes(instance)
    n = per_index.n
    work = 2 ** (ROUND_ONE_REPS + 1)
    if n * 2 * work > MAX_ROUND_DIM:
        raise ValueError(f"dense round dimension {n * 2 * work} exceeds {MAX_ROUND_DIM}")
    ps = [c.p for c in per_index.classes]

    # Preparation state on index (x) flag, then a unitary completing it.
    psi1 = np.zeros(2 * n, dtype=complex)
    for i, p in enumerate(ps):
        psi1[2 * i + 1] = math.sqrt(p / n)
        psi1[2 * i] = math.sqrt((1.0 - p) / n)
    a1 = unitary_with_first_column(psi1)
    _check_unitary(a1, "A1")

    s0 = np.eye(2 * n, dtype=complex)
    s0[0, 0] = -1.0
    s1 = np.diag([(-1.0 + 0j) if k % 2 else (1.0 + 0j) for k in range(2 * n)])
    g1 = -(a1 @ s0 @ a1.conj().T @ s1)
    _check_unitary(g1, "G1")
    after_g = g1 @ psi1

    # Error reduction on index (x) oldflag (x) votes (x) newflag.
    maj = _majority_permutation(ROUND_ONE_REPS)
    e1 = np.zeros((2 * n * work, 2 * n * work), dtype=complex)
    eye_work = np.eye(work)
    for i, p in enumerate(ps):
        f = _rotation(p)
        votes = f
        for _ in range(ROUND_ONE_REPS - 1):
            votes = np.kron(votes, f)
        u = maj @ np.kron(votes, np.eye(2))
        lo = (2 * i) * work
        hi = (2 * i + 1) * work
        e1[lo : lo + work, lo : lo + work] = eye_work
        e1[hi : hi + work, hi : hi + work] = u
    _check_unitary(e1, "E1")

    full = np.kron(after_g, np.eye(work)[:, 0])
    psi2 = (e1 @ full).reshape(n, 2, work // 2, 2)
    dense_mass = np.sum(np.abs(psi2) ** 2, axis=(1, 2))

    state, _ = build_state(per_index, rounds=1)
    engine_mass = np.zeros((n, 2))
    for b in state.branches:
        engine_mass[b.class_id, b.flag] += b.amplitude * b.amplitude

    return float(np.max(np.abs(dense_mass - engine_mass)))


def simple_search_cost(n: int) -> int:
    """Query cost of the boost-first baseline: per-index majority to error
    1/(100 n), then Grover on top with ceil(pi/4 sqrt(n)) iterations."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    iters = math.ceil(math.pi / 4 * math.sqrt(n))
    return iters * repetitions_for(1.0 / (100 * n), 0.1)


def block_recursion_cost(n: int, base_cutoff: int = 64) -> int:
    """Query cost of the block-recursive baseline.

    T(n) = n for n <= base_cutoff; otherwise
    T(n) = T(b) * ceil(sqrt(n / b)) + ceil(log2 n) with b = ceil(log2 n)^2.
    Constants are normalized to 1; this is a cost model, not a simulator.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n <= base_cutoff:
        return n
    b = _ceil_log2(n) ** 2
    return block_recursion_cost(b, base_cutoff) * _ceil_sqrt_ratio(n, b) + _ceil_log2(n)


def _ceil_log2(n: int) -> int:
    return (n - 1).bit_length()


def _ceil_sqrt_ratio(n: int, b: int) -> int:
    """Smallest integer s with s^2 * b >= n (exact, no floating point)."""
    s = math.isqrt((n - 1) // b)
    while s * s * b < n:
        s += 1
    return s


def enumerate_majority(r: int, p: float) -> float:
    """Exhaustive 2^r oracle for majority_prob: sums every outcome string."""
    if r < 1 or r % 2 == 0:
        raise ValueError(f"repetition count must be odd and positive, got {r}")
    total = 0.0
    for outcome in range(2**r):
        ones = bin(outcome).count("1")
        if ones * 2 > r:
            total += p**ones * (1.0 - p) ** (r - ones)
    return total


def majority_oracle_gap(max_r: int = 15, grid=(0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0)) -> float:
    """Max |majority_prob - enumeration| over odd r <= max_r and a p grid."""
    gap = 0.0
    for r in range(1, max_r + 1, 2):
        for p in grid:
            gap = max(gap, abs(majority_prob(r, p) - enumerate_majority(r, p)))
    return gap
