"""QUBO instance generators for the three supported problem families plus
machine-compatibility validation and adjacency extraction."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

import numpy as np

from .graph import Graph, graph_from_edges

DEFAULT_CONFLICT_PENALTY = 2.0


@dataclass(frozen=True)
class QuboInstance:
    """Symmetric QUBO stored as diagonal vector plus upper-triangular couplings.

    Off-diagonal entries live once per unordered pair (i<j); zero couplings
    are dropped. An additive constant produced by constraint expansion is kept
    in `offset`, outside the matrix. Instances built from geometric points
    carry those points (meters) for later scaling into the register.
    """

    n: int
    diag: tuple[float, ...]
    offdiag: dict[tuple[int, int], float]
    labels: tuple[str, ...]
    offset: float = 0.0
    source_points: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if len(self.diag) != self.n or len(self.labels) != self.n:
            raise ValueError("diag and labels must both have length n")
        for (i, j), value in self.offdiag.items():
            if not (1 <= i < j <= self.n):
                raise ValueError(f"off-diagonal key ({i},{j}) is not an ordered pair in range")
            if value == 0.0:
                raise ValueError(f"zero coupling stored for pair ({i},{j})")


@dataclass(frozen=True)
class CompatibilityReport:
    diagonal_constant: bool
    offdiagonal_sign_constant: bool

    @property
    def compatible(self) -> bool:
        return self.diagonal_constant and self.offdiagonal_sign_constant


def accumulate_couplings(entries: Iterable[tuple[int, int, float]]) -> dict[tuple[int, int], float]:
    """Fold (i, j, value) triples onto unordered i<j keys, dropping zero sums."""
    acc: dict[tuple[int, int], float] = {}
    for i, j, value in entries:
        key = (i, j) if i < j else (j, i)
        acc[key] = acc.get(key, 0.0) + value
    return {k: v for k, v in sorted(acc.items()) if v != 0.0}


def mis_qubo_from_points(points: Iterable[tuple[float, float]] | np.ndarray,
                         conflict_distance: float,
                         penalty: float = DEFAULT_CONFLICT_PENALTY) -> QuboInstance:
    """Maximum-independent-set QUBO over geometric points: unit gain per
    selected point, penalty coupling for every pair strictly closer than the
    conflict distance (meters)."""
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        raise ValueError("point set is empty")
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError(f"expected an (n, 2) point array, got shape {pts.shape}")
    if conflict_distance < 0:
        raise ValueError(f"conflict distance must be nonnegative, got {conflict_distance}")
    if penalty <= 1:
        raise ValueError(f"penalty must exceed 1 to dominate the unit gains, got {penalty}")
    n = pts.shape[0]
    couplings = []
    for i, j in combinations(range(n), 2):
        if math.dist(pts[i], pts[j]) < conflict_distance:
            couplings.append((i + 1, j + 1, penalty))
    return QuboInstance(
        n=n,
        diag=(-1.0,) * n,
        offdiag=accumulate_couplings(couplings),
        labels=tuple(f"p_{k}" for k in range(1, n + 1)),
        source_points=pts,
    )


def synthetic_conflict_points(count: int, seed: int, region_size: float = 1250.0) -> np.ndarray:
    """Deterministic stand-in for a real antenna layout: `count` points drawn
    uniformly in a square of side `region_size` meters."""
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    rng = np.random.default_rng(seed)
    return rng.uniform(0.0, region_size, size=(count, 2))


def protein_folding_qubo(chain_length: int, hydrophobic: Iterable[int],
                         penalty: float = DEFAULT_CONFLICT_PENALTY) -> QuboInstance:
    """Hydrophobic-matching QUBO for a folding chain.

    A variable exists for each hydrophobic pair (i, j) that can face each
    other across a fold: i+j odd so the fold position f = (i+j-1)/2 is an
    integer, and j-i >= 3 so the fold is geometrically possible. Two matches
    conflict when either one spans the other's fold position at a different
    fold, and each ordered conflict adds one penalty contribution.
    """
    if penalty <= 1:
        raise ValueError(f"penalty must exceed 1 to dominate the unit gains, got {penalty}")
    positions = sorted(set(hydrophobic))
    if not positions:
        raise ValueError("hydrophobic position set is empty")
    if positions[0] < 1 or positions[-1] > chain_length:
        raise ValueError(
            f"hydrophobic positions {positions} outside chain 1..{chain_length}"
        )
    matches = [(i, j) for i, j in combinations(positions, 2)
               if (i + j) % 2 == 1 and j - i >= 3]
    fold = {m: (m[0] + m[1] - 1) // 2 for m in matches}
    index = {m: k + 1 for k, m in enumerate(matches)}
    couplings = []
    for spanning in matches:
        for folded in matches:
            if spanning == folded:
                continue
            f = fold[folded]
            if spanning[0] <= f < spanning[1] and f != fold[spanning]:
                couplings.append((index[spanning], index[folded], penalty))
    return QuboInstance(
        n=len(matches),
        diag=(-1.0,) * len(matches),
        offdiag=accumulate_couplings(couplings),
        labels=tuple(f"δ_{{{i},{j}}}" for i, j in matches),
    )


def graph_coloring_qubo(g: Graph, colors: int,
                        onehot_weight: float = 1.0,
                        edge_weight: float = 1.0) -> QuboInstance:
    """One-hot graph-coloring QUBO: per vertex a block of `colors` binaries,
    quadratic penalty for picking two colors on one vertex or the same color
    on two adjacent vertices. The constant from expanding the one-hot squares
    goes into the offset."""
    if colors < 1:
        raise ValueError(f"need at least one color, got {colors}")
    if onehot_weight <= 0 or edge_weight <= 0:
        raise ValueError("onehot_weight and edge_weight must both be positive")

    def var(v: int, c: int) -> int:
        return (v - 1) * colors + c  # 1-based variable index

    couplings = []
    for v in range(1, g.n + 1):
        for c1, c2 in combinations(range(1, colors + 1), 2):
            couplings.append((var(v, c1), var(v, c2), 2.0 * onehot_weight))
    for u, v in g.edges:
        for c in range(1, colors + 1):
            couplings.append((var(u, c), var(v, c), edge_weight))
    return QuboInstance(
        n=g.n * colors,
        diag=(-onehot_weight,) * (g.n * colors),
        offdiag=accumulate_couplings(couplings),
        labels=tuple(f"x_{{{v},{c}}}" for v in range(1, g.n + 1)
                     for c in range(1, colors + 1)),
        offset=onehot_weight * g.n,
    )


def validate_hamiltonian_compatibility(q: QuboInstance) -> CompatibilityReport:
    """Check the two structural requirements of the machine Hamiltonian: a
    constant diagonal (global drive) and sign-constant couplings (distance-
    driven interactions are always positive)."""
    diagonal_constant = all(
        math.isclose(d, q.diag[0], rel_tol=1e-9) for d in q.diag
    ) if q.diag else True
    values = list(q.offdiag.values())
    sign_constant = all(v > 0 for v in values) or all(v < 0 for v in values)
    return CompatibilityReport(diagonal_constant=diagonal_constant,
                               offdiagonal_sign_constant=sign_constant)


def adjacency_of(q: QuboInstance) -> Graph:
    """Adjacency pattern of the QUBO: an edge wherever a coupling is stored."""
    return graph_from_edges(q.n, list(q.offdiag.keys()))
