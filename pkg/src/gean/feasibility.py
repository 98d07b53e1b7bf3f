"""Strict pairwise constraint checking and the distance metrics used in
run summaries (extremes over all pairs and over the adjacency classes)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, adjacency_vector, pair_arrays
from .layout import Embedding, REGISTER_RADIUS_UM, pairwise_distances
from .physics import RegisterLimits

MAX_DIST = "MaxDist"
MIN_DIST = "MinDist"
ADJ_TOO_FAR = "AdjTooFar"
NON_ADJ_TOO_CLOSE = "NonAdjTooClose"


@dataclass(frozen=True)
class DistanceMetrics:
    """Distance extremes in µm; a field is None when its pair class is empty."""

    r_min: float | None
    r_max: float | None
    r_adj: float | None  # largest distance over adjacent pairs
    r_nonadj: float | None  # smallest distance over non-adjacent pairs


@dataclass(frozen=True)
class Violation:
    i: int
    j: int
    distance: float
    constraint: str


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    violations: tuple[Violation, ...]
    # Informational only: whether every position sits inside the register
    # disk of radius 50 µm. The constraints themselves are purely pairwise.
    in_disk: bool


def distance_metrics(e: Embedding, g: Graph) -> DistanceMetrics:
    """Min/max pair distances overall and per adjacency class."""
    if e.n != g.n:
        raise ValueError(f"embedding has {e.n} points but graph has {g.n} vertices")
    d = pairwise_distances(e)
    if d.size == 0:
        return DistanceMetrics(r_min=None, r_max=None, r_adj=None, r_nonadj=None)
    adj = adjacency_vector(g).astype(bool)
    return DistanceMetrics(
        r_min=float(d.min()),
        r_max=float(d.max()),
        r_adj=float(d[adj].max()) if adj.any() else None,
        r_nonadj=float(d[~adj].min()) if (~adj).any() else None,
    )


def check_feasibility(e: Embedding, g: Graph, limits: RegisterLimits) -> FeasibilityReport:
    """Exact constraint check (no tolerances): every pair within [d_min, d_max],
    adjacent pairs at most the blockade radius apart, non-adjacent pairs
    strictly beyond it. Every violated pair is listed once per violated
    constraint."""
    if e.n != g.n:
        raise ValueError(f"embedding has {e.n} points but graph has {g.n} vertices")
    d = pairwise_distances(e)
    in_disk = bool(np.all(np.sqrt((e.coords * e.coords).sum(axis=1)) <= REGISTER_RADIUS_UM))
    if d.size == 0:
        return FeasibilityReport(feasible=True, violations=(), in_disk=in_disk)
    adj = adjacency_vector(g).astype(bool)

    too_far = d > limits.d_max
    too_close = d < limits.d_min
    adj_too_far = adj & (d > limits.r_blockade)
    nonadj_too_close = ~adj & (d <= limits.r_blockade)
    if not (too_far.any() or too_close.any() or adj_too_far.any()
            or nonadj_too_close.any()):
        return FeasibilityReport(feasible=True, violations=(), in_disk=in_disk)

    i_idx, j_idx = pair_arrays(g.n)
    violations: list[Violation] = []
    for mask, constraint in ((too_far, MAX_DIST), (too_close, MIN_DIST),
                             (adj_too_far, ADJ_TOO_FAR),
                             (nonadj_too_close, NON_ADJ_TOO_CLOSE)):
        for k in np.flatnonzero(mask):
            violations.append(Violation(i=int(i_idx[k]) + 1, j=int(j_idx[k]) + 1,
                                        distance=float(d[k]), constraint=constraint))
    violations.sort(key=lambda v: (v.i, v.j, v.constraint))
    return FeasibilityReport(feasible=False, violations=tuple(violations),
                             in_disk=in_disk)
