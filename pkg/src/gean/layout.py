"""Initial coordinate layouts: similarity scaling into the register and a
force-directed layout projected into the circular domain."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph

REGISTER_RADIUS_UM = 50.0


@dataclass(frozen=True)
class Embedding:
    """Per-qubit coordinates in µm, one row per vertex, 2 or 3 columns."""

    coords: np.ndarray

    def __post_init__(self) -> None:
        coords = np.array(self.coords, dtype=float)
        if coords.ndim != 2 or coords.shape[1] not in (2, 3):
            raise ValueError(f"coordinates must be (n, 2) or (n, 3), got shape {coords.shape}")
        if not np.all(np.isfinite(coords)):
            raise ValueError("coordinates must be finite")
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def dims(self) -> int:
        return self.coords.shape[1]


def pairwise_distances(e: Embedding) -> np.ndarray:
    """Condensed distance vector over all pairs, ordered by pair_index."""
    i, j = np.triu_indices(e.n, k=1)
    deltas = e.coords[i] - e.coords[j]
    return np.sqrt((deltas * deltas).sum(axis=1))


def scale_to_register(points: np.ndarray, target_radius: float = REGISTER_RADIUS_UM) -> Embedding:
    """Center the points on their centroid and scale uniformly so the farthest
    point sits exactly at target_radius (µm); a similarity transform, so the
    shape and all distance ratios are preserved."""
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        raise ValueError("point set is empty")
    if pts.ndim != 2 or pts.shape[1] not in (2, 3):
        raise ValueError(f"expected an (n, 2) or (n, 3) point array, got shape {pts.shape}")
    if target_radius <= 0:
        raise ValueError(f"target radius must be positive, got {target_radius}")
    centered = pts - pts.mean(axis=0)
    max_norm = float(np.linalg.norm(centered, axis=1).max())
    if max_norm > 0.0:
        centered = centered * (target_radius / max_norm)
    return Embedding(coords=centered)


def fruchterman_reingold(g: Graph, k: float = 4.0, iterations: int = 500,
                         seed: int = 0,
                         domain_radius: float = REGISTER_RADIUS_UM) -> Embedding:
    """Force-directed 2D layout inside a disk.

    Repulsion of magnitude k^2/d acts on every pair and attraction of
    magnitude d^2/k on adjacent pairs (the displacement forms of the classic
    algorithm; their balance for an adjacent pair sits at distance k). Each
    step is capped by a linearly cooling temperature and positions are then
    projected radially back into the disk of domain_radius.
    """
    if k <= 0:
        raise ValueError(f"optimal distance k must be positive, got {k}")
    if iterations < 1:
        raise ValueError(f"need at least one iteration, got {iterations}")
    rng = np.random.default_rng(seed)
    n = g.n
    if n == 0:
        return Embedding(coords=np.zeros((0, 2)))

    # Uniform start in the disk: sqrt-distributed radius, uniform angle.
    radius = domain_radius * np.sqrt(rng.random(n))
    angle = 2.0 * np.pi * rng.random(n)
    pos = np.column_stack([radius * np.cos(angle), radius * np.sin(angle)])

    edge_idx = np.array([(i - 1, j - 1) for i, j in sorted(g.edges)], dtype=int)
    t0 = domain_radius / 10.0
    for it in range(iterations):
        delta = pos[:, None, :] - pos[None, :, :]
        dist = np.sqrt((delta * delta).sum(axis=2))
        # Coincident vertices get a tiny seeded jitter so forces stay finite.
        tiny = dist < 1e-9
        np.fill_diagonal(tiny, False)
        if tiny.any():
            pos = pos + rng.normal(scale=1e-6, size=pos.shape)
            delta = pos[:, None, :] - pos[None, :, :]
            dist = np.sqrt((delta * delta).sum(axis=2))
        np.fill_diagonal(dist, 1.0)

        disp = (delta * (k * k / (dist * dist))[:, :, None]).sum(axis=1)
        if edge_idx.size:
            a, b = edge_idx[:, 0], edge_idx[:, 1]
            dvec = pos[a] - pos[b]
            dlen = np.sqrt((dvec * dvec).sum(axis=1))
            dlen = np.where(dlen < 1e-9, 1e-9, dlen)
            pull = dvec * (dlen / k)[:, None]  # (d/|d|) * d^2/k
            np.add.at(disp, a, -pull)
            np.add.at(disp, b, pull)

        temperature = t0 * (1.0 - it / iterations)
        length = np.sqrt((disp * disp).sum(axis=1))
        length = np.where(length < 1e-12, 1e-12, length)
        pos = pos + disp / length[:, None] * np.minimum(length, temperature)[:, None]

        norm = np.sqrt((pos * pos).sum(axis=1))
        outside = norm > domain_radius
        if outside.any():
            pos[outside] *= (domain_radius / norm[outside])[:, None]
    return Embedding(coords=pos)


def lift_to_3d(e: Embedding) -> Embedding:
    """Add a zero z-coordinate to a 2D embedding; pair distances are unchanged."""
    if e.dims == 3:
        raise ValueError("embedding is already three-dimensional")
    return Embedding(coords=np.column_stack([e.coords, np.zeros(e.n)]))
