"""Undirected graphs over 1-based qubit indices: construction, decomposition,
pair indexing and the two necessary 2D-embeddability screens."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

# A register bounded by the minimum spacing and the maximum usable blockade
# radius cannot host a clique larger than K_7, and no vertex of a feasibly
# embedded graph can have more than 18 neighbours (hexagonal-packing bounds).
EMBEDDABLE_CLIQUE_LIMIT = 7
EMBEDDABLE_DEGREE_LIMIT = 18

MAX_CLIQUE_EXCEEDED = "MaxCliqueExceeded"
MAX_DEGREE_EXCEEDED = "MaxDegreeExceeded"

_EXACT_CLIQUE_SIZE_CAP = 128


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 1..n with normalized (i<j) edges."""

    n: int
    edges: frozenset[tuple[int, int]]

    def has_edge(self, i: int, j: int) -> bool:
        return (i, j) in self.edges if i < j else (j, i) in self.edges

    def neighbors(self, v: int) -> set[int]:
        return {j if i == v else i for i, j in self.edges if v in (i, j)}

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for i, j in self.edges:
            deg[i - 1] += 1
            deg[j - 1] += 1
        return deg

    @property
    def pair_count(self) -> int:
        return self.n * (self.n - 1) // 2


@dataclass(frozen=True)
class Component:
    """A connected subgraph plus the map from its local ids to original ids."""

    graph: Graph
    original_ids: tuple[int, ...]  # original_ids[k-1] is the original id of local vertex k


@dataclass(frozen=True)
class ComponentDecomposition:
    components: tuple[Component, ...]
    isolated: tuple[int, ...]


@dataclass(frozen=True)
class ScreeningReport:
    max_degree: int
    clique_number: int
    violations: tuple[str, ...]


def graph_from_edges(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a normalized Graph, deduplicating edges and storing pairs as i<j."""
    if n < 0:
        raise ValueError(f"vertex count must be nonnegative, got {n}")
    normalized = set()
    for pair in edges:
        i, j = pair
        if i == j:
            raise ValueError(f"self-loop ({i},{j}) is not allowed")
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"edge ({i},{j}) out of range for n={n}")
        normalized.add((i, j) if i < j else (j, i))
    return Graph(n=n, edges=frozenset(normalized))


def complement(g: Graph) -> Graph:
    """Graph on the same vertices whose edges are exactly the non-edges of g."""
    missing = {(i, j) for i, j in combinations(range(1, g.n + 1), 2) if (i, j) not in g.edges}
    return Graph(n=g.n, edges=frozenset(missing))


def connected_components(g: Graph) -> ComponentDecomposition:
    """Split into maximal connected subgraphs; degree-0 vertices are reported
    separately as isolated rather than as single-vertex components."""
    adjacency: dict[int, set[int]] = {v: set() for v in range(1, g.n + 1)}
    for i, j in g.edges:
        adjacency[i].add(j)
        adjacency[j].add(i)

    seen: set[int] = set()
    components: list[Component] = []
    isolated: list[int] = []
    for start in range(1, g.n + 1):
        if start in seen:
            continue
        if not adjacency[start]:
            seen.add(start)
            isolated.append(start)
            continue
        stack = [start]
        members: set[int] = set()
        while stack:
            v = stack.pop()
            if v in members:
                continue
            members.add(v)
            stack.extend(adjacency[v] - members)
        seen |= members
        original_ids = tuple(sorted(members))
        local = {orig: k + 1 for k, orig in enumerate(original_ids)}
        sub_edges = {(local[i], local[j]) for i, j in g.edges if i in members}
        components.append(
            Component(graph=Graph(n=len(original_ids), edges=frozenset(sub_edges)),
                      original_ids=original_ids)
        )
    return ComponentDecomposition(components=tuple(components), isolated=tuple(isolated))


def pair_index(i: int, j: int, n: int) -> int:
    """1-based rank of the pair (i,j), i<j, in lexicographic order over all
    pairs of 1..n: k = (i-1)(n-1) - C(i-1,2) + j - i.

    This fixes the layout of every per-pair vector in the package (difference
    nodes, distance nodes, adjacency indicators)."""
    if not (1 <= i < j <= n):
        raise ValueError(f"invalid pair ({i},{j}) for n={n}: need 1 <= i < j <= n")
    return (i - 1) * (n - 1) - (i - 1) * (i - 2) // 2 + j - i


def pair_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    """0-based (i, j) index arrays for all pairs, ordered by pair_index."""
    idx = np.triu_indices(n, k=1)
    return idx[0], idx[1]


def adjacency_vector(g: Graph) -> np.ndarray:
    """0/1 vector of length C(n,2), entry at pair_index(i,j,n)-1 set iff (i,j) is an edge."""
    a = np.zeros(g.pair_count)
    for i, j in g.edges:
        a[pair_index(i, j, g.n) - 1] = 1.0
    return a


def max_clique_exact(g: Graph) -> int:
    """Exact clique number by branch and bound with a greedy colouring bound."""
    if g.n > _EXACT_CLIQUE_SIZE_CAP:
        raise ValueError(
            f"graph too large for exact clique search (n={g.n} > {_EXACT_CLIQUE_SIZE_CAP})"
        )
    if g.n == 0:
        return 0
    adj = [0] * g.n
    for i, j in g.edges:
        adj[i - 1] |= 1 << (j - 1)
        adj[j - 1] |= 1 << (i - 1)

    # Degeneracy-style static order: weakest vertices first so that the
    # colouring bound tightens early along each branch.
    order = sorted(range(g.n), key=lambda v: bin(adj[v]).count("1"))
    rank = {v: r for r, v in enumerate(order)}
    best = 0

    def colour_sort(p_mask: int) -> tuple[list[int], list[int]]:
        vertices: list[int] = []
        colours: list[int] = []
        uncoloured = p_mask
        colour = 0
        while uncoloured:
            colour += 1
            available = uncoloured
            while available:
                v = (available & -available).bit_length() - 1
                vertices.append(v)
                colours.append(colour)
                available &= ~adj[v] & ~(1 << v)
                uncoloured &= ~(1 << v)
        return vertices, colours

    def expand(size: int, p_mask: int) -> None:
        nonlocal best
        vertices, colours = colour_sort(p_mask)
        for k in range(len(vertices) - 1, -1, -1):
            if size + colours[k] <= best:
                return
            v = vertices[k]
            rest = p_mask & adj[v]
            if rest:
                expand(size + 1, rest)
            elif size + 1 > best:
                best = size + 1
            p_mask &= ~(1 << v)

    expand(0, (1 << g.n) - 1)
    return best


def greedy_clique_lower_bound(g: Graph) -> int:
    """Quick clique lower bound: grow greedily from each vertex by degree."""
    if g.n == 0:
        return 0
    adjacency = {v: g.neighbors(v) for v in range(1, g.n + 1)}
    degree = {v: len(nb) for v, nb in adjacency.items()}
    best = 1
    for start in sorted(adjacency, key=degree.get, reverse=True):
        clique = {start}
        candidates = set(adjacency[start])
        while candidates:
            v = max(candidates, key=lambda u: (len(candidates & adjacency[u]), -u))
            clique.add(v)
            candidates &= adjacency[v]
        best = max(best, len(clique))
    return best


def screen_embeddability_2d(g: Graph) -> ScreeningReport:
    """Check the two necessary conditions for 2D feasibility (clique number
    and maximum degree). Warnings only: passing does not certify feasibility."""
    degrees = g.degrees()
    max_degree = max(degrees) if degrees else 0
    clique_number = max_clique_exact(g)
    violations = []
    if clique_number > EMBEDDABLE_CLIQUE_LIMIT:
        violations.append(MAX_CLIQUE_EXCEEDED)
    if max_degree > EMBEDDABLE_DEGREE_LIMIT:
        violations.append(MAX_DEGREE_EXCEEDED)
    return ScreeningReport(max_degree=max_degree, clique_number=clique_number,
                           violations=tuple(violations))
