"""Shared instance builders for the test suite."""

from __future__ import annotations

from gean import Graph, adjacency_of, graph_from_edges, protein_folding_qubo

PROTEIN_CASES = {
    # chain length, hydrophobic positions
    "prot12_6": (12, frozenset({1, 2, 3, 5, 11, 12})),
    "prot17_7": (17, frozenset({1, 2, 5, 6, 10, 12, 17})),
    "prot22_8": (22, frozenset({1, 3, 5, 6, 9, 10, 11, 17})),
}


def clique(n: int) -> Graph:
    return graph_from_edges(n, [(i, j) for i in range(1, n + 1)
                                for j in range(i + 1, n + 1)])


def path(n: int) -> Graph:
    return graph_from_edges(n, [(i, i + 1) for i in range(1, n)])


def cycle(n: int) -> Graph:
    return graph_from_edges(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def spider(arms: int, arm_length: int) -> Graph:
    """Tree: a hub with `arms` chains of `arm_length` vertices."""
    edges = []
    n = 1
    for _ in range(arms):
        prev = 1
        for _ in range(arm_length):
            n += 1
            edges.append((prev, n))
            prev = n
    return graph_from_edges(n, edges)


def protein_graph(name: str) -> Graph:
    length, hydro = PROTEIN_CASES[name]
    return adjacency_of(protein_folding_qubo(length, hydro))


def embedding_suite() -> dict[str, Graph]:
    """The fixed 12-instance suite: a path, a cycle, two trees, the five
    embeddable cliques and the three folding-problem graphs."""
    return {
        "path13": path(13),
        "cycle13": cycle(13),
        "spider_4x3": spider(4, 3),
        "spider_3x4": spider(3, 4),
        "K3": clique(3),
        "K4": clique(4),
        "K5": clique(5),
        "K6": clique(6),
        "K7": clique(7),
        "prot12_6": protein_graph("prot12_6"),
        "prot17_7": protein_graph("prot17_7"),
        "prot22_8": protein_graph("prot22_8"),
    }
