from __future__ import annotations

import numpy as np
import pytest

from gean import (
    QuboInstance,
    adjacency_of,
    graph_coloring_qubo,
    graph_from_edges,
    max_clique_exact,
    mis_qubo_from_points,
    protein_folding_qubo,
    synthetic_conflict_points,
    validate_hamiltonian_compatibility,
)
from instances import PROTEIN_CASES, clique


COLLINEAR = [(0.0, 0.0), (100.0, 0.0), (200.0, 0.0)]


def test_mis_collinear_points():
    q = mis_qubo_from_points(COLLINEAR, conflict_distance=130.0, penalty=2.0)
    assert q.n == 3
    assert q.diag == (-1.0, -1.0, -1.0)
    assert set(q.offdiag) == {(1, 2), (2, 3)}
    assert all(v == 2.0 for v in q.offdiag.values())


def test_mis_far_points_have_no_conflicts():
    q = mis_qubo_from_points([(0.0, 0.0), (500.0, 0.0)], conflict_distance=130.0)
    assert q.offdiag == {}


def test_mis_zero_conflict_distance():
    q = mis_qubo_from_points(COLLINEAR, conflict_distance=0.0)
    assert q.offdiag == {}


def test_mis_rejects_empty_and_bad_penalty():
    with pytest.raises(ValueError, match="empty"):
        mis_qubo_from_points(np.zeros((0, 2)), conflict_distance=10.0)
    with pytest.raises(ValueError, match="penalty"):
        mis_qubo_from_points(COLLINEAR, conflict_distance=10.0, penalty=1.0)


def test_mis_adjacency_rigid_invariance():
    rng = np.random.default_rng(5)
    points = rng.uniform(0, 1000, size=(20, 2))
    theta = 0.7
    rot = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
    moved = points @ rot.T + np.array([123.0, -456.0])
    reflected = moved * np.array([1.0, -1.0])
    base = adjacency_of(mis_qubo_from_points(points, 180.0))
    for variant in (moved, reflected):
        assert adjacency_of(mis_qubo_from_points(variant, 180.0)) == base


def test_mis_carries_source_points():
    q = mis_qubo_from_points(COLLINEAR, conflict_distance=130.0)
    assert q.source_points is not None
    assert q.source_points.shape == (3, 2)


def test_protein_12_6_variables():
    q = protein_folding_qubo(12, {1, 2, 3, 5, 11, 12})
    assert q.n == 5
    assert q.labels == ("δ_{1,12}", "δ_{2,5}", "δ_{2,11}", "δ_{3,12}", "δ_{5,12}")
    assert q.diag == (-1.0,) * 5


@pytest.mark.parametrize("name,expected_vars,expected_dmax,expected_clique", [
    ("prot12_6", 5, 4, 3),
    ("prot17_7", 10, 9, 5),
    ("prot22_8", 9, 7, 4),
])
def test_protein_structure(name, expected_vars, expected_dmax, expected_clique):
    length, hydro = PROTEIN_CASES[name]
    q = protein_folding_qubo(length, hydro)
    g = adjacency_of(q)
    assert q.n == expected_vars
    assert max(g.degrees()) == expected_dmax
    assert max_clique_exact(g) == expected_clique


def test_protein_conflicts_are_symmetric_in_adjacency():
    length, hydro = PROTEIN_CASES["prot17_7"]
    g = adjacency_of(protein_folding_qubo(length, hydro))
    for i, j in g.edges:
        assert g.has_edge(j, i)


def test_protein_rejects_bad_positions():
    with pytest.raises(ValueError, match="outside chain"):
        protein_folding_qubo(10, {1, 11})
    with pytest.raises(ValueError, match="empty"):
        protein_folding_qubo(10, set())


def test_coloring_k3_three_colors():
    q = graph_coloring_qubo(clique(3), colors=3)
    assert q.n == 9
    assert q.offset == 3.0
    g = adjacency_of(q)
    # each vertex block is a 3-clique from the one-hot constraint
    for v in range(3):
        block = [v * 3 + c for c in (1, 2, 3)]
        for a in block:
            for b in block:
                if a < b:
                    assert g.has_edge(a, b)


def test_coloring_seven_vertex_graph():
    g7 = graph_from_edges(7, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7),
                              (7, 1), (1, 4), (2, 6)])
    q = graph_coloring_qubo(g7, colors=3)
    assert q.n == 21
    assert max_clique_exact(adjacency_of(q)) >= 3
    assert validate_hamiltonian_compatibility(q).compatible


def test_coloring_degree_bound():
    g = graph_from_edges(4, [(1, 2), (2, 3), (3, 4)])
    c = 3
    q = graph_coloring_qubo(g, colors=c)
    adj = adjacency_of(q)
    degrees = adj.degrees()
    for v in range(1, g.n + 1):
        for color in range(1, c + 1):
            var = (v - 1) * c + color
            assert degrees[var - 1] <= (c - 1) + c * len(g.neighbors(v))


def test_coloring_rejects_bad_weights():
    with pytest.raises(ValueError, match="color"):
        graph_coloring_qubo(clique(3), colors=0)
    with pytest.raises(ValueError, match="positive"):
        graph_coloring_qubo(clique(3), colors=2, onehot_weight=0.0)


def test_all_generators_machine_compatible():
    instances = [
        mis_qubo_from_points(COLLINEAR, conflict_distance=130.0),
        protein_folding_qubo(17, {1, 2, 5, 6, 10, 12, 17}),
        graph_coloring_qubo(clique(4), colors=3, onehot_weight=2.0, edge_weight=1.0),
    ]
    for q in instances:
        assert validate_hamiltonian_compatibility(q).compatible


def test_compatibility_flags():
    ok = QuboInstance(n=2, diag=(-1.0, -1.0), offdiag={(1, 2): 2.0}, labels=("a", "b"))
    assert validate_hamiltonian_compatibility(ok).compatible
    bad_diag = QuboInstance(n=2, diag=(-1.0, -2.0), offdiag={}, labels=("a", "b"))
    report = validate_hamiltonian_compatibility(bad_diag)
    assert not report.diagonal_constant and not report.compatible
    mixed = QuboInstance(n=3, diag=(0.0, 0.0, 0.0),
                         offdiag={(1, 2): 1.0, (2, 3): -1.0}, labels=("a", "b", "c"))
    assert not validate_hamiltonian_compatibility(mixed).offdiagonal_sign_constant


def test_adjacency_of_examples():
    q = mis_qubo_from_points(COLLINEAR, conflict_distance=130.0)
    g = adjacency_of(q)
    assert g.edges == frozenset({(1, 2), (2, 3)})
    empty = QuboInstance(n=3, diag=(0.0,) * 3, offdiag={}, labels=("a", "b", "c"))
    assert adjacency_of(empty).edges == frozenset()


def test_synthetic_points_deterministic_and_tuned():
    pts = synthetic_conflict_points(87, seed=11, region_size=1400.0)
    again = synthetic_conflict_points(87, seed=11, region_size=1400.0)
    assert np.array_equal(pts, again)
    g = adjacency_of(mis_qubo_from_points(pts, conflict_distance=250.0))
    assert max(g.degrees()) == 14
