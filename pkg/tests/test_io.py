from __future__ import annotations

import json

import numpy as np
import pytest

from gean import Embedding, PhysicsSpec, RegisterLimits, check_feasibility, distance_metrics
from gean import io
from gean.training import LossBreakdown, TrainReport
from instances import clique, path, protein_graph
from gean import protein_folding_qubo


def test_graph_json_roundtrip(tmp_path):
    g = protein_graph("prot17_7")
    target = tmp_path / "g.json"
    io.write_graph_json(target, g)
    assert io.read_graph_json(target) == g
    data = json.loads(target.read_text())
    assert set(data) == {"n", "edges"}


def test_qubo_json_roundtrip(tmp_path):
    q = protein_folding_qubo(12, {1, 2, 3, 5, 11, 12})
    target = tmp_path / "q.json"
    io.write_qubo_json(target, q)
    back = io.read_qubo_json(target)
    assert back.n == q.n
    assert back.diag == q.diag
    assert back.offdiag == q.offdiag
    assert back.labels == q.labels


def test_qubo_json_merges_duplicate_entries(tmp_path):
    target = tmp_path / "q.json"
    target.write_text(json.dumps({
        "n": 2, "diag": [-1, -1],
        "offdiag": [[1, 2, 1.5], [2, 1, 0.5]],
        "labels": ["a", "b"],
    }))
    q = io.read_qubo_json(target)
    assert q.offdiag == {(1, 2): 2.0}


def test_physics_json_roundtrip(tmp_path):
    spec = PhysicsSpec(c6_over_hbar=9e5, coherence_time_limit=2.5, rabi_frequency=None)
    target = tmp_path / "p.json"
    io.write_physics_json(target, spec, dims=3)
    back, dims = io.read_physics_json(target)
    assert back == spec and dims == 3


def test_coordinates_csv_roundtrip_exact(tmp_path):
    rng = np.random.default_rng(0)
    for dims in (2, 3):
        e = Embedding(coords=rng.uniform(-50, 50, size=(6, dims)))
        target = tmp_path / f"c{dims}.csv"
        io.write_coordinates_csv(target, e)
        back = io.read_coordinates_csv(target)
        assert np.array_equal(back.coords, e.coords)  # repr round-trips exactly


def test_coordinates_csv_rejects_bad_header(tmp_path):
    target = tmp_path / "bad.csv"
    target.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(ValueError, match="header"):
        io.read_coordinates_csv(target)


def test_coordinates_csv_rejects_noncontiguous_ids(tmp_path):
    target = tmp_path / "bad.csv"
    target.write_text("id,x,y\n1,0,0\n3,1,1\n")
    with pytest.raises(ValueError, match="1..n"):
        io.read_coordinates_csv(target)


def test_points_csv_roundtrip(tmp_path):
    points = np.random.default_rng(1).uniform(0, 1000, size=(5, 2))
    target = tmp_path / "pts.csv"
    io.write_points_csv(target, points)
    assert np.array_equal(io.read_points_csv(target), points)


def test_points_csv_accepts_bare_xy(tmp_path):
    target = tmp_path / "pts.csv"
    target.write_text("x,y\n1.5,2.5\n3.0,4.0\n")
    assert np.array_equal(io.read_points_csv(target), [[1.5, 2.5], [3.0, 4.0]])


def test_feasibility_json_shape(tmp_path):
    limits = RegisterLimits(d_min=4.0, d_max=100.0, r_blockade=10.26,
                            epsilon=0.1, dims=2)
    e = Embedding(coords=np.array([[0.0, 0.0], [3.0, 0.0]]))
    report = check_feasibility(e, clique(2), limits)
    metrics = distance_metrics(e, clique(2))
    target = tmp_path / "f.json"
    io.write_feasibility_json(target, report, metrics)
    data = json.loads(target.read_text())
    assert data["feasible"] is False
    assert data["violations"] == [
        {"i": 1, "j": 2, "d_um": 3.0, "constraint": "MinDist"}]
    assert data["metrics"] == {"r_min": 3.0, "r_max": 3.0, "r_adj": 3.0,
                               "r_nonadj": None}
    assert data["in_disk"] is True


def test_trace_jsonl_schema(tmp_path):
    report = TrainReport(
        epochs_used=2,
        feasible=True,
        loss_trace=(LossBreakdown(1.0, 0.5, 0.0, 0.25),
                    LossBreakdown(0.0, 0.0, 0.0, 0.0)),
        final_embedding=Embedding(coords=np.zeros((2, 2))),
        final_metrics=distance_metrics(Embedding(coords=np.zeros((2, 2))), clique(2)),
    )
    target = tmp_path / "t.jsonl"
    io.write_trace_jsonl(target, report)
    lines = [json.loads(line) for line in target.read_text().splitlines()]
    assert len(lines) == 2
    assert lines[0] == {"epoch": 1, "loss1": 1.0, "loss2": 0.5, "loss3": 0.0,
                        "loss4": 0.25, "total": 1.75, "feasible": False}
    assert lines[1]["feasible"] is True


def test_component_csv_with_original_ids(tmp_path):
    e = Embedding(coords=np.array([[1.0, 2.0], [3.0, 4.0]]))
    target = tmp_path / "c.csv"
    io.write_coordinates_csv(target, e, ids=(4, 9))
    rows = target.read_text().splitlines()
    assert rows[0] == "id,x,y"
    assert rows[1].startswith("4,") and rows[2].startswith("9,")
