"""File formats: graph/QUBO/physics JSON, coordinate and point CSV, and the
report artifacts (feasibility JSON, training trace JSONL, run summary)."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .feasibility import DistanceMetrics, FeasibilityReport
from .graph import Graph, graph_from_edges
from .layout import Embedding
from .physics import PhysicsSpec
from .qubo import QuboInstance
from .training import TrainReport


def read_graph_json(path: str | Path) -> Graph:
    """Graph file: {"n": int, "edges": [[i, j], ...]} with 1-based indices."""
    data = json.loads(Path(path).read_text())
    return graph_from_edges(int(data["n"]), [tuple(e) for e in data["edges"]])


def write_graph_json(path: str | Path, g: Graph) -> None:
    data = {"n": g.n, "edges": [list(e) for e in sorted(g.edges)]}
    Path(path).write_text(json.dumps(data, indent=2) + "\n")


def read_qubo_json(path: str | Path) -> QuboInstance:
    """QUBO file: {"n", "diag": [...], "offdiag": [[i, j, value], ...], "labels"}."""
    data = json.loads(Path(path).read_text())
    n = int(data["n"])
    offdiag = {}
    for i, j, value in data["offdiag"]:
        key = (int(i), int(j)) if i < j else (int(j), int(i))
        offdiag[key] = offdiag.get(key, 0.0) + float(value)
    labels = data.get("labels") or [f"x_{k}" for k in range(1, n + 1)]
    return QuboInstance(
        n=n,
        diag=tuple(float(v) for v in data["diag"]),
        offdiag={k: v for k, v in sorted(offdiag.items()) if v != 0.0},
        labels=tuple(str(s) for s in labels),
    )


def write_qubo_json(path: str | Path, q: QuboInstance) -> None:
    data = {
        "n": q.n,
        "diag": list(q.diag),
        "offdiag": [[i, j, v] for (i, j), v in sorted(q.offdiag.items())],
        "labels": list(q.labels),
    }
    Path(path).write_text(json.dumps(data, indent=2) + "\n")


def read_physics_json(path: str | Path) -> tuple[PhysicsSpec, int]:
    """Physics file: {"c6_over_hbar", "coherence_time_us", "rabi_rad_per_us", "dims"}."""
    data = json.loads(Path(path).read_text())
    spec = PhysicsSpec(
        c6_over_hbar=float(data["c6_over_hbar"]),
        coherence_time_limit=float(data["coherence_time_us"]),
        rabi_frequency=(None if data.get("rabi_rad_per_us") is None
                        else float(data["rabi_rad_per_us"])),
    )
    return spec, int(data.get("dims", 2))


def write_physics_json(path: str | Path, spec: PhysicsSpec, dims: int) -> None:
    data = {
        "c6_over_hbar": spec.c6_over_hbar,
        "coherence_time_us": spec.coherence_time_limit,
        "rabi_rad_per_us": spec.rabi_frequency,
        "dims": dims,
    }
    Path(path).write_text(json.dumps(data, indent=2) + "\n")


def read_coordinates_csv(path: str | Path) -> Embedding:
    """Coordinates file: header id,x,y[,z]; µm; rows in any id order."""
    with open(path, newline="") as handle:
        rows = list(csv.reader(handle))
    if not rows:
        raise ValueError(f"empty coordinates file: {path}")
    header = [h.strip().lower() for h in rows[0]]
    if (len(header) not in (3, 4) or header[:3] != ["id", "x", "y"]
            or (len(header) == 4 and header[3] != "z")):
        raise ValueError(f"expected header id,x,y[,z], got {rows[0]}")
    entries = {}
    for row in rows[1:]:
        if not row:
            continue
        entries[int(row[0])] = [float(v) for v in row[1:]]
    n = len(entries)
    if sorted(entries) != list(range(1, n + 1)):
        raise ValueError("coordinate ids must be exactly 1..n")
    return Embedding(coords=np.array([entries[k] for k in range(1, n + 1)]))


def write_coordinates_csv(path: str | Path, e: Embedding,
                          ids: tuple[int, ...] | None = None) -> None:
    header = "id,x,y" if e.dims == 2 else "id,x,y,z"
    lines = [header]
    for k in range(e.n):
        vertex = ids[k] if ids is not None else k + 1
        lines.append(",".join([str(vertex)] + [repr(float(v)) for v in e.coords[k]]))
    Path(path).write_text("\n".join(lines) + "\n")


def read_points_csv(path: str | Path) -> np.ndarray:
    """Point-set file (meters): header x,y or id,x,y."""
    with open(path, newline="") as handle:
        rows = list(csv.reader(handle))
    if not rows:
        raise ValueError(f"empty points file: {path}")
    header = [h.strip().lower() for h in rows[0]]
    if header == ["x", "y"]:
        cols = (0, 1)
    elif header == ["id", "x", "y"]:
        cols = (1, 2)
    else:
        raise ValueError(f"expected header x,y or id,x,y, got {rows[0]}")
    points = [[float(row[cols[0]]), float(row[cols[1]])] for row in rows[1:] if row]
    return np.array(points)


def write_points_csv(path: str | Path, points: np.ndarray) -> None:
    lines = ["id,x,y"]
    for k, (x, y) in enumerate(np.asarray(points, dtype=float), start=1):
        lines.append(f"{k},{float(x)!r},{float(y)!r}")
    Path(path).write_text("\n".join(lines) + "\n")


def metrics_as_dict(m: DistanceMetrics) -> dict:
    return {"r_min": m.r_min, "r_max": m.r_max, "r_adj": m.r_adj, "r_nonadj": m.r_nonadj}


def feasibility_as_dict(report: FeasibilityReport, metrics: DistanceMetrics) -> dict:
    return {
        "feasible": report.feasible,
        "violations": [
            {"i": v.i, "j": v.j, "d_um": v.distance, "constraint": v.constraint}
            for v in report.violations
        ],
        "metrics": metrics_as_dict(metrics),
        "in_disk": report.in_disk,
    }


def write_feasibility_json(path: str | Path, report: FeasibilityReport,
                           metrics: DistanceMetrics) -> None:
    Path(path).write_text(json.dumps(feasibility_as_dict(report, metrics), indent=2) + "\n")


def write_trace_jsonl(path: str | Path, report: TrainReport) -> None:
    """One record per epoch: the four loss terms, their total and whether the
    eval-mode output of that epoch passed the feasibility check."""
    lines = []
    for epoch, entry in enumerate(report.loss_trace, start=1):
        record = {
            "epoch": epoch,
            "loss1": entry.loss1,
            "loss2": entry.loss2,
            "loss3": entry.loss3,
            "loss4": entry.loss4,
            "total": entry.total,
            "feasible": bool(report.feasible and epoch == report.epochs_used),
        }
        lines.append(json.dumps(record))
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""))


def write_summary_json(path: str | Path, summary: dict) -> None:
    Path(path).write_text(json.dumps(summary, indent=2) + "\n")
