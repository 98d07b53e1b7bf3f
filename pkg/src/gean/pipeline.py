"""End-to-end embedding runs: ingest, validate, decompose, lay out, train
where needed, merge components onto the register and write all artifacts."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import io
from .feasibility import check_feasibility, distance_metrics
from .graph import Component, Graph, connected_components, screen_embeddability_2d
from .layout import Embedding, REGISTER_RADIUS_UM, fruchterman_reingold, lift_to_3d, scale_to_register
from .physics import PhysicsSpec, RegisterLimits, default_limits
from .plotting import plot_svg, save_loss_figure, save_register_figure
from .qubo import QuboInstance, adjacency_of, mis_qubo_from_points, validate_hamiltonian_compatibility
from .training import TrainOptions, TrainReport, train_embed

EXIT_FEASIBLE = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2

_SEED_TRAIN = 0
_SEED_LAYOUT = 1


def derive_seed(root: int, *path: int) -> int:
    """Stable per-task seed from a root seed and an index path; identical
    regardless of scheduling, so parallel runs reproduce serial ones."""
    return int(np.random.SeedSequence([root, *path]).generate_state(1)[0])


@dataclass
class PipelineConfig:
    """One embedding run: exactly one input source, physics, layout policy,
    training options and the output directory."""

    out_dir: Path
    graph_path: Path | None = None
    qubo_path: Path | None = None
    points_path: Path | None = None
    conflict_distance: float = 130.0  # meters, for point inputs
    penalty: float = 2.0
    physics: PhysicsSpec = field(default_factory=PhysicsSpec)
    dims: int = 2
    d_min: float | None = None
    d_max: float | None = None
    r_blockade: float | None = None
    epsilon: float | None = None
    layout: str = "auto"  # auto | scale | fr | coords
    coords_path: Path | None = None
    fr_k: float = 4.0
    fr_iterations: int = 500
    seed: int = 0
    max_epochs: int = 5000
    learning_rate: float = 1e-3
    weight_decay: float = 0.01
    workers: int = 1

    def limits(self) -> RegisterLimits:
        base = default_limits(self.physics, dims=self.dims)
        return RegisterLimits(
            d_min=self.d_min if self.d_min is not None else base.d_min,
            d_max=self.d_max if self.d_max is not None else base.d_max,
            r_blockade=self.r_blockade if self.r_blockade is not None else base.r_blockade,
            epsilon=self.epsilon if self.epsilon is not None else base.epsilon,
            dims=self.dims,
        )


@dataclass
class ComponentResult:
    index: int
    component: Component
    initial: Embedding
    report: TrainReport


@dataclass
class RunResult:
    exit_code: int
    summary: dict
    out_dir: Path


def _load_input(config: PipelineConfig) -> tuple[Graph, QuboInstance | None, np.ndarray | None]:
    sources = [config.graph_path, config.qubo_path, config.points_path]
    if sum(s is not None for s in sources) != 1:
        raise ValueError("exactly one of graph_path, qubo_path or points_path is required")
    if config.graph_path is not None:
        return io.read_graph_json(config.graph_path), None, None
    if config.qubo_path is not None:
        q = io.read_qubo_json(config.qubo_path)
        return adjacency_of(q), q, None
    points = io.read_points_csv(config.points_path)
    q = mis_qubo_from_points(points, config.conflict_distance, config.penalty)
    return adjacency_of(q), q, points


def _initial_layout(config: PipelineConfig, component: Component,
                    scaled_points: np.ndarray | None,
                    provided: Embedding | None, seed: int) -> Embedding:
    idx = [orig - 1 for orig in component.original_ids]
    if config.layout == "coords":
        if provided is None:
            raise ValueError("layout 'coords' requires coords_path")
        e = Embedding(coords=provided.coords[idx])
    elif config.layout == "scale" or (config.layout == "auto" and scaled_points is not None):
        if scaled_points is None:
            raise ValueError("layout 'scale' requires a point-set input")
        e = Embedding(coords=scaled_points[idx])
    else:
        e = fruchterman_reingold(component.graph, k=config.fr_k,
                                 iterations=config.fr_iterations, seed=seed)
    if config.dims == 3 and e.dims == 2:
        e = lift_to_3d(e)
    return e


def _embed_component(config: PipelineConfig, limits: RegisterLimits, index: int,
                     component: Component, scaled_points: np.ndarray | None,
                     provided: Embedding | None) -> ComponentResult:
    initial = _initial_layout(config, component, scaled_points, provided,
                              seed=derive_seed(config.seed, index, _SEED_LAYOUT))
    opts = TrainOptions(
        learning_rate=config.learning_rate,
        weight_decay=config.weight_decay,
        max_epochs=config.max_epochs,
        seed=derive_seed(config.seed, index, _SEED_TRAIN),
        record_trace=True,
    )
    report = train_embed(component.graph, initial, limits, opts)
    return ComponentResult(index=index, component=component, initial=initial,
                           report=report)


def _merge_units(units: list[np.ndarray], gap: float, dims: int) -> list[np.ndarray]:
    """Place centered coordinate blocks on a grid whose pitch keeps every
    cross-block pair distance above the blockade radius."""
    if not units:
        return []
    radii = [float(np.linalg.norm(u, axis=1).max()) if u.size else 0.0 for u in units]
    pitch = 2.0 * max(radii) + gap
    per_side = math.ceil(len(units) ** (1.0 / dims))
    placed = []
    for k, unit in enumerate(units):
        cell = []
        rest = k
        for _ in range(dims):
            cell.append(rest % per_side)
            rest //= per_side
        offset = (np.array(cell, dtype=float) - (per_side - 1) / 2.0) * pitch
        placed.append(unit + offset)
    return placed


def run_embed(config: PipelineConfig) -> RunResult:
    """Full pipeline; writes artifacts into config.out_dir and returns the run
    summary with an exit code (0 feasible, 2 ran but infeasible)."""
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    limits = config.limits()

    g, q, points = _load_input(config)
    compatibility = None
    if q is not None:
        compat = validate_hamiltonian_compatibility(q)
        compatibility = {
            "diagonal_constant": compat.diagonal_constant,
            "offdiagonal_sign_constant": compat.offdiagonal_sign_constant,
            "compatible": compat.compatible,
        }
    screening = screen_embeddability_2d(g)

    scaled_points = None
    if points is not None:
        scaled_points = scale_to_register(points, REGISTER_RADIUS_UM).coords
    provided = io.read_coordinates_csv(config.coords_path) if config.coords_path else None

    decomposition = connected_components(g)
    jobs = list(enumerate(decomposition.components))
    if config.workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(
                lambda item: _embed_component(config, limits, item[0], item[1],
                                              scaled_points, provided), jobs))
    else:
        results = [_embed_component(config, limits, k, c, scaled_points, provided)
                   for k, c in jobs]

    # Merge: every component plus each isolated vertex becomes one grid unit.
    units: list[np.ndarray] = []
    unit_ids: list[tuple[int, ...]] = []
    for res in results:
        coords = res.report.final_embedding.coords
        units.append(coords - coords.mean(axis=0))
        unit_ids.append(res.component.original_ids)
    for orig in decomposition.isolated:
        units.append(np.zeros((1, config.dims)))
        unit_ids.append((orig,))
    placed = _merge_units(units, gap=1.2 * limits.r_blockade, dims=config.dims)

    merged_coords = np.zeros((g.n, config.dims))
    for ids, block in zip(unit_ids, placed):
        for row, orig in enumerate(ids):
            merged_coords[orig - 1] = block[row]
    if g.n:
        merged_coords -= merged_coords.mean(axis=0)
    merged = Embedding(coords=merged_coords) if g.n else None

    if merged is not None:
        merged_report = check_feasibility(merged, g, limits)
        merged_metrics = distance_metrics(merged, g)
        oversize = bool(merged_metrics.r_max is not None
                        and merged_metrics.r_max > limits.d_max)
    else:
        merged_report = None
        merged_metrics = None
        oversize = False

    component_rows = []
    for res in results:
        sub = res.component.graph
        degrees = sub.degrees()
        m0 = distance_metrics(res.initial, sub)
        mf = res.report.final_metrics
        component_rows.append({
            "component": res.index,
            "n": sub.n,
            "d_max": max(degrees) if degrees else 0,
            "k_max": screen_embeddability_2d(sub).clique_number,
            "r_min_0": m0.r_min, "r_min_f": mf.r_min,
            "r_max_0": m0.r_max, "r_max_f": mf.r_max,
            "r_adj_0": m0.r_adj, "r_adj_f": mf.r_adj,
            "r_nonadj_0": m0.r_nonadj, "r_nonadj_f": mf.r_nonadj,
            "epochs": res.report.epochs_used,
            "feasible": res.report.feasible,
        })

    all_components_feasible = all(row["feasible"] for row in component_rows)
    overall_feasible = bool(merged_report.feasible) if merged_report else True
    summary = {
        "input": {
            "source": ("graph" if config.graph_path else
                       "qubo" if config.qubo_path else "points"),
            "n": g.n,
            "edges": len(g.edges),
            "dims": config.dims,
            "seed": config.seed,
        },
        "limits": {
            "d_min": limits.d_min, "d_max": limits.d_max,
            "r_blockade": limits.r_blockade, "epsilon": limits.epsilon,
            "dims": limits.dims,
        },
        "compatibility": compatibility,
        "screening": {
            "max_degree": screening.max_degree,
            "clique_number": screening.clique_number,
            "violations": list(screening.violations),
        },
        "components": component_rows,
        "isolated": list(decomposition.isolated),
        "merge": {
            "oversize": oversize,
            "components_feasible": all_components_feasible,
            "feasible": overall_feasible,
            "in_disk": bool(merged_report.in_disk) if merged_report else True,
        },
        "feasible": overall_feasible,
    }

    io.write_summary_json(out / "summary.json", summary)
    if merged is not None:
        io.write_coordinates_csv(out / "coordinates.csv", merged)
        io.write_feasibility_json(out / "feasibility.json", merged_report, merged_metrics)
        (out / "embedding.svg").write_text(plot_svg(merged, g, limits))
        save_register_figure(merged, g, limits, out / "register.png",
                             title=f"n={g.n}, feasible={overall_feasible}")
    for res in results:
        tag = f"{res.index:02d}"
        io.write_coordinates_csv(out / f"component_{tag}.csv",
                                 res.report.final_embedding,
                                 ids=res.component.original_ids)
        io.write_trace_jsonl(out / f"trace_component_{tag}.jsonl", res.report)
        if res.report.loss_trace:
            save_loss_figure(res.report.loss_trace, out / f"loss_component_{tag}.png")

    exit_code = EXIT_FEASIBLE if overall_feasible else EXIT_INFEASIBLE
    return RunResult(exit_code=exit_code, summary=summary, out_dir=out)
