"""Command-line interface: generate problem instances, lay out coordinates,
run the full embedding pipeline, check feasibility, export the quadratic
model and render plots."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .feasibility import check_feasibility, distance_metrics
from .layout import REGISTER_RADIUS_UM, fruchterman_reingold, lift_to_3d, scale_to_register
from .physics import PhysicsSpec, default_limits
from .pipeline import EXIT_ERROR, PipelineConfig, run_embed
from .plotting import plot_svg
from .qubo import (graph_coloring_qubo, mis_qubo_from_points, protein_folding_qubo,
                   synthetic_conflict_points)
from .udgp import export_udgp_model


def _add_physics_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--c6", type=float, default=None,
                   help="interaction coefficient over hbar (rad*um^6/us)")
    p.add_argument("--coherence-us", type=float, default=None,
                   help="coherence time limit in us")
    p.add_argument("--rabi", type=float, default=None,
                   help="explicit Rabi frequency (rad/us)")
    p.add_argument("--dims", type=int, choices=(2, 3), default=2)
    p.add_argument("--d-min", type=float, default=None, help="override d_min (um)")
    p.add_argument("--d-max", type=float, default=None, help="override d_max (um)")
    p.add_argument("--blockade-radius", type=float, default=None,
                   help="override the blockade radius (um)")
    p.add_argument("--epsilon", type=float, default=None,
                   help="override the strictness margin (um)")


def _physics_from_args(args: argparse.Namespace) -> PhysicsSpec:
    kwargs = {}
    if args.c6 is not None:
        kwargs["c6_over_hbar"] = args.c6
    if args.coherence_us is not None:
        kwargs["coherence_time_limit"] = args.coherence_us
    if args.rabi is not None:
        kwargs["rabi_frequency"] = args.rabi
    return PhysicsSpec(**kwargs)


def _limits_from_args(args: argparse.Namespace):
    base = default_limits(_physics_from_args(args), dims=args.dims)
    from .physics import RegisterLimits
    return RegisterLimits(
        d_min=args.d_min if args.d_min is not None else base.d_min,
        d_max=args.d_max if args.d_max is not None else base.d_max,
        r_blockade=args.blockade_radius if args.blockade_radius is not None else base.r_blockade,
        epsilon=args.epsilon if args.epsilon is not None else base.epsilon,
        dims=args.dims,
    )


def _parse_positions(text: str) -> set[int]:
    return {int(tok) for tok in text.replace(",", " ").split()}


def _cmd_generate(args: argparse.Namespace) -> int:
    out = Path(args.out)
    if args.family == "mis":
        if args.points:
            points = io.read_points_csv(args.points)
        else:
            points = synthetic_conflict_points(args.count, seed=args.seed,
                                               region_size=args.region_m)
            io.write_points_csv(out.with_suffix(".points.csv"), points)
            print(f"wrote {out.with_suffix('.points.csv')}")
        q = mis_qubo_from_points(points, args.conflict_distance, args.penalty)
    elif args.family == "protein":
        q = protein_folding_qubo(args.chain_length, _parse_positions(args.hydrophobic),
                                 args.penalty)
    else:  # coloring
        g = io.read_graph_json(args.graph)
        q = graph_coloring_qubo(g, args.colors, args.onehot_weight, args.edge_weight)
    io.write_qubo_json(out, q)
    print(f"wrote {out} (n={q.n}, couplings={len(q.offdiag)})")
    return 0


def _cmd_layout(args: argparse.Namespace) -> int:
    if args.method == "scale":
        points = io.read_points_csv(args.points)
        e = scale_to_register(points, args.radius)
    else:
        g = io.read_graph_json(args.graph)
        e = fruchterman_reingold(g, k=args.k, iterations=args.iterations,
                                 seed=args.seed, domain_radius=args.radius)
    if args.dims == 3:
        e = lift_to_3d(e)
    io.write_coordinates_csv(args.out, e)
    print(f"wrote {args.out} ({e.n} points, {e.dims}D)")
    return 0


def _cmd_embed(args: argparse.Namespace) -> int:
    config = PipelineConfig(
        out_dir=Path(args.out),
        graph_path=Path(args.graph) if args.graph else None,
        qubo_path=Path(args.qubo) if args.qubo else None,
        points_path=Path(args.points) if args.points else None,
        conflict_distance=args.conflict_distance,
        penalty=args.penalty,
        physics=_physics_from_args(args),
        dims=args.dims,
        d_min=args.d_min, d_max=args.d_max,
        r_blockade=args.blockade_radius, epsilon=args.epsilon,
        layout=args.layout,
        coords_path=Path(args.coords) if args.coords else None,
        fr_k=args.k, fr_iterations=args.iterations,
        seed=args.seed, max_epochs=args.max_epochs,
        weight_decay=args.weight_decay,
        workers=args.workers,
    )
    result = run_embed(config)
    merge = result.summary["merge"]
    print(f"n={result.summary['input']['n']} components={len(result.summary['components'])} "
          f"isolated={len(result.summary['isolated'])}")
    for row in result.summary["components"]:
        print(f"  component {row['component']}: n={row['n']} d_max={row['d_max']} "
              f"|K_max|={row['k_max']} epochs={row['epochs']} feasible={row['feasible']}")
    print(f"merged feasible={merge['feasible']} oversize={merge['oversize']} "
          f"-> artifacts in {result.out_dir}")
    return result.exit_code


def _cmd_check(args: argparse.Namespace) -> int:
    g = io.read_graph_json(args.graph)
    e = io.read_coordinates_csv(args.coords)
    limits = _limits_from_args(args)
    if e.dims != limits.dims:
        raise ValueError(f"coordinates are {e.dims}D but --dims is {limits.dims}")
    report = check_feasibility(e, g, limits)
    metrics = distance_metrics(e, g)
    payload = io.feasibility_as_dict(report, metrics)
    if args.out:
        io.write_feasibility_json(args.out, report, metrics)
        print(f"wrote {args.out}")
    else:
        print(json.dumps(payload, indent=2))
    return 0 if report.feasible else 2


def _cmd_export_model(args: argparse.Namespace) -> int:
    g = io.read_graph_json(args.graph)
    limits = _limits_from_args(args)
    text = export_udgp_model(g, limits, dims=args.dims)
    Path(args.out).write_text(text)
    print(f"wrote {args.out}")
    return 0


def _cmd_plot(args: argparse.Namespace) -> int:
    g = io.read_graph_json(args.graph)
    e = io.read_coordinates_csv(args.coords)
    limits = _limits_from_args(args)
    Path(args.out).write_text(plot_svg(e, g, limits))
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gean",
        description="Unit-disk embeddings of QUBO adjacency graphs for "
                    "neutral-atom registers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a QUBO instance")
    fam = p.add_subparsers(dest="family", required=True)
    mis = fam.add_parser("mis", help="maximum independent set from points")
    mis.add_argument("--points", default=None, help="points CSV (meters)")
    mis.add_argument("--count", type=int, default=87,
                     help="synthetic point count when no --points file is given")
    mis.add_argument("--region-m", type=float, default=1400.0,
                     help="synthetic region side length (meters)")
    mis.add_argument("--conflict-distance", type=float, default=130.0)
    mis.add_argument("--penalty", type=float, default=2.0)
    mis.add_argument("--seed", type=int, default=0)
    mis.add_argument("--out", required=True)
    mis.set_defaults(func=_cmd_generate)
    prot = fam.add_parser("protein", help="hydrophobic-matching folding QUBO")
    prot.add_argument("--chain-length", type=int, required=True)
    prot.add_argument("--hydrophobic", required=True,
                      help="comma-separated hydrophobic positions")
    prot.add_argument("--penalty", type=float, default=2.0)
    prot.add_argument("--out", required=True)
    prot.set_defaults(func=_cmd_generate)
    col = fam.add_parser("coloring", help="one-hot graph-coloring QUBO")
    col.add_argument("--graph", required=True, help="graph JSON")
    col.add_argument("--colors", type=int, required=True)
    col.add_argument("--onehot-weight", type=float, default=1.0)
    col.add_argument("--edge-weight", type=float, default=1.0)
    col.add_argument("--out", required=True)
    col.set_defaults(func=_cmd_generate)

    p = sub.add_parser("layout", help="compute initial coordinates")
    p.add_argument("--method", choices=("fr", "scale"), default="fr")
    p.add_argument("--graph", default=None, help="graph JSON (for fr)")
    p.add_argument("--points", default=None, help="points CSV (for scale)")
    p.add_argument("--k", type=float, default=4.0, help="force balance distance (um)")
    p.add_argument("--iterations", type=int, default=500)
    p.add_argument("--radius", type=float, default=REGISTER_RADIUS_UM)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dims", type=int, choices=(2, 3), default=2)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_layout)

    p = sub.add_parser("embed", help="run the full embedding pipeline")
    p.add_argument("--graph", default=None, help="graph JSON input")
    p.add_argument("--qubo", default=None, help="QUBO JSON input")
    p.add_argument("--points", default=None, help="points CSV input (meters)")
    p.add_argument("--conflict-distance", type=float, default=130.0)
    p.add_argument("--penalty", type=float, default=2.0)
    p.add_argument("--layout", choices=("auto", "scale", "fr", "coords"), default="auto")
    p.add_argument("--coords", default=None, help="provided coordinates CSV")
    p.add_argument("--k", type=float, default=4.0)
    p.add_argument("--iterations", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-epochs", type=int, default=5000)
    p.add_argument("--weight-decay", type=float, default=0.01)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True, help="output directory")
    _add_physics_args(p)
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("check", help="feasibility-check coordinates against a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--coords", required=True)
    p.add_argument("--out", default=None, help="write the report JSON here")
    _add_physics_args(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("export-model", help="write the quadratic placement model")
    p.add_argument("--graph", required=True)
    p.add_argument("--out", required=True)
    _add_physics_args(p)
    p.set_defaults(func=_cmd_export_model)

    p = sub.add_parser("plot", help="render an embedding to SVG")
    p.add_argument("--graph", required=True)
    p.add_argument("--coords", required=True)
    p.add_argument("--out", required=True)
    _add_physics_args(p)
    p.set_defaults(func=_cmd_plot)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
