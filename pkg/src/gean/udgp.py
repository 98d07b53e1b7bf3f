"""Solver-neutral export of the constrained unit-disk placement problem.

The emitted model minimizes the number of unfeasible pairs: one binary
indicator per pair relaxes that pair's distance constraints big-M style, and
an objective value of zero certifies a fully feasible placement. The text
format is line-oriented with one (linear or quadratic) term per line; the
grammar is documented in docs/udgp_format.md.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graph import Graph, pair_arrays
from .layout import Embedding
from .physics import RegisterLimits

_AXES = ("x", "y", "z")
FORMAT_VERSION = 1


@dataclass(frozen=True)
class Term:
    coefficient: float
    variables: tuple[str, ...]  # one name (linear) or two (quadratic)


@dataclass(frozen=True)
class Constraint:
    name: str
    sense: str  # "le", "ge" or "eq"
    rhs: float
    terms: tuple[Term, ...]


@dataclass(frozen=True)
class UdgpModel:
    """Parsed quadratic model: variable bounds, binaries, objective, constraints."""

    dims: int
    n: int
    bounds: dict[str, tuple[float, float]]
    binaries: tuple[str, ...]
    objective: tuple[Term, ...]
    constraints: tuple[Constraint, ...]


def _position_vars(i: int, dims: int) -> list[str]:
    return [f"p_{i}_{_AXES[a]}" for a in range(dims)]


def export_udgp_model(g: Graph, limits: RegisterLimits, dims: int) -> str:
    """Serialize the constrained placement model for the given adjacency.

    Per pair: a definitional constraint ties the auxiliary d2 variable to the
    squared coordinate distance; edges must satisfy d2 <= r_b^2 unless their
    indicator is raised (big-M of (100*sqrt(2))^2 - r_b^2) and must keep
    d2 >= d_min^2 when it is not; non-edges symmetrically against d_max and
    the margin-shifted blockade radius.
    """
    if dims not in (2, 3):
        raise ValueError(f"dims must be 2 or 3, got {dims}")
    half = limits.d_max / 2.0
    rb2 = limits.r_blockade ** 2
    big_m_edge = (limits.d_max * math.sqrt(2.0)) ** 2 - rb2
    dmax2 = limits.d_max ** 2
    dmin2 = limits.d_min ** 2
    strict2 = (limits.r_blockade + limits.epsilon) ** 2
    d2_cap = dims * limits.d_max ** 2

    lines: list[str] = []
    out = lines.append
    out("# constrained unit-disk placement model: minimize the number of")
    out("# relaxed pairs; objective 0 certifies a feasible embedding")
    out(f"udgp-model {FORMAT_VERSION}")
    out(f"dims {dims}")
    out(f"vertices {g.n}")
    out(f"param d_min {limits.d_min!r}")
    out(f"param d_max {limits.d_max!r}")
    out(f"param r_b {limits.r_blockade!r}")
    out(f"param epsilon {limits.epsilon!r}")

    i_idx, j_idx = pair_arrays(g.n)
    pairs = [(int(i) + 1, int(j) + 1) for i, j in zip(i_idx, j_idx)]
    for v in range(1, g.n + 1):
        for name in _position_vars(v, dims):
            out(f"var {name} continuous {-half!r} {half!r}")
    for i, j in pairs:
        out(f"var d2_{i}_{j} continuous 0.0 {d2_cap!r}")
    for i, j in pairs:
        out(f"var gamma_{i}_{j} binary")

    out("minimize:")
    for i, j in pairs:
        out(f"term 1.0 gamma_{i}_{j}")

    for i, j in pairs:
        out(f"constraint def_{i}_{j} eq 0.0:")
        out(f"term 1.0 d2_{i}_{j}")
        for a in range(dims):
            pi, pj = f"p_{i}_{_AXES[a]}", f"p_{j}_{_AXES[a]}"
            out(f"term -1.0 {pi} {pi}")
            out(f"term 2.0 {pi} {pj}")
            out(f"term -1.0 {pj} {pj}")
        if g.has_edge(i, j):
            out(f"constraint edge_max_{i}_{j} le {rb2!r}:")
            out(f"term 1.0 d2_{i}_{j}")
            out(f"term {-big_m_edge!r} gamma_{i}_{j}")
            out(f"constraint edge_min_{i}_{j} ge {dmin2!r}:")
            out(f"term 1.0 d2_{i}_{j}")
            out(f"term {dmin2!r} gamma_{i}_{j}")
        else:
            out(f"constraint nonedge_max_{i}_{j} le {dmax2!r}:")
            out(f"term 1.0 d2_{i}_{j}")
            out(f"term {-dmax2!r} gamma_{i}_{j}")
            out(f"constraint nonedge_min_{i}_{j} ge {strict2!r}:")
            out(f"term 1.0 d2_{i}_{j}")
            out(f"term {strict2!r} gamma_{i}_{j}")
    return "\n".join(lines) + "\n"


def parse_udgp_model(text: str) -> UdgpModel:
    """Parse the emitted text format back into a structured model."""
    dims = n = None
    bounds: dict[str, tuple[float, float]] = {}
    binaries: list[str] = []
    objective: list[Term] = []
    constraints: list[Constraint] = []
    target: list[Term] | None = None
    pending: tuple[str, str, float] | None = None

    def close_pending() -> None:
        nonlocal pending, target
        if pending is not None:
            name, sense, rhs = pending
            constraints.append(Constraint(name=name, sense=sense, rhs=rhs,
                                          terms=tuple(target)))
            pending = None
        target = None

    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        head = parts[0]
        if head == "udgp-model":
            continue
        if head == "dims":
            dims = int(parts[1])
        elif head == "vertices":
            n = int(parts[1])
        elif head == "param":
            continue
        elif head == "var":
            close_pending()
            if parts[2] == "binary":
                binaries.append(parts[1])
            else:
                bounds[parts[1]] = (float(parts[3]), float(parts[4]))
        elif head == "minimize:":
            close_pending()
            target = objective
        elif head == "constraint":
            close_pending()
            if parts[2] not in ("le", "ge", "eq") or not parts[3].endswith(":"):
                raise ValueError(f"malformed constraint header: {line}")
            pending = (parts[1], parts[2], float(parts[3][:-1]))
            target = []
        elif head == "term":
            if target is None:
                raise ValueError(f"term outside objective or constraint: {line}")
            target.append(Term(coefficient=float(parts[1]), variables=tuple(parts[2:])))
        else:
            raise ValueError(f"unrecognized line: {line}")
    close_pending()
    if dims is None or n is None:
        raise ValueError("model text is missing the dims or vertices header")
    return UdgpModel(dims=dims, n=n, bounds=bounds, binaries=tuple(binaries),
                     objective=tuple(objective), constraints=tuple(constraints))


def _evaluate_terms(terms: tuple[Term, ...], assignment: dict[str, float]) -> float:
    total = 0.0
    for term in terms:
        value = term.coefficient
        for name in term.variables:
            value *= assignment[name]
        total += value
    return total


def assignment_from_embedding(model: UdgpModel, e: Embedding,
                              gamma: float = 0.0) -> dict[str, float]:
    """Variable assignment induced by an embedding: positions from the
    coordinates, all pair indicators at `gamma`, squared distances derived."""
    if e.n != model.n or e.dims != model.dims:
        raise ValueError(
            f"embedding shape ({e.n}, {e.dims}) does not match model ({model.n}, {model.dims})"
        )
    assignment: dict[str, float] = {}
    for v in range(1, model.n + 1):
        for a in range(model.dims):
            assignment[f"p_{v}_{_AXES[a]}"] = float(e.coords[v - 1, a])
    i_idx, j_idx = pair_arrays(model.n)
    for i, j in zip(i_idx, j_idx):
        delta = e.coords[i] - e.coords[j]
        assignment[f"d2_{i + 1}_{j + 1}"] = float((delta * delta).sum())
    for name in model.binaries:
        assignment[name] = gamma
    return assignment


def evaluate_udgp_model(model: UdgpModel, assignment: dict[str, float],
                        rel_tol: float = 1e-9) -> tuple[float, list[str]]:
    """Objective value and the names of violated constraints/bounds under the
    assignment. Comparisons allow a relative float tolerance; the model's
    semantics are otherwise exact."""
    violated: list[str] = []
    for name, (lo, hi) in model.bounds.items():
        value = assignment[name]
        slack = rel_tol * max(1.0, abs(lo), abs(hi))
        if value < lo - slack or value > hi + slack:
            violated.append(f"bound:{name}")
    for name in model.binaries:
        value = assignment[name]
        if not (math.isclose(value, 0.0, abs_tol=rel_tol)
                or math.isclose(value, 1.0, rel_tol=rel_tol)):
            violated.append(f"binary:{name}")
    for constraint in model.constraints:
        lhs = _evaluate_terms(constraint.terms, assignment)
        slack = rel_tol * max(1.0, abs(constraint.rhs))
        if constraint.sense == "le":
            ok = lhs <= constraint.rhs + slack
        elif constraint.sense == "ge":
            ok = lhs >= constraint.rhs - slack
        else:
            ok = abs(lhs - constraint.rhs) <= slack
        if not ok:
            violated.append(constraint.name)
    return _evaluate_terms(model.objective, assignment), violated
