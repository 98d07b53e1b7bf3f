"""Feasible unit-disk embeddings of QUBO adjacency graphs for neutral-atom
registers: problem generators, physics-derived limits, a constraint-trained
coordinate autoencoder, feasibility checking and a quadratic-model exporter."""

from .feasibility import (
    DistanceMetrics,
    FeasibilityReport,
    Violation,
    check_feasibility,
    distance_metrics,
)
from .graph import (
    Component,
    ComponentDecomposition,
    Graph,
    ScreeningReport,
    adjacency_vector,
    complement,
    connected_components,
    graph_from_edges,
    greedy_clique_lower_bound,
    max_clique_exact,
    pair_index,
    screen_embeddability_2d,
)
from .layout import (
    Embedding,
    fruchterman_reingold,
    lift_to_3d,
    pairwise_distances,
    scale_to_register,
)
from .model import GeanModel, build_model, forward
from .physics import (
    PhysicsSpec,
    RegisterLimits,
    blockade_radius,
    default_limits,
    max_blockade_radius,
    min_rabi_frequency,
)
from .qubo import (
    CompatibilityReport,
    QuboInstance,
    adjacency_of,
    graph_coloring_qubo,
    mis_qubo_from_points,
    protein_folding_qubo,
    synthetic_conflict_points,
    validate_hamiltonian_compatibility,
)
from .training import (
    AdamW,
    LossBreakdown,
    TrainOptions,
    TrainReport,
    gradients,
    loss,
    train_embed,
)
from .udgp import UdgpModel, evaluate_udgp_model, export_udgp_model, parse_udgp_model

__version__ = "0.1.0"

__all__ = [
    "AdamW",
    "CompatibilityReport",
    "Component",
    "ComponentDecomposition",
    "DistanceMetrics",
    "Embedding",
    "FeasibilityReport",
    "GeanModel",
    "Graph",
    "LossBreakdown",
    "PhysicsSpec",
    "QuboInstance",
    "RegisterLimits",
    "ScreeningReport",
    "TrainOptions",
    "TrainReport",
    "UdgpModel",
    "Violation",
    "adjacency_of",
    "adjacency_vector",
    "blockade_radius",
    "build_model",
    "check_feasibility",
    "complement",
    "connected_components",
    "default_limits",
    "distance_metrics",
    "evaluate_udgp_model",
    "export_udgp_model",
    "forward",
    "fruchterman_reingold",
    "gradients",
    "graph_coloring_qubo",
    "graph_from_edges",
    "greedy_clique_lower_bound",
    "lift_to_3d",
    "loss",
    "max_blockade_radius",
    "max_clique_exact",
    "min_rabi_frequency",
    "mis_qubo_from_points",
    "pair_index",
    "pairwise_distances",
    "parse_udgp_model",
    "protein_folding_qubo",
    "scale_to_register",
    "screen_embeddability_2d",
    "synthetic_conflict_points",
    "train_embed",
    "validate_hamiltonian_compatibility",
]
