"""Constraint loss, AdamW optimizer and the feasibility-stopped training loop."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .feasibility import DistanceMetrics, check_feasibility, distance_metrics
from .graph import Graph, adjacency_vector
from .layout import Embedding
from .model import GeanModel, _flatten, _run, _unflatten, backpropagate, build_model
from .physics import RegisterLimits

ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8


@dataclass(frozen=True)
class LossBreakdown:
    """The four constraint penalties and their sum, all averaged over pairs."""

    loss1: float  # pairs farther than the register diameter
    loss2: float  # pairs closer than the minimum spacing
    loss3: float  # adjacent pairs beyond the blockade radius
    loss4: float  # non-adjacent pairs inside the blockade radius plus margin

    @property
    def total(self) -> float:
        return self.loss1 + self.loss2 + self.loss3 + self.loss4


@dataclass(frozen=True)
class TrainOptions:
    learning_rate: float = 1e-3
    weight_decay: float = 0.01
    max_epochs: int = 5000
    seed: int = 0
    record_trace: bool = True

    def __post_init__(self) -> None:
        if self.learning_rate <= 0:
            raise ValueError(f"learning rate must be positive, got {self.learning_rate}")
        if self.max_epochs < 1:
            raise ValueError(f"max_epochs must be at least 1, got {self.max_epochs}")


@dataclass(frozen=True)
class TrainReport:
    epochs_used: int
    feasible: bool
    loss_trace: tuple[LossBreakdown, ...]
    final_embedding: Embedding
    final_metrics: DistanceMetrics


def loss(distances: np.ndarray, g: Graph, limits: RegisterLimits) -> LossBreakdown:
    """Four-term hinge loss over the pair-distance vector.

    Every term averages over all C(n,2) pairs, with the adjacency indicator
    inside the average for the two blockade terms. The margin epsilon moves
    the non-adjacent target to r_blockade + epsilon so the strict inequality
    survives optimization.
    """
    d = np.asarray(distances, dtype=float)
    if d.shape != (g.pair_count,):
        raise ValueError(
            f"distance vector has length {d.size}, expected C({g.n},2)={g.pair_count}"
        )
    adj = adjacency_vector(g)
    loss1 = float(np.maximum(d - limits.d_max, 0.0).mean()) if d.size else 0.0
    loss2 = float(np.maximum(limits.d_min - d, 0.0).mean()) if d.size else 0.0
    loss3 = float((adj * np.maximum(d - limits.r_blockade, 0.0)).mean()) if d.size else 0.0
    loss4 = float(((1.0 - adj) * np.maximum(
        limits.r_blockade + limits.epsilon - d, 0.0)).mean()) if d.size else 0.0
    return LossBreakdown(loss1=loss1, loss2=loss2, loss3=loss3, loss4=loss4)


def _loss_distance_grad(d: np.ndarray, adj: np.ndarray,
                        limits: RegisterLimits) -> np.ndarray:
    """d(total loss)/d(distances); hinge kinks take subgradient zero."""
    count = d.size
    grad = (
        (d > limits.d_max).astype(float)
        - (d < limits.d_min)
        + adj * (d > limits.r_blockade)
        - (1.0 - adj) * (d < limits.r_blockade + limits.epsilon)
    )
    return grad / count


def gradients(model: GeanModel, e: Embedding, g: Graph, limits: RegisterLimits,
              rng: np.random.Generator | None = None
              ) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Reverse-mode gradients of the total loss w.r.t. all trainable weights
    and biases. When rng is given the pass runs in train mode and the dropout
    mask is shared between the forward value and its gradient."""
    cache = _run(model, _flatten(model, e), train=rng is not None, rng=rng)
    adj = adjacency_vector(g)
    d_grad = _loss_distance_grad(cache.distances, adj, limits)
    return backpropagate(model, cache, d_grad)


class AdamW:
    """Decoupled-weight-decay Adam on a flat parameter list (updates in place).

    Decay applies only where the corresponding `decay` flag is set; moments
    use bias correction and the standard (0.9, 0.999, 1e-8) constants.
    """

    def __init__(self, params: list[np.ndarray], learning_rate: float = 1e-3,
                 weight_decay: float = 0.01, decay: list[bool] | None = None):
        self.params = params
        self.learning_rate = learning_rate
        self.weight_decay = weight_decay
        self.decay = [True] * len(params) if decay is None else decay
        if len(self.decay) != len(params):
            raise ValueError("decay flags must match the parameter list")
        self.m = [np.zeros_like(p) for p in params]
        self.v = [np.zeros_like(p) for p in params]
        self.t = 0

    def step(self, grads: list[np.ndarray]) -> None:
        if len(grads) != len(self.params):
            raise ValueError("gradient list must match the parameter list")
        self.t += 1
        lr = self.learning_rate
        for k, (p, grad) in enumerate(zip(self.params, grads)):
            if p.shape != grad.shape:
                raise ValueError(f"gradient {k} has shape {grad.shape}, expected {p.shape}")
            if self.decay[k] and self.weight_decay:
                p -= lr * self.weight_decay * p
            self.m[k] = ADAM_BETA1 * self.m[k] + (1.0 - ADAM_BETA1) * grad
            self.v[k] = ADAM_BETA2 * self.v[k] + (1.0 - ADAM_BETA2) * grad * grad
            m_hat = self.m[k] / (1.0 - ADAM_BETA1 ** self.t)
            v_hat = self.v[k] / (1.0 - ADAM_BETA2 ** self.t)
            p -= lr * m_hat / (np.sqrt(v_hat) + ADAM_EPS)


def train_embed(g: Graph, initial: Embedding, limits: RegisterLimits,
                opts: TrainOptions | None = None) -> TrainReport:
    """Train the coordinate transform until the output embedding is feasible.

    The single training sample is the initial embedding (normalized by the
    register half-width at the network boundary). The initial embedding is
    checked first and returned untouched with zero epochs when it already
    satisfies every constraint. Each epoch runs one train-mode pass and
    optimizer step, then a deterministic eval-mode pass whose output is
    feasibility-checked; training stops at the first feasible epoch.
    """
    if opts is None:
        opts = TrainOptions()
    if g.n != initial.n:
        raise ValueError(f"graph has {g.n} vertices but embedding has {initial.n}")
    if initial.dims != limits.dims:
        raise ValueError(f"embedding is {initial.dims}D but limits are {limits.dims}D")

    if check_feasibility(initial, g, limits).feasible:
        return TrainReport(epochs_used=0, feasible=True, loss_trace=(),
                           final_embedding=initial,
                           final_metrics=distance_metrics(initial, g))

    model = build_model(g.n, initial.dims, seed=opts.seed)
    optimizer = AdamW(model.parameters(), learning_rate=opts.learning_rate,
                      weight_decay=opts.weight_decay, decay=model.decay_flags())
    dropout_rng = np.random.default_rng([opts.seed, 1])
    adj = adjacency_vector(g)
    in_vec = _flatten(model, initial)

    trace: list[LossBreakdown] = []
    feasible = False
    epochs_used = opts.max_epochs
    final = initial
    for epoch in range(1, opts.max_epochs + 1):
        cache = _run(model, in_vec, train=True, rng=dropout_rng)
        d_grad = _loss_distance_grad(cache.distances, adj, limits)
        weight_grads, bias_grads = backpropagate(model, cache, d_grad)
        grads: list[np.ndarray] = []
        for wg, bg in zip(weight_grads, bias_grads):
            grads.extend((wg, bg))
        optimizer.step(grads)

        eval_cache = _run(model, in_vec, train=False, rng=None)
        final = _unflatten(model, eval_cache.out_vec)
        if opts.record_trace:
            trace.append(loss(cache.distances, g, limits))
        if check_feasibility(final, g, limits).feasible:
            feasible = True
            epochs_used = epoch
            break

    return TrainReport(epochs_used=epochs_used, feasible=feasible,
                       loss_trace=tuple(trace), final_embedding=final,
                       final_metrics=distance_metrics(final, g))
