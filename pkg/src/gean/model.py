"""Coordinate-transforming autoencoder with fixed pairwise-distance heads.

The trainable stack maps the flattened, normalized input coordinates through
a symmetric bottleneck back to one output node per coordinate. Two frozen
sparse layers then turn the transformed coordinates into all pairwise
distances: a signed ±1 map producing per-axis coordinate differences, a
squaring activation, a +1 summing map over the axes of each pair, and a
final square root.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .graph import pair_arrays
from .layout import Embedding

HIDDEN_WIDTHS = (64, 36, 18, 9, 18, 36, 64)
DROPOUT_P = 0.5
OUTPUT_SCALE = 50.0  # output activation is 50*tanh, the register half-width
DIST_EPS = 1e-12  # keeps the distance gradient finite when points coincide


@dataclass
class GeanModel:
    """Trainable dense layers plus the frozen difference head.

    Layer vectors are laid out axis-major: nodes 1..n carry x, nodes n+1..2n
    carry y (and 2n+1..3n carry z in 3D). Difference nodes follow the same
    axis-major order, each axis block ordered by pair_index.
    """

    n: int
    dims: int
    weights: list[np.ndarray]
    biases: list[np.ndarray]
    diff_head: sparse.csr_matrix  # (dims*C(n,2), dims*n), entries ±1, frozen

    @property
    def pair_count(self) -> int:
        return self.n * (self.n - 1) // 2

    def parameters(self) -> list[np.ndarray]:
        """Trainable arrays, weight before bias per layer; heads are excluded."""
        params: list[np.ndarray] = []
        for w, b in zip(self.weights, self.biases):
            params.extend((w, b))
        return params

    def decay_flags(self) -> list[bool]:
        """True for entries of parameters() that take weight decay (weights only)."""
        return [True, False] * len(self.weights)


def _difference_head(n: int, dims: int) -> sparse.csr_matrix:
    """±1 sparse map from axis-major coordinates to axis-major pair differences."""
    i, j = pair_arrays(n)
    pairs = i.size
    rows = np.concatenate([axis * pairs + np.arange(pairs) for axis in range(dims)])
    cols_i = np.concatenate([axis * n + i for axis in range(dims)])
    cols_j = np.concatenate([axis * n + j for axis in range(dims)])
    data = np.ones(rows.size)
    head = sparse.coo_matrix(
        (np.concatenate([data, -data]),
         (np.concatenate([rows, rows]), np.concatenate([cols_i, cols_j]))),
        shape=(dims * pairs, dims * n),
    )
    return head.tocsr()


def build_model(n: int, dims: int, seed: int) -> GeanModel:
    """Fresh model with uniform ±1/sqrt(fan_in) weights drawn from the seed."""
    if dims not in (2, 3):
        raise ValueError(f"dims must be 2 or 3, got {dims}")
    if n < 2:
        raise ValueError(f"need at least two qubits to form a pair, got n={n}")
    widths = (dims * n, *HIDDEN_WIDTHS, dims * n)
    rng = np.random.default_rng(seed)
    weights, biases = [], []
    for fan_in, fan_out in zip(widths[:-1], widths[1:]):
        bound = 1.0 / np.sqrt(fan_in)
        weights.append(rng.uniform(-bound, bound, size=(fan_out, fan_in)))
        biases.append(rng.uniform(-bound, bound, size=fan_out))
    return GeanModel(n=n, dims=dims, weights=weights, biases=biases,
                     diff_head=_difference_head(n, dims))


@dataclass
class ForwardCache:
    """Intermediate values of one forward pass, kept for backpropagation."""

    inputs: list[np.ndarray]  # input to each dense layer
    pre_activations: list[np.ndarray]
    dropout_masks: list[np.ndarray] | None
    out_vec: np.ndarray  # transformed coordinates, axis-major
    alpha: np.ndarray  # per-axis pair differences
    beta: np.ndarray  # squared pair distances
    distances: np.ndarray


def _flatten(model: GeanModel, e: Embedding) -> np.ndarray:
    if e.n != model.n or e.dims != model.dims:
        raise ValueError(
            f"embedding shape ({e.n}, {e.dims}) does not match model ({model.n}, {model.dims})"
        )
    return e.coords.T.reshape(-1) / OUTPUT_SCALE


def _unflatten(model: GeanModel, vec: np.ndarray) -> Embedding:
    return Embedding(coords=vec.reshape(model.dims, model.n).T)


def _run(model: GeanModel, vec: np.ndarray, train: bool,
         rng: np.random.Generator | None) -> ForwardCache:
    if train and rng is None:
        raise ValueError("train-mode forward needs a random generator for dropout")
    inputs, pre_activations = [], []
    masks: list[np.ndarray] | None = [] if train else None
    h = vec
    last = len(model.weights) - 1
    keep = 1.0 - DROPOUT_P
    for layer, (w, b) in enumerate(zip(model.weights, model.biases)):
        inputs.append(h)
        z = w @ h + b
        pre_activations.append(z)
        if layer == last:
            h = OUTPUT_SCALE * np.tanh(z)
        else:
            h = np.maximum(z, 0.0)
            if train:
                mask = (rng.random(h.size) >= DROPOUT_P) / keep
                masks.append(mask)
                h = h * mask
    alpha = model.diff_head @ h
    beta = (alpha * alpha).reshape(model.dims, model.pair_count).sum(axis=0)
    distances = np.sqrt(beta + DIST_EPS)
    return ForwardCache(inputs=inputs, pre_activations=pre_activations,
                        dropout_masks=masks, out_vec=h, alpha=alpha, beta=beta,
                        distances=distances)


def forward(model: GeanModel, e: Embedding, train: bool = False,
            rng: np.random.Generator | None = None) -> tuple[Embedding, np.ndarray]:
    """Run the model on an embedding; returns the transformed embedding and
    the pair-distance vector (pair_index order). Eval mode is deterministic;
    train mode applies inverted dropout driven by rng."""
    cache = _run(model, _flatten(model, e), train, rng)
    return _unflatten(model, cache.out_vec), cache.distances


def backpropagate(model: GeanModel, cache: ForwardCache,
                  distance_grad: np.ndarray) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Exact gradients of a scalar loss with the given d(loss)/d(distances),
    reusing the cached forward pass (and its dropout masks, if any).
    Returns (weight_grads, bias_grads); the frozen heads get none."""
    g_beta = distance_grad / (2.0 * cache.distances)
    g_alpha = 2.0 * cache.alpha * np.tile(g_beta, model.dims)
    g_h = model.diff_head.T @ g_alpha

    weight_grads: list[np.ndarray] = [np.empty(0)] * len(model.weights)
    bias_grads: list[np.ndarray] = [np.empty(0)] * len(model.biases)
    last = len(model.weights) - 1
    for layer in range(last, -1, -1):
        z = cache.pre_activations[layer]
        if layer == last:
            g_z = g_h * OUTPUT_SCALE * (1.0 - np.tanh(z) ** 2)
        else:
            if cache.dropout_masks is not None:
                g_h = g_h * cache.dropout_masks[layer]
            g_z = g_h * (z > 0.0)
        weight_grads[layer] = np.outer(g_z, cache.inputs[layer])
        bias_grads[layer] = g_z
        g_h = model.weights[layer].T @ g_z
    return weight_grads, bias_grads
