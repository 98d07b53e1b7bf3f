"""Finite-difference oracle for the model gradients, shared by the unit and
acceptance tests. Central differences on the eval-mode loss; samples whose
difference interval straddles a ReLU/hinge kink are excluded and counted."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from gean import Embedding, default_limits, gradients, graph_from_edges, loss
from gean.model import _flatten, _run, build_model


def _loss_and_signature(model, vec, g, limits):
    cache = _run(model, vec, train=False, rng=None)
    total = loss(cache.distances, g, limits).total
    relu_signs = np.concatenate([(z > 0).ravel() for z in cache.pre_activations[:-1]])
    d = cache.distances
    hinge_signs = np.concatenate([
        d > limits.d_max, d < limits.d_min,
        d > limits.r_blockade, d < limits.r_blockade + limits.epsilon,
    ])
    return total, np.concatenate([relu_signs, hinge_signs])


def finite_difference_check(n: int, dims: int, seed: int, samples: int = 50,
                            step: float = 1e-4) -> tuple[float, int, int]:
    """Returns (max relative error, checked samples, excluded samples)."""
    rng = np.random.default_rng(seed)
    edges = [(i, j) for i, j in combinations(range(1, n + 1), 2) if rng.random() < 0.5]
    g = graph_from_edges(n, edges)
    limits = default_limits(dims=dims)
    model = build_model(n, dims, seed=seed)
    e = Embedding(coords=rng.uniform(-40.0, 40.0, size=(n, dims)))
    vec = _flatten(model, e)

    weight_grads, bias_grads = gradients(model, e, g, limits, rng=None)
    analytic = []
    for wg, bg in zip(weight_grads, bias_grads):
        analytic.extend((wg, bg))
    params = model.parameters()
    _, base_signature = _loss_and_signature(model, vec, g, limits)

    max_rel = 0.0
    checked = excluded = 0
    while checked + excluded < samples:
        k = int(rng.integers(len(params)))
        flat = int(rng.integers(params[k].size))
        original = params[k].ravel()[flat]

        params[k].ravel()[flat] = original + step
        up, sig_up = _loss_and_signature(model, vec, g, limits)
        params[k].ravel()[flat] = original - step
        down, sig_down = _loss_and_signature(model, vec, g, limits)
        params[k].ravel()[flat] = original

        if not (np.array_equal(sig_up, base_signature)
                and np.array_equal(sig_down, base_signature)):
            excluded += 1
            continue
        fd = (up - down) / (2.0 * step)
        an = analytic[k].ravel()[flat]
        rel = abs(fd - an) / max(abs(fd), abs(an), 1e-10)
        max_rel = max(max_rel, rel)
        checked += 1
    return max_rel, checked, excluded
