"""Register limits derived from machine physics.

All quantities are expressed in (µm, µs, rad); the interaction coefficient
absorbs ħ so no separate unit system is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Calibrated so a 3 µs coherence limit yields a maximum blockade radius of
# 10.26 µm: C = 10.26^6 * pi / (3 * sqrt(2)) = 863769.34, rounded.
DEFAULT_C6_OVER_HBAR = 8.6377e5
DEFAULT_COHERENCE_TIME_US = 3.0
DEFAULT_MIN_DISTANCE_UM = 4.0
DEFAULT_MAX_DISTANCE_UM = 100.0
DEFAULT_EPSILON_UM = 0.1


@dataclass(frozen=True)
class PhysicsSpec:
    """Machine parameters: interaction coefficient (rad·µm^6/µs), coherence
    time limit (µs) and, optionally, an explicit Rabi frequency (rad/µs)."""

    c6_over_hbar: float = DEFAULT_C6_OVER_HBAR
    coherence_time_limit: float = DEFAULT_COHERENCE_TIME_US
    rabi_frequency: float | None = None

    def __post_init__(self) -> None:
        if self.c6_over_hbar <= 0:
            raise ValueError(f"c6_over_hbar must be positive, got {self.c6_over_hbar}")
        if self.coherence_time_limit <= 0:
            raise ValueError(
                f"coherence_time_limit must be positive, got {self.coherence_time_limit}"
            )
        if self.rabi_frequency is not None and self.rabi_frequency <= 0:
            raise ValueError(f"rabi_frequency must be positive, got {self.rabi_frequency}")


@dataclass(frozen=True)
class RegisterLimits:
    """Pairwise distance limits for a register, all in µm."""

    d_min: float
    d_max: float
    r_blockade: float
    epsilon: float
    dims: int

    def __post_init__(self) -> None:
        if not (0 < self.d_min < self.r_blockade < self.d_max):
            raise ValueError(
                "need 0 < d_min < r_blockade < d_max, got "
                f"({self.d_min}, {self.r_blockade}, {self.d_max})"
            )
        if self.epsilon <= 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.dims not in (2, 3):
            raise ValueError(f"dims must be 2 or 3, got {self.dims}")


def min_rabi_frequency(t_limit: float) -> float:
    """Lowest Rabi frequency whose maximally entangling pulse fits in t_limit:
    Omega = pi / (sqrt(2) * t)."""
    if t_limit <= 0:
        raise ValueError(f"time limit must be positive, got {t_limit}")
    return math.pi / (math.sqrt(2.0) * t_limit)


def blockade_radius(spec: PhysicsSpec) -> float:
    """Blockade radius (c6_over_hbar / Omega)^(1/6) at the spec's Rabi frequency."""
    if spec.rabi_frequency is None:
        raise ValueError("rabi_frequency is not set; use max_blockade_radius for the "
                         "coherence-limited radius")
    return (spec.c6_over_hbar / spec.rabi_frequency) ** (1.0 / 6.0)


def max_blockade_radius(spec: PhysicsSpec) -> float:
    """Largest usable blockade radius given the coherence time limit:
    (sqrt(2) * c6_over_hbar * t / pi)^(1/6)."""
    t = spec.coherence_time_limit
    return (math.sqrt(2.0) * spec.c6_over_hbar * t / math.pi) ** (1.0 / 6.0)


def default_limits(spec: PhysicsSpec | None = None, dims: int = 2) -> RegisterLimits:
    """Production register limits: 4 µm minimum spacing, 100 µm maximum pair
    distance, coherence-limited blockade radius, 0.1 µm strictness margin."""
    if dims not in (2, 3):
        raise ValueError(f"dims must be 2 or 3, got {dims}")
    if spec is None:
        spec = PhysicsSpec()
    return RegisterLimits(
        d_min=DEFAULT_MIN_DISTANCE_UM,
        d_max=DEFAULT_MAX_DISTANCE_UM,
        r_blockade=max_blockade_radius(spec),
        epsilon=DEFAULT_EPSILON_UM,
        dims=dims,
    )
