"""Numerical tolerances, scaled by one global strictness knob.

Baselines are fixed; ``set_strictness`` multiplies all of them at once (values
above 1.0 loosen, below 1.0 tighten). No per-check configuration.
"""

from __future__ import annotations

UNITARITY = 1e-9
RECONSTRUCTION = 1e-8
NORM_DRIFT = 1e-10

_strictness = 1.0


def set_strictness(value: float) -> None:
    global _strictness
    if not value > 0:
        raise ValueError(f"strictness must be positive, got {value}")
    _strictness = float(value)


def get_strictness() -> float:
    return _strictness


def unitarity_tol() -> float:
    return UNITARITY * _strictness


def reconstruction_tol() -> float:
    return RECONSTRUCTION * _strictness


def norm_drift_tol() -> float:
    return NORM_DRIFT * _strictness
