"""Kitagawa-Ueda squeezing parameter and trace containers.

xi^2 = 2 * (minimal spin variance perpendicular to the mean spin) / J,
normalized so a coherent state gives exactly 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spin_ops import DickeState, SpinOperators, apply_jx, apply_jy, apply_jz

MEAN_SPIN_EPS_FACTOR = 1e-8
DEGENERACY_TOL = 1e-12


class MeanSpinVanishing(ValueError):
    """The mean spin is too short to define a transverse plane."""


@dataclass(frozen=True)
class SqueezingSample:
    t: float
    xi2: float
    mean_spin: np.ndarray
    min_variance_direction: np.ndarray


@dataclass(frozen=True)
class SqueezingTrace:
    samples: tuple[SqueezingSample, ...]
    scheme: str
    n_spins: int
    n_cycles: int
    sampling: str

    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.samples])

    def xi2(self) -> np.ndarray:
        return np.array([s.xi2 for s in self.samples])


@dataclass(frozen=True)
class Optimum:
    t_opt: float
    xi2_min: float


def transverse_basis(direction: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic orthonormal pair spanning the plane perpendicular to `direction`.

    The first vector is built from the canonical axis least aligned with the
    direction, which also fixes the convention reported for degenerate
    covariances.
    """
    u = direction / np.linalg.norm(direction)
    seed = np.zeros(3)
    seed[int(np.argmin(np.abs(u)))] = 1.0
    n1 = seed - np.dot(seed, u) * u
    n1 /= np.linalg.norm(n1)
    n2 = np.cross(u, n1)
    return n1, n2


def squeezing_parameter(
    state: DickeState,
    ops: SpinOperators,
    t: float = 0.0,
    basis: tuple[np.ndarray, np.ndarray] | None = None,
) -> SqueezingSample:
    """Evaluate xi^2 = 2 lambda_min(C) / J from the 2x2 transverse covariance.

    `basis` overrides the deterministic transverse pair (the eigenvalues, and
    hence xi^2, cannot depend on that choice).  Raises MeanSpinVanishing when
    |<J>| <= 1e-8 * J, where no transverse plane exists.
    """
    amps = state.amplitudes
    vx = apply_jx(ops, amps)
    vy = apply_jy(ops, amps)
    vz = apply_jz(ops, amps)
    mean = np.array(
        [np.vdot(amps, vx).real, np.vdot(amps, vy).real, np.vdot(amps, vz).real]
    )
    j = ops.total_spin
    length = float(np.linalg.norm(mean))
    if length <= MEAN_SPIN_EPS_FACTOR * j:
        raise MeanSpinVanishing(
            f"|<J>| = {length:.3e} <= {MEAN_SPIN_EPS_FACTOR * j:.3e}; transverse plane undefined"
        )

    n1, n2 = transverse_basis(mean) if basis is None else basis
    w1 = n1[0] * vx + n1[1] * vy + n1[2] * vz
    w2 = n2[0] * vx + n2[1] * vy + n2[2] * vz
    m1 = float(np.vdot(amps, w1).real)
    m2 = float(np.vdot(amps, w2).real)
    c11 = float(np.vdot(w1, w1).real) - m1 * m1
    c22 = float(np.vdot(w2, w2).real) - m2 * m2
    c12 = float(np.vdot(w1, w2).real) - m1 * m2

    # Closed-form eigenpair of [[c11, c12], [c12, c22]].
    half_trace = (c11 + c22) / 2.0
    radius = math.hypot((c11 - c22) / 2.0, c12)
    lam_min = half_trace - radius
    if radius <= DEGENERACY_TOL * max(abs(half_trace), 1.0):
        direction = n1
    elif abs(c12) <= DEGENERACY_TOL * max(abs(half_trace), 1.0):
        direction = n1 if c11 <= c22 else n2
    else:
        v = np.array([c12, lam_min - c11])
        v /= np.linalg.norm(v)
        direction = v[0] * n1 + v[1] * n2

    xi2 = 2.0 * max(lam_min, 0.0) / j
    return SqueezingSample(t=t, xi2=xi2, mean_spin=mean, min_variance_direction=direction)


def find_optimum(trace: SqueezingTrace) -> Optimum:
    """Sample with minimal xi^2; earliest time wins ties."""
    if not trace.samples:
        raise ValueError("trace is empty")
    best = min(trace.samples, key=lambda s: (s.xi2, s.t))
    return Optimum(t_opt=best.t, xi2_min=best.xi2)
