"""Exact unitary time evolution.

Three propagation primitives cover every dynamics in the package:

* free twisting about z (diagonal phases, O(N), never a matrix),
* instantaneous x/y rotation pulses (cached dense matrices for +/- pi/2,
  eigenbasis application for generic angles),
* evolution under the xy twisting generator J_x^2 - J_y^2 (eigendecomposition
  computed once per spin number, split over the two parity blocks the
  generator cannot couple).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from . import tolerances
from .spin_ops import (
    DickeState,
    NumericalConsistencyError,
    SpinOperators,
    _frozen,
    build_operators,
)

HALF_PI = math.pi / 2.0

POWER_ITER_TOL = 1e-6
POWER_ITER_MAX = 500


def real_matvec(matrix: np.ndarray, vector: np.ndarray) -> np.ndarray:
    """matrix @ vector without upcasting a real matrix to complex."""
    if np.isrealobj(matrix) and np.iscomplexobj(vector):
        return matrix @ vector.real + 1j * (matrix @ vector.imag)
    return matrix @ vector


@dataclass(frozen=True)
class EigenFactorization:
    """Hermitian factorization H = V diag(w) V^dagger, reused for any evolution time."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    source_tag: str

    @classmethod
    def of(cls, matrix: np.ndarray, tag: str) -> "EigenFactorization":
        w, v = np.linalg.eigh(matrix)
        return cls(_frozen(w), _frozen(v), tag)

    def propagator(self, t: float) -> np.ndarray:
        """Dense matrix exp(-i H t)."""
        phases = np.exp(-1j * t * self.eigenvalues)
        return (self.eigenvectors * phases) @ self.eigenvectors.conj().T

    def apply(self, amplitudes: np.ndarray, t: float) -> np.ndarray:
        """exp(-i H t) |psi> via two matrix-vector products."""
        coeffs = real_matvec(self.eigenvectors.conj().T, amplitudes)
        coeffs *= np.exp(-1j * t * self.eigenvalues)
        return real_matvec(self.eigenvectors, coeffs)

    def reconstruction_error(self, matrix: np.ndarray) -> float:
        rebuilt = (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T
        return float(np.max(np.abs(rebuilt - matrix)))

    def check_reconstruction(self, matrix: np.ndarray) -> None:
        error = self.reconstruction_error(matrix)
        if error > tolerances.reconstruction_tol():
            raise NumericalConsistencyError(
                f"{self.source_tag}: reconstruction error {error:.3e} exceeds "
                f"{tolerances.reconstruction_tol():.3e}"
            )


@dataclass(frozen=True)
class Propagator:
    """A concrete unitary together with what generated it."""

    matrix: np.ndarray
    generator_tag: str
    duration_or_angle: float

    def unitarity_defect(self) -> float:
        gram = self.matrix.conj().T @ self.matrix
        return spectral_norm_estimate(gram - np.eye(gram.shape[0]))

    def check_unitary(self) -> None:
        defect = self.unitarity_defect()
        if defect > tolerances.unitarity_tol():
            raise NumericalConsistencyError(
                f"{self.generator_tag}: unitarity defect {defect:.3e} exceeds "
                f"{tolerances.unitarity_tol():.3e}"
            )


def spectral_norm_estimate(
    matrix: np.ndarray, tol: float = POWER_ITER_TOL, max_iter: int = POWER_ITER_MAX
) -> float:
    """Largest singular value via power iteration on M^dagger M.

    Deterministic start vector; converges to the stated relative tolerance or
    stops after max_iter sweeps.
    """
    d = matrix.shape[0]
    v = np.linspace(1.0, 2.0, d).astype(complex)
    v /= np.linalg.norm(v)
    sigma = 0.0
    for _ in range(max_iter):
        w = matrix @ v
        new_sigma = float(np.linalg.norm(w))
        if new_sigma == 0.0:
            return 0.0
        w = matrix.conj().T @ w
        v = w / np.linalg.norm(w)
        if abs(new_sigma - sigma) <= tol * max(new_sigma, 1e-30):
            return new_sigma
        sigma = new_sigma
    return sigma


def frobenius_norm(matrix: np.ndarray) -> float:
    return float(np.linalg.norm(matrix))


def evolve_oat(state: DickeState, chi: float, t: float) -> DickeState:
    """Free evolution exp(-i chi J_z^2 t): a diagonal phase per amplitude."""
    ops = build_operators(state.n_spins)
    amps = state.amplitudes * np.exp(-1j * chi * t * ops.jz_sq_diag)
    return DickeState(state.n_spins, _frozen(amps))


@lru_cache(maxsize=8)
def _rotation_factorization(n_spins: int, axis: str) -> EigenFactorization:
    """Factorize J_x or J_y through their tridiagonal structure.

    J_x is real symmetric tridiagonal as stored.  J_y becomes so after the
    diagonal phase gauge D = diag(i^k): D J_y D^dagger has real off-diagonal
    -ladder/2, and the eigenvectors transform back as D^dagger u.
    """
    ops = build_operators(n_spins)
    diag = np.zeros(ops.dim)
    if axis == "x":
        w, u = eigh_tridiagonal(diag, ops.ladder / 2.0)
        vectors = u
    else:
        w, u = eigh_tridiagonal(diag, -ops.ladder / 2.0)
        gauge = (-1j) ** np.arange(ops.dim)
        vectors = gauge[:, None] * u
    return EigenFactorization(_frozen(w), _frozen(vectors), f"j{axis}[N={n_spins}]")


@lru_cache(maxsize=32)
def rotation_matrix(n_spins: int, axis: str, angle: float) -> np.ndarray:
    """Dense exp(-i angle J_axis); cached so +/- pi/2 pulses are a single matvec."""
    return _frozen(_rotation_factorization(n_spins, axis).propagator(angle))


def rotation_propagator(n_spins: int, axis: str, angle: float) -> Propagator:
    return Propagator(rotation_matrix(n_spins, axis, angle), f"{axis}-rot", angle)


def rotate(state: DickeState, axis: str, angle: float) -> DickeState:
    """Apply exp(-i angle J_axis) to the state."""
    if axis not in ("x", "y"):
        raise ValueError(f"rotation axis must be 'x' or 'y', got {axis!r}")
    if angle == 0.0:
        return state
    if angle == HALF_PI or angle == -HALF_PI:
        amps = rotation_matrix(state.n_spins, axis, angle) @ state.amplitudes
    else:
        amps = _rotation_factorization(state.n_spins, axis).apply(state.amplitudes, angle)
    return DickeState(state.n_spins, _frozen(amps))


@lru_cache(maxsize=8)
def twist_factorization(n_spins: int) -> EigenFactorization:
    """Eigendecomposition of J_x^2 - J_y^2, solved block-by-block.

    The generator only couples basis indices two apart, so even and odd index
    sets diagonalize independently; the two half-size real-symmetric solves
    are reassembled into one factorization.
    """
    ops = build_operators(n_spins)
    dim = ops.dim
    values = np.empty(dim)
    vectors = np.zeros((dim, dim))
    col = 0
    for start in (0, 1):
        idx = np.arange(start, dim, 2)
        if idx.size == 0:
            continue
        w, v = np.linalg.eigh(ops.twist_xy[np.ix_(idx, idx)])
        values[col : col + idx.size] = w
        vectors[np.ix_(idx, np.arange(col, col + idx.size))] = v
        col += idx.size
    return EigenFactorization(_frozen(values), _frozen(vectors), f"twist_xy[N={n_spins}]")


def evolve_twist(state: DickeState, chi: float, t: float) -> DickeState:
    """Exact exp(-i chi (J_x^2 - J_y^2) t) applied to the state."""
    fac = twist_factorization(state.n_spins)
    amps = fac.apply(state.amplitudes, chi * t)
    return DickeState(state.n_spins, _frozen(amps))


def unitary_distance(u1: np.ndarray, u2: np.ndarray, norm: str = "spectral") -> float:
    """Distance between unitaries with the global phase stripped.

    The phase is fixed from the trace of u2^dagger u1; if that trace vanishes
    the comparison is phase-degenerate and proceeds unaligned.  norm="frobenius"
    swaps the power-iteration spectral estimate for the cheap upper bound.
    """
    if u1.shape != u2.shape:
        raise ValueError(f"shape mismatch: {u1.shape} vs {u2.shape}")
    overlap = np.sum(u2.conj() * u1)
    if abs(overlap) < 1e-15 * u1.shape[0]:
        warnings.warn("phase-alignment degenerate: tr(u2^dagger u1) = 0", RuntimeWarning)
        phase = 1.0
    else:
        phase = overlap / abs(overlap)
    diff = u1 - phase * u2
    if norm == "frobenius":
        return frobenius_norm(diff)
    if norm != "spectral":
        raise ValueError(f"norm must be 'spectral' or 'frobenius', got {norm!r}")
    return spectral_norm_estimate(diff)


def schedule_unitary(ops: SpinOperators, segments, chi: float) -> Propagator:
    """Multiply one period's segments (time ordered) into a dense unitary."""
    u = np.eye(ops.dim, dtype=complex)
    total = 0.0
    for seg in segments:
        if seg.kind == "free":
            phases = np.exp(-1j * chi * seg.duration * ops.jz_sq_diag)
            u = phases[:, None] * u
            total += seg.duration
        else:
            u = rotation_matrix(ops.n_spins, seg.axis, seg.sign * HALF_PI) @ u
    return Propagator(u, "compiled-period", total)
