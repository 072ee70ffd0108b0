"""Collective spin operators and Dicke-basis states in the symmetric J = N/2 sector.

Everything downstream shares one basis convention: |J,m> ordered from m = J
down to m = -J, so the fully z-polarized state is the first basis vector and
Jz is diagonal with descending entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

# Dimension N+1 must stay a sane dense-matrix size.
MAX_SPINS = 100_000

IMAG_TOL = 1e-9


class NumericalConsistencyError(RuntimeError):
    """An internal numerical check failed (e.g. an expectation value grew an imaginary part)."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SpinOperators:
    """Dense collective angular-momentum matrices for a fixed spin number.

    ``ladder[k]`` couples basis indices k and k+1 (the raising-operator matrix
    element between m = J-k-1 and m = J-k); it lets observables be applied in
    O(N) without touching the dense matrices.
    """

    n_spins: int
    dim: int
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray
    jz_sq_diag: np.ndarray
    twist_xy: np.ndarray
    m_values: np.ndarray
    ladder: np.ndarray

    @property
    def total_spin(self) -> float:
        return self.n_spins / 2.0


@dataclass(frozen=True)
class DickeState:
    """Complex amplitudes over |J,m>, m = J ... -J."""

    n_spins: int
    amplitudes: np.ndarray

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def state_from_amplitudes(n_spins: int, amplitudes: np.ndarray) -> DickeState:
    amps = np.asarray(amplitudes, dtype=complex)
    if amps.shape != (n_spins + 1,):
        raise ValueError(
            f"amplitude vector has shape {amps.shape}, expected ({n_spins + 1},)"
        )
    return DickeState(n_spins, _frozen(amps))


@lru_cache(maxsize=8)
def build_operators(n_spins: int) -> SpinOperators:
    """Construct the dense J_x, J_y, J_z and the xy twisting generator J_x^2 - J_y^2.

    Ladder convention: J+|J,m> = sqrt(J(J+1) - m(m+1)) |J,m+1>, with
    J_x = (J+ + J-)/2 and J_y = (J+ - J-)/(2i).  The twisting generator is
    assembled from its only nonzero diagonals (m coupled to m +/- 2), so all
    other entries are exactly zero.
    """
    if not isinstance(n_spins, (int, np.integer)) or isinstance(n_spins, bool):
        raise ValueError(f"n_spins must be a positive integer, got {n_spins!r}")
    if n_spins < 1:
        raise ValueError(f"n_spins must be >= 1, got {n_spins}")
    if n_spins > MAX_SPINS:
        raise ValueError(f"n_spins={n_spins} exceeds the dense-matrix limit {MAX_SPINS}")

    n = int(n_spins)
    dim = n + 1
    j = n / 2.0
    m = j - np.arange(dim)
    # ladder[k] = <J,m[k]| J+ |J,m[k+1]>
    ladder = np.sqrt(j * (j + 1.0) - m[1:] * (m[1:] + 1.0))

    jp = np.diag(ladder, 1)
    jx = (jp + jp.T) / 2.0
    jy = (jp - jp.T) / 2j
    jz = np.diag(m)

    twist_band = ladder[:-1] * ladder[1:] / 2.0  # (J+^2 + J-^2)/2, only +/-2 diagonals
    twist_xy = np.diag(twist_band, 2) + np.diag(twist_band, -2)

    return SpinOperators(
        n_spins=n,
        dim=dim,
        jx=_frozen(jx.astype(complex)),
        jy=_frozen(jy),
        jz=_frozen(jz.astype(complex)),
        jz_sq_diag=_frozen(m**2),
        twist_xy=_frozen(twist_xy),
        m_values=_frozen(m),
        ladder=_frozen(ladder),
    )


def coherent_state_z(n_spins: int) -> DickeState:
    """The |J,J> state: every spin polarized along +z."""
    ops = build_operators(n_spins)
    amps = np.zeros(ops.dim, dtype=complex)
    amps[0] = 1.0
    return DickeState(n_spins, _frozen(amps))


def expectation(state: DickeState, operator_matrix: np.ndarray) -> float:
    """<psi|A|psi> for Hermitian A, with the residual imaginary part checked and dropped."""
    amps = state.amplitudes
    if operator_matrix.shape != (amps.size, amps.size):
        raise ValueError(
            f"operator shape {operator_matrix.shape} does not match state dimension {amps.size}"
        )
    value = np.vdot(amps, operator_matrix @ amps)
    if abs(value.imag) > IMAG_TOL:
        raise NumericalConsistencyError(
            f"expectation value has imaginary part {value.imag:.3e} (tolerance {IMAG_TOL:.0e})"
        )
    return float(value.real)


def apply_jx(ops: SpinOperators, amps: np.ndarray) -> np.ndarray:
    """J_x |psi> using only the tridiagonal structure; O(N)."""
    out = np.zeros_like(amps)
    out[:-1] += ops.ladder * amps[1:]
    out[1:] += ops.ladder * amps[:-1]
    out *= 0.5
    return out


def apply_jy(ops: SpinOperators, amps: np.ndarray) -> np.ndarray:
    """J_y |psi>; O(N)."""
    out = np.zeros_like(amps)
    out[:-1] += ops.ladder * amps[1:]
    out[1:] -= ops.ladder * amps[:-1]
    out *= -0.5j
    return out


def apply_jz(ops: SpinOperators, amps: np.ndarray) -> np.ndarray:
    return ops.m_values * amps


def mean_spin_vector(ops: SpinOperators, state: DickeState) -> np.ndarray:
    """(<J_x>, <J_y>, <J_z>) as a real 3-vector."""
    amps = state.amplitudes
    return np.array(
        [
            np.vdot(amps, apply_jx(ops, amps)).real,
            np.vdot(amps, apply_jy(ops, amps)).real,
            np.vdot(amps, apply_jz(ops, amps)).real,
        ]
    )
