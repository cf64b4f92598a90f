"""Reduced density matrices and the adiabatic local-rotation family.

Basis convention: two-site states live in the product basis
|00>, |01>, |10>, |11> with site 0 the left tensor factor and |0> the
Z = +1 state.  The loop unitary is R_z(phi) R_y(theta) applied to every
site, with half-angle phases taken literally, so a 2*pi z-rotation is -I
on a single site and +I on a pair.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnphysicalStateError
from .ising import Correlators
from .linalg import IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z

__all__ = [
    "SingleSiteState",
    "TwoSiteState",
    "LoopSpec",
    "single_site_state",
    "two_site_state",
    "rotation_single",
    "rotation_pair",
    "evolve",
    "partial_trace",
]


@dataclass(frozen=True)
class SingleSiteState:
    matrix: np.ndarray
    m: float


@dataclass(frozen=True)
class TwoSiteState:
    matrix: np.ndarray
    source: Correlators


@dataclass(frozen=True)
class LoopSpec:
    """Fixed polar angle theta and the number of azimuthal grid steps."""

    theta: float
    steps: int = 2000

    def __post_init__(self):
        if not 0 <= self.theta <= np.pi:
            raise ValueError(f"theta must be in [0, pi], got {self.theta}")
        if self.steps < 16:
            raise ValueError(f"steps must be >= 16, got {self.steps}")


def single_site_state(m: float) -> SingleSiteState:
    """(I + m Z) / 2 with |m| <= 1 (tiny overshoot clamped)."""
    if abs(m) > 1 + 1e-9:
        raise ValueError(f"|m| = {abs(m)} exceeds 1 beyond tolerance")
    m = float(np.clip(m, -1.0, 1.0))
    return SingleSiteState(matrix=(IDENTITY_2 + m * SIGMA_Z) / 2, m=m)


def two_site_state(c: Correlators) -> TwoSiteState:
    """X-shaped two-site density matrix built from the correlator set."""
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = (1 + 2 * c.m + c.c_zz) / 4
    rho[1, 1] = (1 - c.c_zz) / 4
    rho[2, 2] = (1 - c.c_zz) / 4
    rho[3, 3] = (1 - 2 * c.m + c.c_zz) / 4
    rho[0, 3] = rho[3, 0] = (c.c_xx - c.c_yy) / 4
    rho[1, 2] = rho[2, 1] = (c.c_xx + c.c_yy) / 4
    min_eig = float(np.linalg.eigvalsh(rho)[0])
    if min_eig < -1e-10:
        raise UnphysicalStateError(
            f"correlator set gives min eigenvalue {min_eig:.3e} < -1e-10"
        )
    return TwoSiteState(matrix=rho, source=c)


def rotation_single(phi: float, theta: float) -> np.ndarray:
    """R_z(phi) R_y(theta) with half-angle phases on R_z."""
    rz = np.array([[np.exp(0.5j * phi), 0], [0, np.exp(-0.5j * phi)]])
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    ry = np.array([[c, -s], [s, c]], dtype=complex)
    return rz @ ry


def rotation_pair(phi: float, theta: float) -> np.ndarray:
    """The same rotation applied to both sites."""
    u = rotation_single(phi, theta)
    return np.kron(u, u)


def evolve(rho: np.ndarray, phi: float, theta: float) -> np.ndarray:
    """U rho U^dag with U chosen by dimension (2 -> single site, 4 -> pair)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape == (2, 2):
        u = rotation_single(phi, theta)
    elif rho.shape == (4, 4):
        u = rotation_pair(phi, theta)
    else:
        raise ValueError(f"expected a 2x2 or 4x4 matrix, got shape {rho.shape}")
    return u @ rho @ u.conj().T


def partial_trace(rho4: np.ndarray, keep: int) -> np.ndarray:
    """Reduce a two-site state to one site (keep=0 left factor, keep=1 right)."""
    r = np.asarray(rho4).reshape(2, 2, 2, 2)
    if keep == 0:
        return np.einsum("ijkj->ik", r)
    if keep == 1:
        return np.einsum("ijil->jl", r)
    raise ValueError(f"keep must be 0 or 1, got {keep}")
