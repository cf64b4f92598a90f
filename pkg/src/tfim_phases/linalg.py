"""Small dense complex-matrix kernels shared by the physics modules.

Everything here operates on plain ``numpy`` arrays (2x2 and 4x4 complex in
practice, up to ~100x100 real for the Toeplitz determinants).
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


class HermitianEigen(NamedTuple):
    """Eigenvalues (ascending) and orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray


def hermiticity_defect(m):
    """max |M - M^dag|, elementwise."""
    m = np.asarray(m)
    return float(np.abs(m - m.conj().T).max())


def hermitian_eigen(m, tol=1e-12):
    """Eigendecomposition of a Hermitian matrix with a fixed phase convention.

    The input is symmetrized before decomposition; a deviation from
    Hermiticity larger than `tol` raises.  Each eigenvector is rephased so
    that its largest-magnitude component is real and positive, which makes
    the output deterministic.
    """
    m = np.asarray(m, dtype=complex)
    defect = hermiticity_defect(m)
    if defect > tol:
        raise ValueError(f"matrix is not Hermitian: max|M - M^dag| = {defect:.3e} > {tol:.1e}")
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    for k in range(v.shape[1]):
        pivot = int(np.argmax(np.abs(v[:, k])))
        phase = v[pivot, k] / abs(v[pivot, k])
        v[:, k] = v[:, k] / phase
    return HermitianEigen(w, v)


def sqrt_psd(m, neg_tol=1e-12):
    """Hermitian PSD square root; eigenvalues in [-neg_tol, 0) are clamped to 0."""
    w, v = hermitian_eigen(m)
    if w[0] < -neg_tol:
        raise ValueError(f"matrix is not PSD: min eigenvalue {w[0]:.3e} < -{neg_tol:.1e}")
    s = (v * np.sqrt(np.maximum(w, 0.0))) @ v.conj().T
    return (s + s.conj().T) / 2


def det_real(m):
    """Determinant of a real square matrix (LU with partial pivoting)."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return float(np.linalg.det(m))


def expm_antihermitian(a, s=1.0, tol=1e-10):
    """exp(A*s) for anti-Hermitian A, via the spectral form of the Hermitian iA.

    The result is unitary to round-off by construction.
    """
    a = np.asarray(a, dtype=complex)
    defect = float(np.abs(a + a.conj().T).max())
    if defect > tol:
        raise ValueError(f"matrix is not anti-Hermitian: max|A + A^dag| = {defect:.3e} > {tol:.1e}")
    w, v = np.linalg.eigh(1j * (a - a.conj().T) / 2)
    return (v * np.exp(-1j * w * s)) @ v.conj().T


def commutator(a, b):
    """AB - BA."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b - b @ a
