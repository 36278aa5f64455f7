"""Dense complex linear-algebra oracle.

Matrices are plain ``numpy`` complex arrays. Eigen-decomposition goes through the
package's own cyclic Jacobi solver so that every verification result is
independent of LAPACK.
"""

from __future__ import annotations

from functools import reduce

import numpy as np

from ._backend import kernels
from .constants import JACOBI_MAX_SWEEPS, JACOBI_TOL, TOL_HERMITIAN
from .errors import DimMismatch, NoConvergence, NotHermitian, NotNormalized


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimMismatch(f"expected a 2-D matrix, got shape {m.shape}")
    return m


def kron(a, b) -> np.ndarray:
    """Kronecker product; ``a`` owns the most significant index bits."""
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(mats) -> np.ndarray:
    mats = list(mats)
    if not mats:
        return np.ones((1, 1), dtype=complex)
    return reduce(kron, mats)


def dagger(a) -> np.ndarray:
    return as_matrix(a).conj().T


def max_abs_diff(a, b) -> float:
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimMismatch(f"shape {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def hermiticity_defect(h) -> float:
    h = as_matrix(h)
    if h.shape[0] != h.shape[1]:
        return float("inf")
    return max_abs_diff(h, dagger(h))


def is_hermitian(h, tol: float = TOL_HERMITIAN) -> bool:
    return hermiticity_defect(h) <= tol


def is_unitary(u, tol: float) -> bool:
    u = as_matrix(u)
    if u.shape[0] != u.shape[1]:
        return False
    return max_abs_diff(dagger(u) @ u, np.eye(u.shape[0])) <= tol


def hermitian_eig(h, tol: float = TOL_HERMITIAN):
    """Eigenvalues (ascending) and orthonormal eigenvector columns of a Hermitian matrix."""
    h = as_matrix(h)
    defect = hermiticity_defect(h)
    if defect > tol:
        raise NotHermitian(f"||h - h^dagger||_max = {defect:.3e}")
    sym = np.ascontiguousarray((h + dagger(h)) / 2)
    w, v, sweeps = kernels.jacobi_eigh(sym, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    if sweeps < 0:
        raise NoConvergence(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")
    order = np.argsort(w, kind="stable")
    return np.asarray(w)[order], np.asarray(v)[:, order]


def eigvalsh(h) -> np.ndarray:
    return hermitian_eig(h)[0]


def expm_hermitian(h, t: float) -> np.ndarray:
    """``exp(i t h)`` through the spectral decomposition."""
    w, v = hermitian_eig(h)
    return (v * np.exp(1j * t * w)) @ dagger(v)


def spectral_norm(a) -> float:
    a = as_matrix(a)
    if a.size == 0:
        return 0.0
    w = eigvalsh(dagger(a) @ a)
    return float(np.sqrt(max(0.0, w[-1])))


def commutator(a, b) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    return a @ b - b @ a


def normalized_state(amplitudes, tol: float = 1e-12) -> np.ndarray:
    """Validate a normalized state vector and return it as a complex array."""
    psi = np.asarray(amplitudes, dtype=complex).reshape(-1)
    norm = float(np.vdot(psi, psi).real)
    if abs(norm - 1.0) > tol:
        raise NotNormalized(f"state norm^2 = {norm!r}")
    return psi


def random_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-like random state: complex normal amplitudes, normalized."""
    z = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return z / np.linalg.norm(z)


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (z + z.conj().T) / 2


def basis_state(index: int, dim: int) -> np.ndarray:
    e = np.zeros(dim, dtype=complex)
    e[index] = 1.0
    return e
