"""Pure-Python/numpy kernels. Same signatures as the compiled ``_ckernels`` module."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

NAME = "python"


@lru_cache(maxsize=4096)
def _rows(dim: int, tmask: int, cmask: int, cval: int) -> np.ndarray:
    idx = np.arange(dim, dtype=np.int64)
    keep = ((idx & tmask) == 0) & ((idx & cmask) == cval)
    return idx[keep]


def apply_1q(mat: np.ndarray, u: np.ndarray, tmask: int, cmask: int, cval: int) -> None:
    """Left-multiply ``mat`` in place by a controlled one-qubit gate.

    Rows whose index satisfies ``index & cmask == cval`` are paired through ``tmask``.
    """
    r0 = _rows(mat.shape[0], tmask, cmask, cval)
    r1 = r0 | tmask
    a = mat[r0]
    b = mat[r1]
    mat[r0] = u[0, 0] * a + u[0, 1] * b
    mat[r1] = u[1, 0] * a + u[1, 1] * b


def apply_swap(mat: np.ndarray, amask: int, bmask: int, cmask: int, cval: int) -> None:
    dim = mat.shape[0]
    idx = np.arange(dim, dtype=np.int64)
    keep = ((idx & amask) != 0) & ((idx & bmask) == 0) & ((idx & cmask) == cval)
    r0 = idx[keep]
    r1 = r0 ^ amask ^ bmask
    tmp = mat[r0].copy()
    mat[r0] = mat[r1]
    mat[r1] = tmp


def jacobi_eigh(a: np.ndarray, tol: float, max_sweeps: int):
    """Cyclic complex Jacobi. Returns (unsorted eigenvalues, eigenvectors, sweeps) or sweeps=-1."""
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.sqrt(np.sum(np.abs(a) ** 2))))
    polished = False
    for sweep in range(max_sweeps + 1):
        off = float(np.sqrt(np.sum(np.abs(a[~np.eye(n, dtype=bool)]) ** 2)))
        if off < tol * scale:
            # one extra sweep is nearly free given quadratic convergence
            if polished or off == 0.0 or sweep == max_sweeps:
                return np.real(np.diag(a)).copy(), v, sweep
            polished = True
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = a[p, q]
                ab = abs(b)
                if ab < 1e-300:
                    continue
                ph = b / ab
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * ab)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                cph = ph.conjugate()
                j = np.array([[c, s], [-s * cph, c * cph]])
                cols = a[:, [p, q]] @ j
                a[:, p] = cols[:, 0]
                a[:, q] = cols[:, 1]
                rows = j.conj().T @ a[[p, q], :]
                a[p, :] = rows[0]
                a[q, :] = rows[1]
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * ab
                a[q, q] = aqq + t * ab
                vc = v[:, [p, q]] @ j
                v[:, p] = vc[:, 0]
                v[:, q] = vc[:, 1]
    return np.real(np.diag(a)).copy(), v, -1
