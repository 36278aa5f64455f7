"""Direct index-arithmetic constructions, independent of every decomposition path."""

from __future__ import annotations

import numpy as np

from .. import densemath as dm
from ..errors import InvalidSpec
from ..opalg import materialize, parse_string
from .spec import StructuredSpec, parse_complex, parse_state, spec_from_dict


def toeplitz_matrix(n: int, m: int, w: complex = 1.0) -> np.ndarray:
    out = np.zeros((m, m), dtype=complex)
    for i in range(n):
        out[i + m - n, i] += w
    return out + out.conj().T


def shift_matrix(q: int, m: int) -> np.ndarray:
    """``sum_i |i + q mod m><i|``."""
    out = np.zeros((m, m), dtype=complex)
    for i in range(m):
        out[(i + q) % m, i] = 1.0
    return out


def circulant_matrix(n: int, m: int, w: complex = 1.0) -> np.ndarray:
    a = w * shift_matrix(m - n, m)
    return a + a.conj().T


def hankel_matrix(n: int, m: int, w: complex = 1.0) -> np.ndarray:
    r, c = np.indices((m, m))
    return np.where(r + c == n - 1, w, 0).astype(complex)


def anticirculant_matrix(n: int, m: int, w: complex = 1.0) -> np.ndarray:
    r, c = np.indices((m, m))
    return np.where((r + c) % m == (m - 1 - n) % m, w, 0).astype(complex)


def permutation_matrix(table) -> np.ndarray:
    size = len(table)
    out = np.zeros((size, size), dtype=complex)
    for i, v in enumerate(table):
        out[int(v), i] = 1.0
    return out


def relabeled_circulant(cycle_table, n: int, m: int, w: complex = 1.0) -> np.ndarray:
    """Circulant with vertex ``U_r^{i+1}(0)`` playing the role of vertex ``i``."""
    pos = {}
    state = 0
    for i in range(m):
        state = int(cycle_table[state])
        pos[state] = i
    base = circulant_matrix(n, m, w)
    out = np.zeros_like(base)
    for a in range(m):
        for b in range(m):
            out[a, b] = base[pos[a], pos[b]]
    return out


def grid_matrix(dims, cyclic=None, weights=None) -> np.ndarray:
    dims = [int(d) for d in dims]
    cyclic = cyclic or [False] * len(dims)
    weights = [parse_complex(w) for w in weights] if weights else [1.0] * len(dims)
    total = int(np.prod(dims))
    out = np.zeros((total, total), dtype=complex)
    for a, (d, cyc, w) in enumerate(zip(dims, cyclic, weights)):
        axis = circulant_matrix(d - 1, d, complex(w)) if cyc else toeplitz_matrix(d - 1, d, complex(w))
        left = int(np.prod(dims[:a]))
        right = int(np.prod(dims[a + 1 :]))
        out += np.kron(np.kron(np.eye(left), axis), np.eye(right))
    return out


def dense_oracle(spec: StructuredSpec) -> np.ndarray:
    k = spec.kind
    w = spec.weight
    if k in ("toeplitz_diag", "circulant", "circulant_adder", "hankel_antidiag", "anticirculant",
             "circular_permutation"):
        spec.require("m", "n")
        m, n = spec.m, spec.n
        _ = spec.big_m  # raises unless m is a power of two
        if k == "toeplitz_diag":
            _range(n, 1, m - 1)
            return toeplitz_matrix(n, m, w)
        if k in ("circulant", "circulant_adder"):
            _range(n, 1, m - 1)
            return circulant_matrix(n, m, w)
        if k == "hankel_antidiag":
            _range(n, 1, 2 * m - 1)
            return hankel_matrix(n, m, w)
        if k == "anticirculant":
            _range(n, 0, m - 1)
            return anticirculant_matrix(n, m, w)
        spec.require("table")
        _range(n, 1, m - 1)
        return relabeled_circulant(spec.extra["table"], n, m, w)
    if k == "corner_embed":
        spec.require("inner", "s")
        inner = dense_oracle(spec_from_dict(spec.extra["inner"]))
        size = spec.s
        if size < inner.shape[0]:
            raise InvalidSpec("embedding smaller than the inner matrix")
        out = np.zeros((size, size), dtype=complex)
        out[: inner.shape[0], : inner.shape[1]] = inner
        return out
    if k == "permutation_table":
        spec.require("table")
        return permutation_matrix(spec.extra["table"])
    if k == "density_matrix":
        spec.require("psi")
        psi = np.asarray(parse_state(spec.extra["psi"]))
        return np.outer(psi, psi.conj())
    if k == "outer_product":
        spec.require("phi", "psi")
        phi = np.asarray(parse_state(spec.extra["phi"]))
        psi = np.asarray(parse_state(spec.extra["psi"]))
        return np.outer(phi, psi.conj())
    if k == "line_column":
        spec.require("psi", "j")
        psi = np.asarray(parse_state(spec.extra["psi"]))
        e = dm.basis_state(int(spec.extra["j"]), psi.size)
        which = spec.extra.get("which", "column")
        return np.outer(psi, e) if which == "column" else np.outer(e, psi.conj())
    if k == "grid":
        spec.require("dims")
        return grid_matrix(spec.extra["dims"], spec.extra.get("cyclic"), spec.extra.get("weights"))
    if k == "terms":
        spec.require("terms")
        mats = [materialize(parse_string(t)) for t in spec.extra["terms"]]
        return sum(mats[1:], mats[0])
    raise InvalidSpec(f"no oracle for {k!r}")  # pragma: no cover


def _range(n, lo, hi):
    if not lo <= n <= hi:
        raise InvalidSpec(f"index {n} outside [{lo}, {hi}]")
