"""Rank-one matrices built from state preparations: |psi><psi|, |phi><psi|, rows and columns."""

from __future__ import annotations

import numpy as np

from .. import densemath as dm
from ..circuit.ir import Circuit, Gate, Macro, x
from ..circuit.lower import conjugate, inverse
from ..errors import DimMismatch, InvalidSpec, OutOfRange
from ..synth.lcu import BlockEncoding, UnitaryCombination, block_encode


def _width(psi: np.ndarray) -> int:
    dim = psi.size
    if dim < 2 or dim & (dim - 1):
        raise InvalidSpec(f"state dimension {dim} is not a power of two >= 2")
    return dim.bit_length() - 1


def state_prep_circuit(psi) -> Circuit:
    psi = dm.normalized_state(psi, tol=1e-10)
    nq = _width(psi)
    return Circuit(nq, (Macro("stateprep", tuple(range(nq)), tuple(psi)),))


def zero_reflection(nq: int) -> Circuit:
    """``I - 2|0><0|`` as X layer, multi-controlled Z, X layer."""
    xs = tuple(x(q) for q in range(nq))
    cz = Gate("z", (nq - 1,), tuple((q, True) for q in range(nq - 1)))
    return Circuit(nq, xs + (cz,) + xs)


def zero_phase(nq: int, t: float) -> Circuit:
    """``exp(i t |0><0|)``."""
    xs = tuple(x(q) for q in range(nq))
    cp = Gate("p", (nq - 1,), tuple((q, True) for q in range(nq - 1)), t)
    return Circuit(nq, xs + (cp,) + xs)


def density_matrix_lcu(psi) -> UnitaryCombination:
    u = state_prep_circuit(psi)
    nq = u.num_qubits
    refl = inverse(u) + zero_reflection(nq) + u
    return UnitaryCombination.of([(0.5, Circuit(nq)), (-0.5, refl)], nq)


def density_matrix(psi) -> BlockEncoding:
    return block_encode(density_matrix_lcu(psi))


def projector_evolution(psi, t: float) -> Circuit:
    """``U_psi exp(i t |0><0|) U_psi^dagger``, which equals ``exp(i t |psi><psi|)``."""
    u = state_prep_circuit(psi)
    return inverse(u) + zero_phase(u.num_qubits, t) + u


def _outer_lcu(u_phi: Circuit, u_psi: Circuit) -> UnitaryCombination:
    nq = u_phi.num_qubits
    a = inverse(u_psi) + u_phi
    b = inverse(u_psi) + zero_reflection(nq) + u_phi
    return UnitaryCombination.of([(0.5, a), (-0.5, b)], nq)


def outer_product_lcu(phi, psi) -> UnitaryCombination:
    phi = dm.normalized_state(phi, tol=1e-10)
    psi = dm.normalized_state(psi, tol=1e-10)
    if phi.size != psi.size:
        raise DimMismatch(f"states of dims {phi.size} and {psi.size}")
    return _outer_lcu(state_prep_circuit(phi), state_prep_circuit(psi))


def outer_product(phi, psi) -> BlockEncoding:
    return block_encode(outer_product_lcu(phi, psi))


def pseudo_covariance(psi) -> BlockEncoding:
    """``|psi*><psi|`` reusing the preparation of ``psi`` conjugated gate by gate."""
    u = state_prep_circuit(psi)
    return block_encode(_outer_lcu(conjugate(u), u))


def _bit_flips(j: int, nq: int) -> Circuit:
    return Circuit(nq, tuple(x(q) for q in range(nq) if j >> (nq - 1 - q) & 1))


def line_column_lcu(psi, j: int, which: str = "column") -> UnitaryCombination:
    u = state_prep_circuit(psi)
    nq = u.num_qubits
    if not 0 <= j < 2**nq:
        raise OutOfRange(f"index {j} outside [0, {2**nq})")
    flips = _bit_flips(j, nq)
    if which == "column":
        a = flips + u
        b = flips + zero_reflection(nq) + u
    elif which == "line":
        a = inverse(u) + flips
        b = inverse(u) + zero_reflection(nq) + flips
    else:
        raise InvalidSpec("which must be 'line' or 'column'")
    return UnitaryCombination.of([(0.5, a), (-0.5, b)], nq)


def line_column(psi, j: int, which: str = "column") -> BlockEncoding:
    return block_encode(line_column_lcu(psi, j, which))
