"""Degenerate-states reducers.

A reducer for a unit-weight string ``H`` is a basis change ``B`` (a circuit), a reduct
qubit ``r`` and a set of flag conditions, such that::

    H = B^dagger (Pi_flags (x) Z_r) B        kind == "qubitized"
    H = B^dagger (Pi_flags (x) n_r) B        kind == "projector"

where ``Pi_flags`` projects onto basis states meeting every ``(qubit, value)`` flag.
``B`` is split into ``local`` gates followed by CX ``merges`` that fold the parity of
several partial reducts onto ``r``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .. import densemath as dm
from ..circuit.ir import Circuit, Gate, cx, h, p, x
from ..circuit.lower import lower
from ..errors import NotQubitized, OverlappingSupports, UnsupportedString
from ..opalg import Factor, OperatorString

QUBITIZED = "qubitized"
PROJECTOR = "projector"


@dataclass(frozen=True)
class Reducer:
    n_qubits: int
    local: tuple[Gate, ...]
    merges: tuple[Gate, ...]
    reduct: int
    perp_flags: tuple[tuple[int, int], ...]
    kind: str = QUBITIZED
    parity_qubits: tuple[int, ...] = ()
    spectators: tuple[int, ...] = ()

    @property
    def basis_change(self) -> Circuit:
        return Circuit(self.n_qubits, self.local + self.merges)

    @property
    def local_circuit(self) -> Circuit:
        return Circuit(self.n_qubits, self.local)

    @property
    def flag_controls(self) -> tuple[tuple[int, bool], ...]:
        return tuple((q, bool(v)) for q, v in self.perp_flags)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(range(self.n_qubits)) - frozenset(self.spectators)

    def target_matrix(self) -> np.ndarray:
        """The unit-weight Hermitian matrix this reducer describes."""
        return reduced_operator(self, "Z" if self.kind == QUBITIZED else "n")


_SINGLE = {
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "n": np.array([[0, 0], [0, 1]], dtype=complex),
    "I": np.eye(2, dtype=complex),
    # |lambda><lambda_perp| and its adjoint; lambda sits at reduct value 0
    "raise": np.array([[0, 1], [0, 0]], dtype=complex),
    "lower": np.array([[0, 0], [1, 0]], dtype=complex),
}


def flag_projector_diag(n_qubits: int, flags) -> np.ndarray:
    idx = np.arange(2**n_qubits)
    keep = np.ones(idx.size, dtype=bool)
    for q, v in flags:
        keep &= (idx >> (n_qubits - 1 - q) & 1) == v
    return keep.astype(complex)


def reduced_frame_operator(r: Reducer, which) -> np.ndarray:
    """``Pi_flags (x) W_r`` in the reduced frame."""
    w = _SINGLE[which] if isinstance(which, str) else np.asarray(which, dtype=complex)
    nq = r.n_qubits
    diag = flag_projector_diag(nq, r.perp_flags)
    op = dm.kron_all(
        [w if q == r.reduct else np.eye(2, dtype=complex) for q in range(nq)]
    )
    return diag[:, None] * op * diag[None, :]


def reduced_operator(r: Reducer, which) -> np.ndarray:
    """``B^dagger (Pi_flags (x) W_r) B`` for a one-qubit ``W`` given by name or matrix."""
    b = lower(r.basis_change)
    return dm.dagger(b) @ reduced_frame_operator(r, which) @ b


# --------------------------------------------------------------------------- weights


def term_weight(s: OperatorString) -> complex:
    """Scalar ``alpha`` with ``materialize(s) = alpha * reducer.target_matrix()``.

    Real for every reducible string; complex only for non-Hermitian strings.
    """
    c = s.coefficient
    if s.is_scb:
        return abs(c) if s.plus_hc else c
    return 2 * c.real if s.plus_hc else c


# --------------------------------------------------------------------------- construction


def _single_pauli(q: int, f: Factor) -> list[Gate]:
    if f is Factor.X:
        return [h(q)]
    if f is Factor.Y:
        return [p(q, -math.pi / 2), h(q)]
    return []


def reducer_from_string(s: OperatorString) -> Reducer:
    nq = s.n_qubits
    if nq == 0:
        raise UnsupportedString("empty string")
    if not s.is_hermitian:
        raise NotQubitized(f"{s} is not Hermitian")
    paulis = [(q, f) for q, f in enumerate(s.factors) if f.is_pauli]
    projs = [(q, f) for q, f in enumerate(s.factors) if f.is_projector]
    ladders = [(q, f) for q, f in enumerate(s.factors) if f.is_ladder]
    spectators = tuple(q for q, f in enumerate(s.factors) if f is Factor.I)
    local: list[Gate] = []
    flags: list[tuple[int, int]] = []
    reducts: list[int] = []

    for q, f in paulis:
        local += _single_pauli(q, f)
        reducts.append(q)
    if ladders:
        # sigma = |1><0| so a sigma factor contributes ket bit 1
        bits = {q: 1 if f is Factor.sigma else 0 for q, f in ladders}
        r0 = ladders[0][0]
        for q, _ in ladders[1:]:
            local.append(cx(r0, q))
            flags.append((q, bits[q] ^ bits[r0]))
        phi = cmath.phase(s.coefficient) if s.coefficient != 0 else 0.0
        theta = -phi if bits[r0] else phi
        if theta != 0.0:
            local.append(p(r0, theta))
        local.append(h(r0))
        reducts.append(r0)

    if not reducts:
        if not projs:
            raise UnsupportedString(f"{s} is a multiple of the identity")
        q0, f0 = projs[0]
        if f0 is Factor.m:
            local.append(x(q0))
        flags += [(q, 1 if f is Factor.n else 0) for q, f in projs[1:]]
        return Reducer(nq, tuple(local), (), q0, tuple(sorted(flags)), PROJECTOR, (q0,), spectators)

    flags += [(q, 1 if f is Factor.n else 0) for q, f in projs]
    reducts.sort()
    main = reducts[0]
    merges = tuple(cx(q, main) for q in reducts[1:])
    return Reducer(
        nq, tuple(local), merges, main, tuple(sorted(flags)), QUBITIZED, tuple(reducts), spectators
    )


def combine_reducers(r1: Reducer, r2: Reducer, same_register: bool = False) -> Reducer:
    """Reducer of ``H1 (x) H2`` (or ``H1 . H2`` on a shared register with disjoint supports).

    Two qubitized reducers are joined by one CX from ``r2``'s reduct onto ``r1``'s; a
    projector reducer becomes an extra flag on the other one.
    """
    if not same_register:
        shift = r1.n_qubits
        nq = r1.n_qubits + r2.n_qubits
        r1 = _widen(r1, nq, 0)
        r2 = _widen(r2, nq, shift)
    else:
        if r1.n_qubits != r2.n_qubits:
            raise OverlappingSupports("same_register needs equal widths")
        if r1.support & r2.support:
            raise OverlappingSupports(f"supports overlap on {sorted(r1.support & r2.support)}")
        nq = r1.n_qubits
    if r1.kind == PROJECTOR and r2.kind == QUBITIZED:
        r1, r2 = r2, r1
    local = r1.local + r2.local
    spectators = tuple(sorted(set(r1.spectators) & set(r2.spectators)))
    if r2.kind == PROJECTOR:
        flags = tuple(sorted(r1.perp_flags + r2.perp_flags + ((r2.reduct, 1),)))
        return Reducer(
            nq, local, r1.merges + r2.merges, r1.reduct, flags, r1.kind, r1.parity_qubits, spectators
        )
    merges = r1.merges + r2.merges + (cx(r2.reduct, r1.reduct),)
    flags = tuple(sorted(r1.perp_flags + r2.perp_flags))
    parity = tuple(sorted(r1.parity_qubits + r2.parity_qubits))
    return Reducer(nq, local, merges, r1.reduct, flags, QUBITIZED, parity, spectators)


def _widen(r: Reducer, nq: int, offset: int) -> Reducer:
    inside = set(range(offset, offset + r.n_qubits))
    outside = tuple(q for q in range(nq) if q not in inside)
    return replace(
        r,
        n_qubits=nq,
        local=tuple(g.shifted(offset) for g in r.local),
        merges=tuple(g.shifted(offset) for g in r.merges),
        reduct=r.reduct + offset,
        perp_flags=tuple((q + offset, v) for q, v in r.perp_flags),
        parity_qubits=tuple(q + offset for q in r.parity_qubits),
        spectators=tuple(sorted(outside + tuple(q + offset for q in r.spectators))),
    )


def controlled_in_subspace(r: Reducer, u: Gate) -> Circuit:
    """``|perp><perp| + U`` on the reducer's two-level subspace."""
    if len(u.targets) != 1 or u.kind == "swap":
        raise ValueError("controlled_in_subspace takes a one-qubit gate")
    g = Gate(u.kind, (r.reduct,), r.flag_controls, u.theta)
    from ..circuit.lower import inverse

    return r.basis_change.then(g) + inverse(r.basis_change)
