"""Unitary combinations, Prep-Sel-Prep block-encodings and the qubitized walk."""

from __future__ import annotations

import cmath
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .. import densemath as dm
from ..circuit.ir import Circuit, Gate, gphase, h, p, x
from ..circuit.library import stateprep_gates
from ..circuit.lower import apply_circuit, inverse, lower
from ..constants import MAX_LOWER_QUBITS, TOL_MATRIX, TOL_UNITARY
from ..errors import (
    AllZeroWeights,
    NonUnitaryTerm,
    NotQubitized,
    NotReflection,
    RegisterMismatch,
)
from ..opalg import LinearCombination, Term
from .reducer import PROJECTOR, QUBITIZED, Reducer, reducer_from_string, term_weight


@dataclass(frozen=True)
class UnitaryCombination:
    terms: tuple[tuple[complex, Circuit], ...]
    n_qubits: int
    notes: tuple[str, ...] = field(default=(), compare=False)

    @classmethod
    def of(cls, items, n_qubits: int | None = None, notes=()) -> UnitaryCombination:
        items = tuple((complex(c), u) for c, u in items)
        if n_qubits is None:
            n_qubits = items[0][1].num_qubits
        for _, u in items:
            if u.num_qubits != n_qubits:
                raise RegisterMismatch(f"term on {u.num_qubits} qubits, expected {n_qubits}")
        return cls(items, n_qubits, tuple(notes))

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __add__(self, other: UnitaryCombination) -> UnitaryCombination:
        if other.n_qubits != self.n_qubits:
            raise RegisterMismatch("width mismatch")
        return UnitaryCombination(self.terms + other.terms, self.n_qubits, self.notes + other.notes)

    @property
    def coefficients(self) -> tuple[complex, ...]:
        return tuple(c for c, _ in self.terms)

    @property
    def subnormalization(self) -> float:
        return float(sum(abs(c) for c, _ in self.terms))

    def materialize(self) -> np.ndarray:
        dim = 2**self.n_qubits
        out = np.zeros((dim, dim), dtype=complex)
        for c, u in self.terms:
            out += c * lower(u)
        return out


def _framed(frame: Circuit | None, core: Circuit) -> Circuit:
    if frame is None:
        return core
    return frame + core + inverse(frame)


def _conjugated(r: Reducer, *gates: Gate) -> Circuit:
    b = r.basis_change
    return b.then(*gates) + inverse(b)


def lch_to_lcu(term: Term | object, reducer: Reducer | None = None) -> UnitaryCombination:
    """Two-reflection split of one Hermitian term.

    Qubitized: ``H = (C Z - C (XZX)) / 2``; projector: ``H = (I - C Z) / 2``.
    """
    if not isinstance(term, Term):
        term = Term(term)
    r = reducer if reducer is not None else reducer_from_string(term.string)
    alpha = term_weight(term.string).real
    fc = r.flag_controls
    nq = term.n_qubits
    if r.kind == QUBITIZED:
        u1 = _conjugated(r, Gate("z", (r.reduct,), fc))
        u2 = _conjugated(
            r, Gate("x", (r.reduct,), fc), Gate("z", (r.reduct,), fc), Gate("x", (r.reduct,), fc)
        )
        items = [(alpha / 2, _framed(term.frame, u1)), (-alpha / 2, _framed(term.frame, u2))]
    elif r.kind == PROJECTOR:
        ident = Circuit(nq)
        cz = _conjugated(r, Gate("z", (r.reduct,), fc))
        items = [(alpha / 2, ident), (-alpha / 2, _framed(term.frame, cz))]
    else:  # pragma: no cover
        raise NotQubitized(r.kind)
    return UnitaryCombination.of(items, nq)


def lch_to_lcu_all(lch: LinearCombination) -> UnitaryCombination:
    out = None
    for term in lch.terms:
        part = lch_to_lcu(term)
        out = part if out is None else out + part
    if out is None:
        raise AllZeroWeights("empty combination")
    return out


def nonhermitian_split(r: Reducer, which: str = "raise", literal: bool = False) -> UnitaryCombination:
    """``|lambda><lambda_perp|`` (``raise``) or its adjoint (``lower``) as unitaries.

    ``|lambda>`` is the +1 eigenvector (reduct value 0). With flags present the
    four-term difference form cancels the perp block; ``literal=True`` forces the
    two-term form regardless.
    """
    if r.kind != QUBITIZED:
        raise NotQubitized("nonhermitian_split needs a qubitized reducer")
    if which not in ("raise", "lower"):
        raise ValueError("which must be 'raise' or 'lower'")
    sign = 1 if which == "raise" else -1
    fc = r.flag_controls
    rq = r.reduct
    cx_ = _conjugated(r, Gate("x", (rq,), fc))
    cy_ = _conjugated(r, Gate("y", (rq,), fc))
    if literal or not r.perp_flags:
        return UnitaryCombination.of([(0.5, cx_), (sign * 0.5j, cy_)], r.n_qubits)
    zxz = _conjugated(r, Gate("z", (rq,), fc), Gate("x", (rq,), fc), Gate("z", (rq,), fc))
    zyz = _conjugated(r, Gate("z", (rq,), fc), Gate("y", (rq,), fc), Gate("z", (rq,), fc))
    return UnitaryCombination.of(
        [(0.25, cx_), (-0.25, zxz), (sign * 0.25j, cy_), (-sign * 0.25j, zyz)], r.n_qubits
    )


# --------------------------------------------------------------------------- prep / select


def index_width(count: int) -> int:
    return max(1, math.ceil(math.log2(count))) if count > 1 else 1


def prep(weights: Sequence[float]) -> Circuit:
    """Maps ``|0>`` to ``sum_i sqrt(w_i / sum w) |i>`` on ``ceil(log2 L)`` qubits (at least one)."""
    w = np.asarray(weights, dtype=float).reshape(-1)
    if w.size == 0 or np.any(w < 0) or not np.any(w > 0):
        raise AllZeroWeights("prep needs nonnegative weights with at least one positive")
    k = index_width(w.size)
    padded = np.zeros(2**k)
    padded[: w.size] = w
    amps = np.sqrt(padded / padded.sum())
    return Circuit(k, tuple(stateprep_gates(amps, range(k))))


def select(unitaries: Sequence[Circuit]) -> Circuit:
    """``sum_i |i><i| (x) U_i`` with the index register first.

    Every index value is spelled out in full, so a lone unitary is controlled on the
    index qubit being 0.
    """
    if not unitaries:
        raise RegisterMismatch("select needs at least one unitary")
    s = unitaries[0].num_qubits
    for u in unitaries:
        if u.num_qubits != s:
            raise RegisterMismatch(f"unitaries on {u.num_qubits} and {s} qubits")
    k = index_width(len(unitaries))
    ops = []
    for i, u in enumerate(unitaries):
        ctrls = [(j, bool(i >> (k - 1 - j) & 1)) for j in range(k)]
        for op in u.ops:
            ops.append(op.shifted(k).with_controls(ctrls))
    return Circuit(k + s, tuple(ops), {"index": (0, k), "system": (k, k + s)})


# --------------------------------------------------------------------------- block-encoding


@dataclass(frozen=True)
class BlockEncoding:
    circuit: Circuit
    n_index: int
    has_b2: bool
    n_system: int
    subnormalization: float
    lcu: UnitaryCombination
    all_reflections: bool

    @property
    def n_ancilla(self) -> int:
        return self.n_index + (1 if self.has_b2 else 0)

    def ancilla_state(self) -> np.ndarray:
        a = dm.basis_state(0, 2**self.n_index)
        if self.has_b2:
            a = np.kron(a, np.array([1.0, 1.0]) / math.sqrt(2))
        return a

    def target(self) -> np.ndarray:
        return self.lcu.materialize() / self.subnormalization

    def block(self, columns: Sequence[int] | None = None) -> np.ndarray:
        """``(<a| (x) I) U (|a> (x) I)`` restricted to the given system columns.

        An explicit column subset is simulated column by column, so it may exceed the
        dense-lowering width limit.
        """
        ds = 2**self.n_system
        cols = list(range(ds)) if columns is None else list(columns)
        a = self.ancilla_state()
        basis = np.zeros((ds, len(cols)), dtype=complex)
        basis[cols, range(len(cols))] = 1.0
        out = apply_circuit(self.circuit, np.kron(a[:, None], basis), check_size=columns is None)
        out = out.reshape(a.size, ds, len(cols))
        return np.tensordot(a.conj(), out, axes=(0, 0))


def block_encode(lcu: UnitaryCombination, check: bool = True) -> BlockEncoding:
    betas = [c for c, _ in lcu.terms]
    mags = [abs(c) for c in betas]
    if not any(m > 0 for m in mags):
        raise AllZeroWeights("all LCU coefficients vanish")
    s = lcu.n_qubits
    units = []
    reflections = True
    for c, u in lcu.terms:
        phi = cmath.phase(c) if c != 0 else 0.0
        uu = u.then(gphase(phi)) if phi != 0.0 else u
        if check and s <= MAX_LOWER_QUBITS:
            mat = lower(uu)
            if not dm.is_unitary(mat, TOL_UNITARY):
                raise NonUnitaryTerm("LCU term is not unitary")
            if dm.max_abs_diff(mat @ mat, np.eye(2**s)) > TOL_MATRIX:
                reflections = False
        elif not check:
            reflections = False
        units.append(uu)
    k = index_width(len(units))
    b2 = 1 if reflections else 0
    total = k + b2 + s
    pr = prep(mags).embedded(total, 0)
    sel = select(units)
    sel_ops = tuple(
        op.remapped({q: (q if q < k else q + b2) for q in range(k + s)}) for op in sel.ops
    )
    ops = pr.ops + sel_ops + inverse(pr).ops
    if b2:
        ops = ops + (x(k),)
    regs = {"B": (0, k), "system": (k + b2, total)}
    if b2:
        regs["B2"] = (k, k + 1)
    circ = Circuit(total, ops, regs)
    return BlockEncoding(circ, k, bool(b2), s, sum(mags), lcu, reflections)


def ancilla_reflection(be: BlockEncoding) -> Circuit:
    """``I - 2 |a><a|`` on the ancilla register, identity on the system."""
    k = be.n_index
    total = be.circuit.num_qubits
    negs = [(q, False) for q in range(k)]
    if be.has_b2:
        b2 = k
        ops = (h(b2), x(b2), p(b2, math.pi, negs), x(b2), h(b2))
    else:
        t = k - 1
        ops = (x(t), p(t, math.pi, negs[:-1]), x(t))
    return Circuit(total, ops)


def qubitize(be: BlockEncoding, check: bool = True) -> Circuit:
    """Walk operator ``-(I - 2|a><a|) . S``; eigenphase cosines equal ``lambda / alpha``."""
    if not be.all_reflections:
        raise NotReflection("qubitize needs an all-reflection block-encoding")
    if check and be.circuit.num_qubits <= MAX_LOWER_QUBITS:
        sm = lower(be.circuit)
        if dm.max_abs_diff(sm @ sm, np.eye(sm.shape[0])) > TOL_MATRIX:
            raise NotReflection("S^2 != I")
    refl = ancilla_reflection(be)
    return (be.circuit + refl).then(gphase(math.pi))


def walk_cosines(be: BlockEncoding, walk: Circuit | None = None):
    """For each eigenpair of the encoded matrix return ``(lambda/alpha, cos theta, det)``.

    ``cos theta`` comes from the trace of the walk restricted to
    ``span{|a,v>, S|a,v>}``; ``det`` should be 1 for a conjugate eigenphase pair.
    """
    walk = qubitize(be, check=False) if walk is None else walk
    hmat = be.lcu.materialize()
    w, v = dm.hermitian_eig(hmat)
    a = be.ancilla_state()
    out = []
    for lam, vec in zip(w, v.T):
        e1 = np.kron(a, vec)
        sv = apply_circuit(be.circuit, e1)
        perp = sv - np.vdot(e1, sv) * e1
        nrm = np.linalg.norm(perp)
        basis = [e1] if nrm < 1e-9 else [e1, perp / nrm]
        images = [apply_circuit(walk, b) for b in basis]
        red = np.array([[np.vdot(bi, img) for img in images] for bi in basis])
        if len(basis) == 1:
            cos = red[0, 0].real
            det = 1.0 + 0j
        else:
            cos = (np.trace(red) / 2).real
            det = np.linalg.det(red)
        out.append((float(lam) / be.subnormalization, float(cos), complex(det)))
    return out
