"""Exact single-term evolution and product formulas, all as ``exp(i t H)``."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from ..circuit.ir import Circuit, Gate
from ..circuit.lower import inverse
from ..opalg import LinearCombination, Term
from .reducer import QUBITIZED, Reducer, reducer_from_string, term_weight


def hs_exact(r: Reducer, t: float, alpha: float = 1.0) -> Circuit:
    """``exp(i alpha t H)`` for the unit-weight matrix ``H`` described by ``r``."""
    angle = float(alpha) * float(t)
    if r.kind == QUBITIZED:
        rot = Gate("rz", (r.reduct,), r.flag_controls, 2.0 * angle)
    else:
        rot = Gate("p", (r.reduct,), r.flag_controls, angle)
    b = r.basis_change
    return b.then(rot) + inverse(b)


def term_evolution(term: Term, t: float) -> Circuit:
    """``exp(i t H_term)`` including the term's weight and frame."""
    r = reducer_from_string(term.string)
    alpha = term_weight(term.string)
    core = hs_exact(r, t, alpha.real)
    if term.frame is None:
        return core
    return term.frame + core + inverse(term.frame)


@dataclass(frozen=True)
class TrotterPlan:
    t: float
    steps: int = 1
    order: int = 1
    term_order: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.order not in (1, 2):
            raise ValueError("order must be 1 or 2")


def _ordered_terms(lch: LinearCombination, plan: TrotterPlan) -> list[Term]:
    order = plan.term_order if plan.term_order is not None else range(len(lch))
    order = list(order)
    if sorted(order) != list(range(len(lch))):
        raise ValueError("term_order must be a permutation of the term indices")
    return [lch.terms[i] for i in order]


def trotter_step(lch: LinearCombination, plan: TrotterPlan) -> Circuit:
    """One of the ``plan.steps`` identical repetitions."""
    terms = _ordered_terms(lch, plan)
    dt = plan.t / plan.steps
    out = Circuit(lch.n_qubits)
    if plan.order == 1:
        for term in terms:
            out = out + term_evolution(term, dt)
        return out
    for term in terms:
        out = out + term_evolution(term, dt / 2)
    for term in reversed(terms):
        out = out + term_evolution(term, dt / 2)
    return out


def trotter(lch: LinearCombination, plan: TrotterPlan) -> Circuit:
    step = trotter_step(lch, plan)
    return Circuit(lch.n_qubits, step.ops * plan.steps)


def exact_evolution(lch: LinearCombination, t: float):
    """Oracle ``exp(i t H)`` for the materialized combination."""
    from ..densemath import expm_hermitian

    return expm_hermitian(lch.materialize(), t)


def term_sequence_times(lch: LinearCombination, plan: TrotterPlan) -> Sequence[tuple[int, float]]:
    """(term index, time) pairs in application order for one step; handy for reports."""
    order = list(plan.term_order) if plan.term_order is not None else list(range(len(lch)))
    dt = plan.t / plan.steps
    if plan.order == 1:
        return [(i, dt) for i in order]
    return [(i, dt / 2) for i in order] + [(i, dt / 2) for i in reversed(order)]
