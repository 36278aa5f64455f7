"""Permutation unitaries: state-swapping products and table-driven oracles."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ..circuit.ir import Circuit, Gate, cx, swap
from ..circuit.lower import inverse
from ..errors import InvalidSpec, NotBijective, NotSingleCycle
from ..opalg import LinearCombination, Term
from .diagonals import adder_frame, circulant, log2_exact


@dataclass(frozen=True)
class PermutationSpec:
    """``table[i]`` is the image of basis state ``i``."""

    table: tuple[int, ...]

    def __post_init__(self):
        t = tuple(int(v) for v in self.table)
        object.__setattr__(self, "table", t)
        if sorted(t) != list(range(len(t))):
            raise NotBijective(f"table {t} is not a bijection on [0, {len(t)})")

    @property
    def size(self) -> int:
        return len(self.table)

    def inverse(self) -> PermutationSpec:
        inv = [0] * self.size
        for i, v in enumerate(self.table):
            inv[v] = i
        return PermutationSpec(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        """Orbits in order of their smallest element, each starting at that element."""
        seen = set()
        out = []
        for start in range(self.size):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self.table[start]
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self.table[nxt]
            out.append(tuple(cyc))
        return out

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.cycles())

    @property
    def periods(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cycles())

    def matrix(self) -> np.ndarray:
        out = np.zeros((self.size, self.size), dtype=complex)
        for i, v in enumerate(self.table):
            out[v, i] = 1.0
        return out


def transpositions(p: PermutationSpec) -> list[tuple[int, int]]:
    """Swaps in application order whose product is ``p``.

    A cycle ``c0 -> c1 -> ... -> c_{L-1}`` yields ``(c0, c1), (c0, c2), ..., (c0, c_{L-1})``.
    """
    out = []
    for cyc in p.cycles():
        out += [(cyc[0], c) for c in cyc[1:]]
    return out


def state_swap(a: int, b: int, n_qubits: int) -> list[Gate]:
    """Exchange basis states ``|a>`` and ``|b>``; every other basis state is fixed."""
    if a == b:
        return []
    diff = a ^ b
    bits = [q for q in range(n_qubits) if diff >> (n_qubits - 1 - q) & 1]
    pivot = bits[0]
    ladder = [cx(pivot, q) for q in bits[1:]]
    # after the ladder both states agree with ``a`` off the pivot when a's pivot bit is 0
    ref = a if not a >> (n_qubits - 1 - pivot) & 1 else b
    ctrls = [(q, bool(ref >> (n_qubits - 1 - q) & 1)) for q in range(n_qubits) if q != pivot]
    return ladder + [Gate("x", (pivot,), tuple(ctrls))] + list(reversed(ladder))


def permutation_circuit(p: PermutationSpec) -> Circuit:
    nq = log2_exact(p.size)
    ops = []
    for a, b in transpositions(p):
        ops += state_swap(a, b, nq)
    return Circuit(nq, tuple(ops))


@dataclass(frozen=True)
class CircularPermutation:
    u_pi: Circuit
    u_pi_dagger: Circuit
    adder: Circuit
    u_r: Circuit
    hermitian: LinearCombination
    relabel: PermutationSpec


def circular_permutation(cycle: PermutationSpec, n: int, m: int, weight: complex = 1.0,
                         variant: str = "recursive") -> CircularPermutation:
    """Relabel a circulant along the single ``m``-cycle ``cycle`` (the directed ring ``U_r``).

    ``U_pi^dagger |i> = U_r^{i+1} |0>`` so that ``U_r = U_pi^dagger ADD_1 U_pi``; the
    Hermitian part is the circulant ``(n, m)`` conjugated by ``U_pi``.
    """
    big_m = log2_exact(m)
    if cycle.size != m:
        raise InvalidSpec(f"cycle table has {cycle.size} entries, expected {m}")
    if len(cycle.cycles()) != 1:
        raise NotSingleCycle(f"table {cycle.table} is not a single {m}-cycle")
    images = []
    state = 0
    for _ in range(m):
        state = cycle.table[state]
        images.append(state)
    pi_dag = PermutationSpec(tuple(images))  # i -> U_r^{i+1}|0>
    u_pi_dagger = permutation_circuit(pi_dag)
    u_pi = inverse(u_pi_dagger)
    add = adder_frame(1, m)
    u_r = u_pi + add + u_pi_dagger
    inner = circulant(n, m, weight, variant)
    terms = []
    for t in inner.terms:
        frame = u_pi if t.frame is None else u_pi + t.frame
        terms.append(Term(t.string, frame))
    herm = LinearCombination(tuple(terms), big_m, inner.notes)
    return CircularPermutation(u_pi, u_pi_dagger, add, u_r, herm, pi_dag.inverse())


def _xor_oracle(table: Sequence[int], nq: int, src: int, dst: int) -> list[Gate]:
    """``|x>_src |y>_dst -> |x>_src |y xor table[x]>_dst`` using fully controlled X gates."""
    ops = []
    for xv, fx in enumerate(table):
        ctrls = tuple((src + j, bool(xv >> (nq - 1 - j) & 1)) for j in range(nq))
        for j in range(nq):
            if fx >> (nq - 1 - j) & 1:
                ops.append(Gate("x", (dst + j,), ctrls))
    return ops


def permutation_from_table(p: PermutationSpec) -> Circuit:
    """Oracle, register swap, inverse oracle on ``2M`` qubits (register A first, B ancillas).

    ``|x>_A |0>_B -> |table[x]>_A |0>_B``.
    """
    nq = log2_exact(p.size)
    inv = p.inverse().table
    ops = _xor_oracle(p.table, nq, 0, nq)
    ops += [swap(j, nq + j) for j in range(nq)]
    ops += _xor_oracle(inv, nq, 0, nq)
    return Circuit(2 * nq, tuple(ops), {"A": (0, nq), "B": (nq, 2 * nq)})
