"""Dispatch from a spec to its decomposition, plus summand counting."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..circuit.ir import Circuit
from ..circuit.lower import apply_circuit, lower
from ..errors import InvalidSpec
from ..opalg import LinearCombination, parse_string
from ..synth.lcu import UnitaryCombination, lch_to_lcu_all
from . import diagonals, gram
from .counting import fusc
from .permutations import PermutationSpec, circular_permutation, permutation_from_table
from .spec import StructuredSpec, parse_complex, parse_state, spec_from_dict


@dataclass
class BuildResult:
    spec: StructuredSpec
    lch: LinearCombination | None = None
    lcu: UnitaryCombination | None = None
    #: a circuit whose (ancilla-projected) lowering is the matrix itself
    unitary: Circuit | None = None
    #: trailing ancilla qubits of ``unitary`` that start and end in |0>
    ancillas: int = 0
    notes: tuple[str, ...] = field(default=())

    def matrix(self) -> np.ndarray:
        if self.lch is not None:
            return self.lch.materialize()
        if self.lcu is not None:
            return self.lcu.materialize()
        if self.unitary is None:
            raise InvalidSpec("nothing to materialize")
        if not self.ancillas:
            return lower(self.unitary)
        nq = self.unitary.num_qubits - self.ancillas
        d = 2**nq
        cols = np.zeros((2**self.unitary.num_qubits, d), dtype=complex)
        cols[np.arange(d) * 2**self.ancillas, np.arange(d)] = 1.0
        out = apply_circuit(self.unitary, cols)
        return out[np.arange(d) * 2**self.ancillas, :]

    def unitary_combination(self) -> UnitaryCombination:
        if self.lcu is not None:
            return self.lcu
        if self.lch is not None:
            return lch_to_lcu_all(self.lch)
        raise InvalidSpec(f"{self.spec.kind} has no unitary combination")


def _lch_or_lcu(spec, out) -> BuildResult:
    if isinstance(out, LinearCombination):
        return BuildResult(spec, lch=out, notes=out.notes)
    return BuildResult(spec, lcu=out)


def build(spec: StructuredSpec) -> BuildResult:
    k = spec.kind
    w = spec.weight
    if k == "toeplitz_diag":
        spec.require("m", "n")
        return _lch_or_lcu(spec, diagonals.toeplitz_diag(spec.n, spec.m, w))
    if k in ("circulant", "circulant_adder"):
        spec.require("m", "n")
        return _lch_or_lcu(spec, diagonals.circulant(spec.n, spec.m, w, spec.variant))
    if k == "hankel_antidiag":
        spec.require("m", "n")
        return _lch_or_lcu(spec, diagonals.hankel_antidiag(spec.n, spec.m, w))
    if k == "anticirculant":
        spec.require("m", "n")
        if spec.variant == "anti_adder":
            circ = diagonals.anti_adder(spec.n, spec.m)
            return BuildResult(spec, lcu=UnitaryCombination.of([(w, circ)]), unitary=circ)
        return _lch_or_lcu(spec, diagonals.anticirculant(spec.n, spec.m, w, spec.variant))
    if k == "corner_embed":
        spec.require("inner", "s")
        inner = build(spec_from_dict(spec.extra["inner"]))
        if inner.lch is None:
            raise InvalidSpec("corner_embed needs an inner spec with a Hermitian decomposition")
        big_s = _log2(spec.s)
        return _lch_or_lcu(spec, diagonals.corner_embed(inner.lch, big_s))
    if k == "circular_permutation":
        spec.require("m", "n", "table")
        cp = circular_permutation(PermutationSpec(spec.extra["table"]), spec.n, spec.m, w,
                                  spec.variant or "recursive")
        return BuildResult(spec, lch=cp.hermitian, unitary=cp.u_r, notes=cp.hermitian.notes)
    if k == "permutation_table":
        spec.require("table")
        circ = permutation_from_table(PermutationSpec(spec.extra["table"]))
        return BuildResult(spec, unitary=circ, ancillas=circ.num_qubits // 2)
    if k == "density_matrix":
        spec.require("psi")
        return BuildResult(spec, lcu=gram.density_matrix_lcu(parse_state(spec.extra["psi"])))
    if k == "outer_product":
        spec.require("phi", "psi")
        lcu = gram.outer_product_lcu(parse_state(spec.extra["phi"]), parse_state(spec.extra["psi"]))
        return BuildResult(spec, lcu=lcu)
    if k == "line_column":
        spec.require("psi", "j")
        lcu = gram.line_column_lcu(
            parse_state(spec.extra["psi"]), int(spec.extra["j"]), spec.extra.get("which", "column")
        )
        return BuildResult(spec, lcu=lcu)
    if k == "grid":
        spec.require("dims")
        weights = spec.extra.get("weights")
        weights = [parse_complex(v) for v in weights] if weights else None
        return _lch_or_lcu(spec, diagonals.grid(spec.extra["dims"], spec.extra.get("cyclic"), weights))
    if k == "terms":
        spec.require("terms")
        lch = LinearCombination.of([parse_string(t) for t in spec.extra["terms"]])
        return BuildResult(spec, lch=lch)
    raise InvalidSpec(f"no builder for {k!r}")  # pragma: no cover


def _log2(size: int) -> int:
    if size is None or size < 1 or size & (size - 1):
        raise InvalidSpec(f"size {size!r} is not a power of two")
    return size.bit_length() - 1


def summand_count(spec: StructuredSpec, representation: str = "LCH") -> int:
    """Counts obtained by running the builder."""
    rep = representation.upper()
    res = build(spec)
    if rep == "LCH":
        if res.lch is None:
            raise InvalidSpec(f"{spec.kind} ({spec.variant}) has no Hermitian decomposition")
        return len(res.lch)
    if rep == "LCU":
        if res.lch is None and res.lcu is None:
            return 1
        return len(res.unitary_combination())
    raise InvalidSpec("representation must be LCH or LCU")


def predicted_count(spec: StructuredSpec, representation: str = "LCH") -> int | None:
    """Closed-form count of the decomposition this package builds (None when undefined)."""
    rep = representation.upper()
    k = spec.kind
    lch = _predicted_lch(spec)
    if rep == "LCH":
        return lch
    if k in ("density_matrix", "outer_product", "line_column"):
        return 2
    if k in ("circulant", "circulant_adder") and spec.variant == "lcu":
        return 2
    if k == "permutation_table" or (k == "anticirculant" and spec.variant == "anti_adder"):
        return 1
    return None if lch is None else 2 * lch


def _predicted_lch(spec: StructuredSpec) -> int | None:
    k, n, m = spec.kind, spec.n, spec.m
    if k == "toeplitz_diag":
        return fusc(n)
    if k in ("circulant", "circulant_adder", "circular_permutation"):
        variant = spec.variant or "recursive"
        if variant == "recursive":
            return fusc(n) + fusc(m - n)
        if variant == "adder":
            return circulant_adder_count(n, m)
        return None
    if k == "hankel_antidiag":
        return fusc(n) if n <= m else fusc(2 * m - n)
    if k == "anticirculant":
        if spec.variant == "sum":
            return 1 if n == 0 else fusc(m - n) + fusc(n)
        if spec.variant == "adder_conjugation":
            return 1 if n % 2 == 0 else 1 + fusc(m - 1)
        return None
    if k == "corner_embed":
        return _predicted_lch(spec_from_dict(spec.extra["inner"]))
    if k == "grid":
        total = 0
        cyclic = spec.extra.get("cyclic") or [False] * len(spec.extra["dims"])
        for d, cyc in zip(spec.extra["dims"], cyclic):
            total += fusc(d - 1) + (fusc(1) if cyc else 0)
        return total
    if k == "terms":
        return len(spec.extra["terms"])
    return None


def circulant_adder_count(n: int, m: int) -> int:
    q = m - n
    if q > m // 2:
        q = m - q
    if diagonals.is_power_of_two(q):
        return 2
    w = diagonals.floor_log2(q) + 1
    if 2 ** (w + 1) > m:
        return fusc(n) + fusc(m - n)
    return fusc(2**w - q) + 2 * fusc(q)


def table_one_count(spec: StructuredSpec, representation: str = "LCH") -> int | None:
    """Maximum counts as printed in the summand table, for side-by-side reports."""
    rep = representation.upper()
    k, n = spec.kind, spec.n
    lch = None
    if k == "toeplitz_diag":
        lch = fusc(n)
    elif k in ("circulant", "circulant_adder") and spec.variant in ("recursive", "adder"):
        lch = fusc(n) + fusc(2 ** (n.bit_length()) - n)
    elif k in ("circulant", "circulant_adder") and spec.variant == "lcu":
        return 2 if rep == "LCU" else None
    elif k == "hankel_antidiag":
        lch = fusc(n)
    elif k == "anticirculant" and spec.variant == "adder_conjugation":
        return 2 if rep == "LCH" else 4
    elif k in ("density_matrix", "outer_product", "line_column"):
        return 2 if rep == "LCU" else None
    if lch is None:
        return None
    return lch if rep == "LCH" else 2 * lch
