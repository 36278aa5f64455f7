"""Diagonal and anti-diagonal families: Toeplitz, circulant, Hankel, anti-circulant, grids.

Index conventions (all matrices are ``m x m`` with ``m = 2**M``):

* ``toeplitz_diag(n, m, w)``: ``w`` on the entries with ``row - col = m - n`` and
  ``conj(w)`` on their transposes, so ``n = 1`` is the corner and ``n = m - 1`` the
  first off-diagonal.
* ``circulant(n, m, w) = w ADD_{m-n} + conj(w) ADD_{m-n}^dagger``.
* ``hankel_antidiag(n, m, w)``: ``w`` where ``row + col = n - 1``, ``1 <= n <= 2m - 1``.
* ``anticirculant(n, m, w)``: ``w`` where ``row + col = m - 1 - n (mod m)``, ``0 <= n < m``;
  equals ``w X^{(x)M} ADD_n``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

from ..circuit.ir import Circuit, Macro, x
from ..errors import InvalidSpec
from ..opalg import Factor, LinearCombination, OperatorString, Term
from .counting import fusc

log = logging.getLogger(__name__)

I, X, S, SD, N, M = Factor.I, Factor.X, Factor.sigma, Factor.sigma_dagger, Factor.n, Factor.m


def log2_exact(m: int) -> int:
    if m < 1 or m & (m - 1):
        raise InvalidSpec(f"m = {m} is not a power of two")
    return m.bit_length() - 1


def floor_log2(n: int) -> int:
    return n.bit_length() - 1


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def shift_width(n: int) -> int:
    """Number of qubits of the block ``M(n)``."""
    if n == 1:
        return 1
    w = floor_log2(n)
    return w if is_power_of_two(n) else w + 1


# --------------------------------------------------------------------------- the M(n) recursion


@dataclass(frozen=True)
class Branch:
    """``prefix (x) M(child)`` (daggered when ``dagger``) inside the expansion of M(n)."""

    prefix: tuple[Factor, ...]
    child: int | None
    dagger: bool = False


def recursion_step(n: int) -> tuple[Branch, ...]:
    """One level of the recursion; leaves (n = 1 or a power of two) have ``child=None``."""
    if n < 1:
        raise InvalidSpec("shift index must be >= 1")
    if n == 1:
        return (Branch((S,), None),)
    if is_power_of_two(n):
        return (Branch((I,) * floor_log2(n), None),)
    w = floor_log2(n)
    p = n - 2**w
    q = 2 ** (w + 1) - n
    alpha = w - shift_width(p)
    beta = w - shift_width(q)
    return (
        Branch((I,) + (S,) * alpha, p, False),
        Branch((S,) + (SD,) * beta, q, True),
    )


@lru_cache(maxsize=4096)
def shift_strings(n: int) -> tuple[tuple[Factor, ...], ...]:
    """Fully expanded factor strings of ``M(n)``: ones at ``row - col = 2^k - n``."""
    out = []
    for br in recursion_step(n):
        if br.child is None:
            out.append(br.prefix)
            continue
        for sub in shift_strings(br.child):
            if br.dagger:
                sub = tuple(f.dagger() for f in sub)
            out.append(br.prefix + sub)
    return tuple(out)


_HANKEL_MAP = {I: X, S: M, SD: N}


def flip_strings(n: int) -> tuple[tuple[Factor, ...], ...]:
    """``N(n) = X^{(x)k} M(n)``: ones where ``row + col = n - 1``."""
    return tuple(tuple(_HANKEL_MAP[f] for f in s) for s in shift_strings(n))


def _swap_mn(factors):
    swap = {M: N, N: M}
    return tuple(swap.get(f, f) for f in factors)


# --------------------------------------------------------------------------- builders


def _check_range(n: int, lo: int, hi: int, what: str) -> None:
    if not lo <= n <= hi:
        raise InvalidSpec(f"{what}: index {n} outside [{lo}, {hi}]")


def one_sided_strings(n: int, m: int) -> tuple[tuple[Factor, ...], ...]:
    """``sigma^{(x)(M - k)} (x) M(n)``: the lower triangle of the Toeplitz diagonal."""
    big_m = log2_exact(m)
    k = shift_width(n)
    if k > big_m:
        raise InvalidSpec(f"index {n} too large for m = {m}")
    return tuple((S,) * (big_m - k) + s for s in shift_strings(n))


def toeplitz_diag(n: int, m: int, weight: complex = 1.0) -> LinearCombination:
    big_m = log2_exact(m)
    _check_range(n, 1, m - 1, "toeplitz_diag")
    strings = [OperatorString(s, weight, True) for s in one_sided_strings(n, m)]
    return LinearCombination.of(strings, big_m)


def adder_frame(shift: int, m: int) -> Circuit:
    big_m = log2_exact(m)
    return Circuit(big_m, (Macro("adder_ladder", tuple(range(big_m)), (shift % m, m)),))


def circulant(n: int, m: int, weight: complex = 1.0, variant: str = "recursive"):
    """``w ADD_{m-n} + conj(w) ADD_{m-n}^dagger`` as an LCH, or as two adders (``lcu``)."""
    big_m = log2_exact(m)
    _check_range(n, 1, m - 1, "circulant")
    weight = complex(weight)
    if variant == "recursive":
        return toeplitz_diag(n, m, weight) + toeplitz_diag(m - n, m, weight.conjugate())
    if variant == "adder":
        return _circulant_adder(n, m, weight)
    if variant == "lcu":
        from ..circuit.lower import inverse
        from ..synth.adders import adder_ladder
        from ..synth.lcu import UnitaryCombination

        add = adder_ladder(n, m)
        return UnitaryCombination.of([(weight.conjugate(), add), (weight, inverse(add))], big_m)
    raise InvalidSpec(f"unknown circulant variant {variant!r}")


def _circulant_adder(n: int, m: int, weight: complex) -> LinearCombination:
    big_m = log2_exact(m)
    q = m - n
    if q > m // 2:
        q = m - q
        weight = weight.conjugate()
    if is_power_of_two(q):
        k = big_m - floor_log2(q)
        base = OperatorString((I,) * (k - 1) + (S,) + (I,) * (big_m - k), weight, True)
        frame = adder_frame(q, m)
        return LinearCombination.of([Term(base), Term(base, frame)], big_m)
    w = floor_log2(q) + 1
    eps = big_m - 1 - w
    if eps < 0:
        note = f"circulant adder variant not applicable to n={n}, m={m}; recursive path used"
        log.info(note)
        out = circulant(n, m, weight, "recursive")
        return LinearCombination(out.terms, out.n_qubits, out.notes + (note,))
    n2 = 2 ** (w + 1) - q
    branch_a, branch_b = recursion_step(n2)
    a_strings = _expand_branch(branch_a)
    b_strings = _expand_branch(branch_b)
    frame = adder_frame(2**w, m)
    terms = [Term(OperatorString((I,) * eps + s, weight, True)) for s in a_strings]
    b_ops = [OperatorString((I,) * eps + s, weight, True) for s in b_strings]
    terms += [Term(s) for s in b_ops]
    terms += [Term(s, frame) for s in b_ops]
    return LinearCombination.of(terms, big_m)


def _expand_branch(br: Branch):
    if br.child is None:
        return (br.prefix,)
    out = []
    for sub in shift_strings(br.child):
        if br.dagger:
            sub = tuple(f.dagger() for f in sub)
        out.append(br.prefix + sub)
    return tuple(out)


def _real_weight(weight, what: str) -> float:
    weight = complex(weight)
    if weight.imag != 0.0:
        raise InvalidSpec(f"{what} needs a real weight for a Hermitian decomposition")
    return weight.real


def hankel_antidiag(n: int, m: int, weight: complex = 1.0) -> LinearCombination:
    big_m = log2_exact(m)
    _check_range(n, 1, 2 * m - 1, "hankel_antidiag")
    w = _real_weight(weight, "hankel_antidiag")
    if n <= m:
        k = shift_width(n)
        strings = [(M,) * (big_m - k) + s for s in flip_strings(n)]
    else:
        strings = [_swap_mn(t.string.factors) for t in hankel_antidiag(2 * m - n, m).terms]
    return LinearCombination.of([OperatorString(s, w) for s in strings], big_m)


def anticirculant(n: int, m: int, weight: complex = 1.0, variant: str = "sum"):
    big_m = log2_exact(m)
    _check_range(n, 0, m - 1, "anticirculant")
    if variant == "anti_adder":
        return anti_adder(n, m)
    w = _real_weight(weight, "anticirculant")
    if variant == "sum":
        out = hankel_antidiag(m - n, m, w) if n > 0 else None
        second = hankel_antidiag(2 * m - n, m, w) if n > 0 else hankel_antidiag(m, m, w)
        return second if out is None else out + second
    if variant == "adder_conjugation":
        if n % 2 == 0:
            base = OperatorString((X,) * big_m, w)
            frame = adder_frame(n // 2, m) if n else None
            return LinearCombination.of([Term(base, frame)], big_m)
        k = ((n + 1) // 2) % m
        base = hankel_antidiag(1, m, w) + hankel_antidiag(m + 1, m, w)
        frame = adder_frame(k, m) if k else None
        return LinearCombination.of([Term(t.string, frame) for t in base.terms], big_m)
    raise InvalidSpec(f"unknown anticirculant variant {variant!r}")


def anti_adder(n: int, m: int) -> Circuit:
    """``X^{(x)M} . ADD_n`` (the adder acts first)."""
    big_m = log2_exact(m)
    _check_range(n, 0, m - 1, "anti_adder")
    ops = []
    if n:
        ops.append(Macro("adder_ladder", tuple(range(big_m)), (n, m)))
    ops += [x(q) for q in range(big_m)]
    return Circuit(big_m, tuple(ops))


def corner_embed(inner: LinearCombination, big_s: int) -> LinearCombination:
    """Prefix every term with ``m^{(x)(S - M)}``: block-diag(inner, 0)."""
    big_m = inner.n_qubits
    if big_s < big_m:
        raise InvalidSpec(f"S = {big_s} smaller than the inner width {big_m}")
    pad = big_s - big_m
    if pad == 0:
        return inner
    terms = []
    for t in inner.terms:
        frame = t.frame.embedded(big_s, pad) if t.frame is not None else None
        terms.append(Term(t.string.prefixed((M,) * pad), frame))
    return LinearCombination(tuple(terms), big_s, inner.notes)


def grid(dims, cyclic=None, weights=None) -> LinearCombination:
    """Nearest-neighbour hops along every axis of a power-of-two grid."""
    dims = [int(d) for d in dims]
    if not dims:
        raise InvalidSpec("grid needs at least one axis")
    cyclic = [False] * len(dims) if cyclic is None else [bool(c) for c in cyclic]
    weights = [1.0] * len(dims) if weights is None else [complex(w) for w in weights]
    if len(cyclic) != len(dims) or len(weights) != len(dims):
        raise InvalidSpec("dims, cyclic and weights must have equal lengths")
    widths = [log2_exact(d) for d in dims]
    if any(wd == 0 for wd in widths):
        raise InvalidSpec("every axis needs at least two sites")
    total = sum(widths)
    terms = []
    offset = 0
    for d, wd, cyc, wt in zip(dims, widths, cyclic, weights):
        axis = circulant(d - 1, d, wt, "recursive") if cyc else toeplitz_diag(d - 1, d, wt)
        before = (I,) * offset
        after = (I,) * (total - offset - wd)
        for t in axis.terms:
            frame = t.frame.embedded(total, offset) if t.frame is not None else None
            terms.append(Term(t.string.prefixed(before).suffixed(after), frame))
        offset += wd
    return LinearCombination.of(terms, total)


def predicted_toeplitz_count(n: int) -> int:
    return fusc(n)
