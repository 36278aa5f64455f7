"""Tensor strings over the eight single-qubit factors and their linear combinations."""

from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING

import numpy as np

from . import densemath as dm
from .constants import TOL_HERMITIAN, TOL_SNAP, TOL_UNITARY
from .errors import EmptyString, NotQubitized, ParseError

if TYPE_CHECKING:  # pragma: no cover
    from .circuit.ir import Circuit


class Factor(enum.Enum):
    I = "I"
    X = "X"
    Y = "Y"
    Z = "Z"
    n = "n"
    m = "m"
    sigma = "s"
    sigma_dagger = "sd"

    @property
    def token(self) -> str:
        return self.value

    @property
    def matrix(self) -> np.ndarray:
        return _FACTOR_MATRICES[self]

    @property
    def is_pauli(self) -> bool:
        return self in (Factor.X, Factor.Y, Factor.Z)

    @property
    def is_projector(self) -> bool:
        return self in (Factor.n, Factor.m)

    @property
    def is_ladder(self) -> bool:
        return self in (Factor.sigma, Factor.sigma_dagger)

    def dagger(self) -> Factor:
        if self is Factor.sigma:
            return Factor.sigma_dagger
        if self is Factor.sigma_dagger:
            return Factor.sigma
        return self

    @classmethod
    def parse(cls, token: str) -> Factor:
        try:
            return _TOKENS[token]
        except KeyError:
            raise ParseError(f"unknown factor token {token!r}") from None


_FACTOR_MATRICES = {
    Factor.I: np.eye(2, dtype=complex),
    Factor.X: np.array([[0, 1], [1, 0]], dtype=complex),
    Factor.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    Factor.Z: np.array([[1, 0], [0, -1]], dtype=complex),
    Factor.n: np.array([[0, 0], [0, 1]], dtype=complex),
    Factor.m: np.array([[1, 0], [0, 0]], dtype=complex),
    # sigma = |1><0|, sigma_dagger = |0><1|
    Factor.sigma: np.array([[0, 0], [1, 0]], dtype=complex),
    Factor.sigma_dagger: np.array([[0, 1], [0, 0]], dtype=complex),
}
for _m in _FACTOR_MATRICES.values():
    _m.setflags(write=False)
_TOKENS = {f.token: f for f in Factor}

I, X, Y, Z, N, M = Factor.I, Factor.X, Factor.Y, Factor.Z, Factor.n, Factor.m
S, SD = Factor.sigma, Factor.sigma_dagger


def factors_of(spec: str | Iterable) -> tuple[Factor, ...]:
    """Accept ``"s.sd.I"`` or any iterable of Factor / tokens."""
    if isinstance(spec, str):
        spec = [t for t in spec.split(".") if t]
    return tuple(f if isinstance(f, Factor) else Factor.parse(f) for f in spec)


@dataclass(frozen=True)
class OperatorString:
    factors: tuple[Factor, ...]
    coefficient: complex = 1.0
    plus_hc: bool = False

    def __post_init__(self):
        object.__setattr__(self, "factors", factors_of(self.factors))
        object.__setattr__(self, "coefficient", complex(self.coefficient))

    @classmethod
    def of(cls, spec, coefficient=1.0, plus_hc=False) -> OperatorString:
        return cls(factors_of(spec), coefficient, plus_hc)

    @property
    def n_qubits(self) -> int:
        return len(self.factors)

    @property
    def is_scb(self) -> bool:
        return any(f.is_ladder for f in self.factors)

    @property
    def factors_hermitian(self) -> bool:
        return not self.is_scb

    @property
    def is_hermitian(self) -> bool:
        """Hermitian by construction (no eigensolver involved)."""
        if self.plus_hc:
            return True
        return self.factors_hermitian and self.coefficient.imag == 0.0

    def with_coefficient(self, c) -> OperatorString:
        return replace(self, coefficient=complex(c))

    def scaled(self, c) -> OperatorString:
        return replace(self, coefficient=self.coefficient * c)

    def prefixed(self, prefix) -> OperatorString:
        return replace(self, factors=factors_of(prefix) + self.factors)

    def suffixed(self, suffix) -> OperatorString:
        return replace(self, factors=self.factors + factors_of(suffix))

    def unit_matrix(self) -> np.ndarray:
        """The bare tensor product, no coefficient and no h.c."""
        if not self.factors:
            raise EmptyString("operator string has no factors")
        return dm.kron_all(f.matrix for f in self.factors)

    def to_text(self) -> str:
        return format_string(self)

    def __str__(self) -> str:
        return self.to_text()


def materialize(s: OperatorString) -> np.ndarray:
    base = s.unit_matrix()
    out = s.coefficient * base
    if s.plus_hc:
        out = out + dm.dagger(out)
    return out


def string_dagger(s: OperatorString) -> OperatorString:
    return OperatorString(
        tuple(f.dagger() for f in s.factors), s.coefficient.conjugate(), s.plus_hc
    )


def format_coefficient(c: complex) -> str:
    c = complex(c)
    if c.imag == 0.0:
        return repr(c.real)
    return repr(c)


def format_string(s: OperatorString) -> str:
    text = f"{format_coefficient(s.coefficient)} * {'.'.join(f.token for f in s.factors)}"
    return text + " + h.c." if s.plus_hc else text


def parse_string(text: str) -> OperatorString:
    """Inverse of :func:`format_string`."""
    body = text.strip()
    plus_hc = False
    if body.endswith("+ h.c."):
        plus_hc = True
        body = body[: -len("+ h.c.")].rstrip()
    if "*" not in body:
        raise ParseError(f"missing '*' in term {text!r}")
    coeff_txt, fac_txt = body.rsplit("*", 1)
    try:
        coeff = complex(coeff_txt.strip())
    except ValueError:
        raise ParseError(f"bad coefficient {coeff_txt!r}") from None
    factors = factors_of(fac_txt.strip())
    if not factors:
        raise ParseError(f"no factors in {text!r}")
    return OperatorString(factors, coeff, plus_hc)


# --------------------------------------------------------------------------- classification


class SpectralKind(enum.Enum):
    QUBITIZED = "Qubitized"
    PROJECTOR = "Projector"
    UNITARY = "Unitary"
    OTHER = "Other"


@dataclass(frozen=True)
class SpectralClass:
    kind: SpectralKind
    eigenvalues: tuple[float, ...] = ()
    #: distance of each eigenvalue to the nearest allowed value of the detected family
    gaps: tuple[float, ...] = ()

    def __eq__(self, other):
        if isinstance(other, SpectralKind):
            return self.kind is other
        if isinstance(other, SpectralClass):
            return self.kind is other.kind
        return NotImplemented

    def __hash__(self):
        return hash(self.kind)


def _snap_gaps(w: np.ndarray, allowed: Sequence[float]) -> np.ndarray:
    return np.min(np.abs(w[:, None] - np.asarray(allowed)[None, :]), axis=1)


def classify(h) -> SpectralClass:
    h = dm.as_matrix(h)
    if h.shape[0] != h.shape[1]:
        return SpectralClass(SpectralKind.OTHER)
    if dm.is_hermitian(h, TOL_HERMITIAN):
        w = dm.eigvalsh(h)
        ev = tuple(float(x) for x in w)
        q_gaps = _snap_gaps(w, (-1.0, 0.0, 1.0))
        trace = float(np.trace(h).real)
        if (
            np.all(q_gaps <= TOL_SNAP)
            and abs(trace) <= TOL_SNAP
            and np.any(np.abs(w) > 1 - TOL_SNAP)
        ):
            return SpectralClass(SpectralKind.QUBITIZED, ev, tuple(q_gaps))
        p_gaps = _snap_gaps(w, (0.0, 1.0))
        if np.all(p_gaps <= TOL_SNAP):
            return SpectralClass(SpectralKind.PROJECTOR, ev, tuple(p_gaps))
        if dm.is_unitary(h, TOL_UNITARY):
            return SpectralClass(SpectralKind.UNITARY, ev, tuple(_snap_gaps(w, (-1.0, 1.0))))
        return SpectralClass(SpectralKind.OTHER, ev, tuple(q_gaps))
    if dm.is_unitary(h, TOL_UNITARY):
        return SpectralClass(SpectralKind.UNITARY)
    return SpectralClass(SpectralKind.OTHER)


def xy_variants(h, reducer) -> tuple[np.ndarray, np.ndarray]:
    """X- and Y-type partners of a qubitized matrix on its two-level subspace.

    ``reducer`` must describe ``h`` (see :mod:`qubitizer.synth.reducer`).
    """
    if classify(h).kind is not SpectralKind.QUBITIZED:
        raise NotQubitized("xy_variants needs a qubitized matrix")
    from .synth.reducer import reduced_operator

    return reduced_operator(reducer, "X"), reduced_operator(reducer, "Y")


# --------------------------------------------------------------------------- linear combinations


@dataclass(frozen=True)
class Term:
    """``F^dagger . s . F`` where ``F`` is the optional frame circuit."""

    string: OperatorString
    frame: Circuit | None = None

    @property
    def n_qubits(self) -> int:
        return self.string.n_qubits

    def materialize(self) -> np.ndarray:
        mat = materialize(self.string)
        if self.frame is None:
            return mat
        from .circuit.lower import lower

        f = lower(self.frame)
        return dm.dagger(f) @ mat @ f

    def to_text(self) -> str:
        text = self.string.to_text()
        return text if self.frame is None else f"{text} @frame[{len(self.frame.ops)} ops]"


@dataclass(frozen=True)
class LinearCombination:
    terms: tuple[Term, ...]
    n_qubits: int
    notes: tuple[str, ...] = field(default=(), compare=False)

    @classmethod
    def of(cls, items, n_qubits: int | None = None, notes=()) -> LinearCombination:
        terms = tuple(t if isinstance(t, Term) else Term(t) for t in items)
        if n_qubits is None:
            if not terms:
                raise EmptyString("cannot infer the width of an empty combination")
            n_qubits = terms[0].n_qubits
        for t in terms:
            if t.n_qubits != n_qubits:
                raise ValueError(f"term width {t.n_qubits} != {n_qubits}")
        return cls(terms, n_qubits, tuple(notes))

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __add__(self, other: LinearCombination) -> LinearCombination:
        if other.n_qubits != self.n_qubits:
            raise ValueError("width mismatch")
        return LinearCombination(self.terms + other.terms, self.n_qubits, self.notes + other.notes)

    @property
    def strings(self) -> tuple[OperatorString, ...]:
        return tuple(t.string for t in self.terms)

    def materialize(self) -> np.ndarray:
        dim = 2**self.n_qubits
        out = np.zeros((dim, dim), dtype=complex)
        for t in self.terms:
            out += t.materialize()
        return out

    def tags(self) -> tuple[SpectralClass, ...]:
        """Classification of each term after dividing out its weight."""
        from .synth.reducer import term_weight

        out = []
        for t in self.terms:
            alpha = term_weight(t.string)
            mat = t.materialize()
            out.append(classify(mat / alpha) if alpha != 0 else SpectralClass(SpectralKind.OTHER))
        return tuple(out)

    def map_strings(self, fn) -> LinearCombination:
        return LinearCombination(
            tuple(Term(fn(t.string), t.frame) for t in self.terms), self.n_qubits, self.notes
        )

    def dagger(self) -> LinearCombination:
        return self.map_strings(string_dagger)

    def to_text(self) -> str:
        return "\n".join(t.to_text() for t in self.terms)


def parse_combination(text: str) -> LinearCombination:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    return LinearCombination.of([parse_string(ln) for ln in lines])
