"""Gate-level circuit representation.

Qubit 0 is the most significant bit of a basis index. Operations are listed in
application order: the first op acts first.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from ..errors import RegisterMismatch, UnknownMacro

GATE_KINDS = ("x", "y", "z", "h", "s", "p", "ry", "rz", "swap", "gphase")
PARAM_KINDS = frozenset({"p", "ry", "rz", "gphase"})
MACRO_KINDS = ("qft", "iqft", "adder_qft", "adder_ladder", "stateprep")

Control = tuple[int, bool]


def _norm_controls(controls) -> tuple[Control, ...]:
    if type(controls) is tuple and all(
        type(c) is tuple and type(c[0]) is int and type(c[1]) is bool for c in controls
    ):
        return controls
    out = []
    for c in controls:
        if isinstance(c, int):
            out.append((c, True))
        else:
            q, pol = c
            out.append((int(q), bool(pol)))
    return tuple(out)


@dataclass(frozen=True)
class Gate:
    kind: str
    targets: tuple[int, ...]
    controls: tuple[Control, ...] = ()
    theta: float | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        targets = self.targets
        if type(targets) is not tuple or any(type(t) is not int for t in targets):
            targets = tuple(int(t) for t in targets)
            object.__setattr__(self, "targets", targets)
        controls = _norm_controls(self.controls) if self.controls else ()
        object.__setattr__(self, "controls", controls)
        if len(targets) != (2 if self.kind == "swap" else 1):
            raise ValueError(f"{self.kind} takes {'2' if self.kind == 'swap' else '1'} target(s), got {targets}")
        if len(targets) == 2 and targets[0] == targets[1]:
            raise ValueError("repeated target")
        qs = targets + tuple(q for q, _ in controls)
        if controls and len(set(qs)) != len(qs):
            raise ValueError("controls must be distinct and disjoint from targets")
        if (self.kind in PARAM_KINDS) != (self.theta is not None):
            raise ValueError(f"{self.kind} parameter mismatch")
        if self.theta is not None:
            object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "_span", (min(qs), max(qs)))

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.targets + tuple(q for q, _ in self.controls)

    def with_controls(self, extra: Sequence[Control]) -> Gate:
        return Gate(self.kind, self.targets, self.controls + _norm_controls(extra), self.theta)

    def shifted(self, offset: int) -> Gate:
        return Gate(
            self.kind,
            tuple(t + offset for t in self.targets),
            tuple((q + offset, p) for q, p in self.controls),
            self.theta,
        )

    def remapped(self, mapping: Mapping[int, int]) -> Gate:
        return Gate(
            self.kind,
            tuple(mapping[t] for t in self.targets),
            tuple((mapping[q], p) for q, p in self.controls),
            self.theta,
        )


@dataclass(frozen=True)
class Macro:
    """A named sub-circuit placed on ``qubits`` (most significant first)."""

    kind: str
    qubits: tuple[int, ...]
    params: tuple = ()
    controls: tuple[Control, ...] = ()

    def __post_init__(self):
        if self.kind not in MACRO_KINDS:
            raise UnknownMacro(f"unknown macro kind {self.kind!r}")
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        object.__setattr__(self, "controls", _norm_controls(self.controls))
        object.__setattr__(self, "params", tuple(self.params))
        if not self.qubits or len(set(self.qubits)) != len(self.qubits):
            raise ValueError("macro needs distinct qubits")
        if {q for q, _ in self.controls} & set(self.qubits):
            raise ValueError("macro controls overlap its register")
        qs = self.all_qubits
        object.__setattr__(self, "_span", (min(qs), max(qs)))

    @property
    def targets(self) -> tuple[int, ...]:
        return self.qubits

    @property
    def all_qubits(self) -> tuple[int, ...]:
        return self.qubits + tuple(q for q, _ in self.controls)

    def with_controls(self, extra: Sequence[Control]) -> Macro:
        return Macro(self.kind, self.qubits, self.params, self.controls + _norm_controls(extra))

    def shifted(self, offset: int) -> Macro:
        return Macro(
            self.kind,
            tuple(q + offset for q in self.qubits),
            self.params,
            tuple((q + offset, p) for q, p in self.controls),
        )

    def remapped(self, mapping: Mapping[int, int]) -> Macro:
        return Macro(
            self.kind,
            tuple(mapping[q] for q in self.qubits),
            self.params,
            tuple((mapping[q], p) for q, p in self.controls),
        )


Op = Gate | Macro


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    ops: tuple[Op, ...] = ()
    registers: Mapping[str, tuple[int, int]] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        object.__setattr__(self, "registers", dict(self.registers))
        n = self.num_qubits
        for op in self.ops:
            lo, hi = op._span
            if lo < 0 or hi >= n:
                raise ValueError(f"{op} leaves the register of {n} qubits")

    @classmethod
    def _trusted(cls, num_qubits: int, ops: tuple, registers: dict) -> Circuit:
        # ops already validated against this width
        c = object.__new__(cls)
        object.__setattr__(c, "num_qubits", num_qubits)
        object.__setattr__(c, "ops", ops)
        object.__setattr__(c, "registers", registers)
        return c

    def __len__(self) -> int:
        return len(self.ops)

    def __add__(self, other: Circuit) -> Circuit:
        """``a + b`` runs ``a`` first."""
        if other.num_qubits != self.num_qubits:
            raise RegisterMismatch(f"{self.num_qubits} vs {other.num_qubits} qubits")
        regs = dict(self.registers)
        regs.update(other.registers)
        return Circuit._trusted(self.num_qubits, self.ops + other.ops, regs)

    def then(self, *ops: Op) -> Circuit:
        return Circuit(self.num_qubits, self.ops + tuple(ops), self.registers)

    def with_registers(self, **regs: tuple[int, int]) -> Circuit:
        merged = dict(self.registers)
        merged.update(regs)
        return Circuit(self.num_qubits, self.ops, merged)

    def embedded(self, num_qubits: int, offset: int = 0) -> Circuit:
        """Place this circuit on qubits ``offset..`` of a wider register."""
        return Circuit(num_qubits, tuple(op.shifted(offset) for op in self.ops))

    def remapped(self, mapping: Sequence[int] | Mapping[int, int], num_qubits: int) -> Circuit:
        if not isinstance(mapping, Mapping):
            mapping = dict(enumerate(mapping))
        return Circuit(num_qubits, tuple(op.remapped(mapping) for op in self.ops))

    def controlled(self, controls: Sequence[Control]) -> Circuit:
        return Circuit(
            self.num_qubits, tuple(op.with_controls(controls) for op in self.ops), self.registers
        )

    @property
    def has_macros(self) -> bool:
        return any(isinstance(op, Macro) for op in self.ops)


def circuit(num_qubits: int, ops: Iterable[Op] = ()) -> Circuit:
    return Circuit(num_qubits, tuple(ops))


# --------------------------------------------------------------------------- gate constructors


def x(q, controls=()):
    return Gate("x", (q,), controls)


def y(q, controls=()):
    return Gate("y", (q,), controls)


def z(q, controls=()):
    return Gate("z", (q,), controls)


def h(q, controls=()):
    return Gate("h", (q,), controls)


def s(q, controls=()):
    return Gate("s", (q,), controls)


def p(q, theta, controls=()):
    return Gate("p", (q,), controls, theta)


def ry(q, theta, controls=()):
    return Gate("ry", (q,), controls, theta)


def rz(q, theta, controls=()):
    return Gate("rz", (q,), controls, theta)


def swap(a, b, controls=()):
    return Gate("swap", (a, b), controls)


def gphase(theta, q=0, controls=()):
    return Gate("gphase", (q,), controls, theta)


def cx(control, target):
    return Gate("x", (target,), ((control, True),))


def gate_matrix(g: Gate) -> np.ndarray:
    """2x2 matrix of a one-target gate (ignores controls)."""
    k, t = g.kind, g.theta
    if k == "x":
        return np.array([[0, 1], [1, 0]], dtype=complex)
    if k == "y":
        return np.array([[0, -1j], [1j, 0]], dtype=complex)
    if k == "z":
        return np.array([[1, 0], [0, -1]], dtype=complex)
    if k == "h":
        return np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    if k == "s":
        return np.array([[1, 0], [0, 1j]], dtype=complex)
    if k == "p":
        return np.array([[1, 0], [0, np.exp(1j * t)]], dtype=complex)
    if k == "ry":
        c, sn = np.cos(t / 2), np.sin(t / 2)
        return np.array([[c, -sn], [sn, c]], dtype=complex)
    if k == "rz":
        return np.array([[np.exp(1j * t / 2), 0], [0, np.exp(-1j * t / 2)]], dtype=complex)
    if k == "gphase":
        return np.exp(1j * t) * np.eye(2, dtype=complex)
    raise ValueError(f"{k} has no 2x2 matrix")
