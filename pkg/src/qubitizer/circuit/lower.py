"""Dense lowering, macro expansion, inversion and resource counting."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .._backend import kernels
from ..constants import MAX_LOWER_QUBITS, TOL_ANGLE
from ..errors import TooManyQubits
from .ir import Circuit, Gate, Macro, gate_matrix
from .library import expand_macro, inverse_gate


def expand_macros(c: Circuit, keep: frozenset[str] | set[str] = frozenset()) -> Circuit:
    """Recursively replace macros by gates, leaving kinds listed in ``keep`` intact."""
    out = []
    stack = list(reversed(c.ops))
    while stack:
        op = stack.pop()
        if isinstance(op, Macro) and op.kind not in keep:
            stack.extend(reversed(expand_macro(op)))
        else:
            out.append(op)
    return Circuit(c.num_qubits, tuple(out), c.registers)


def _apply_gate(mat: np.ndarray, g: Gate, nq: int) -> None:
    cmask = 0
    cval = 0
    for q, pol in g.controls:
        bit = 1 << (nq - 1 - q)
        cmask |= bit
        if pol:
            cval |= bit
    if g.kind == "swap":
        a, b = g.targets
        kernels.apply_swap(mat, 1 << (nq - 1 - a), 1 << (nq - 1 - b), cmask, cval)
    else:
        tmask = 1 << (nq - 1 - g.targets[0])
        kernels.apply_1q(mat, np.ascontiguousarray(gate_matrix(g)), tmask, cmask, cval)


def apply_circuit(c: Circuit, states: np.ndarray, check_size: bool = True) -> np.ndarray:
    """Apply ``c`` to a state vector or to each column of a matrix; returns a new array."""
    if check_size and c.num_qubits > MAX_LOWER_QUBITS:
        raise TooManyQubits(f"{c.num_qubits} qubits > {MAX_LOWER_QUBITS}")
    arr = np.array(states, dtype=complex, order="C")
    vec = arr.ndim == 1
    if vec:
        arr = arr.reshape(-1, 1).copy(order="C")
    if arr.shape[0] != 2**c.num_qubits:
        raise ValueError(f"state dim {arr.shape[0]} != 2^{c.num_qubits}")
    nq = c.num_qubits
    for op in expand_macros(c).ops:
        _apply_gate(arr, op, nq)
    return arr[:, 0] if vec else arr


def lower(c: Circuit) -> np.ndarray:
    if c.num_qubits > MAX_LOWER_QUBITS:
        raise TooManyQubits(f"{c.num_qubits} qubits > {MAX_LOWER_QUBITS}")
    return apply_circuit(c, np.eye(2**c.num_qubits, dtype=complex))


def inverse(c: Circuit) -> Circuit:
    ops = []
    for op in reversed(c.ops):
        if isinstance(op, Gate):
            ops.append(inverse_gate(op))
        elif op.kind == "qft":
            ops.append(Macro("iqft", op.qubits, (), op.controls))
        elif op.kind == "iqft":
            ops.append(Macro("qft", op.qubits, (), op.controls))
        elif op.kind in ("adder_qft", "adder_ladder"):
            n, m = op.params
            ops.append(Macro(op.kind, op.qubits, ((m - n) % m, m), op.controls))
        else:
            ops.extend(inverse(Circuit(c.num_qubits, tuple(expand_macro(op)))).ops)
    return Circuit(c.num_qubits, tuple(ops), c.registers)


def conjugate(c: Circuit) -> Circuit:
    """Circuit whose lowering is the entrywise complex conjugate of ``lower(c)``."""
    ops = []
    for op in expand_macros(c).ops:
        k = op.kind
        if k in ("x", "z", "h", "swap", "ry"):
            ops.append(op)
        elif k == "y":
            # Y* = -Y
            ops += [op, Gate("gphase", op.targets, op.controls, math.pi)]
        elif k == "s":
            ops.append(Gate("p", op.targets, op.controls, -math.pi / 2))
        else:
            ops.append(Gate(k, op.targets, op.controls, -op.theta))
    return Circuit(c.num_qubits, tuple(ops), c.registers)


def is_arbitrary_angle(theta: float) -> bool:
    r = math.remainder(theta, math.pi / 2)
    return abs(r) > TOL_ANGLE


@dataclass
class ResourceReport:
    gates: Counter = field(default_factory=Counter)
    macros: Counter = field(default_factory=Counter)
    arbitrary_rotations: int = 0
    control_widths: Counter = field(default_factory=Counter)

    @property
    def total_gates(self) -> int:
        return sum(self.gates.values())

    def to_dict(self) -> dict:
        return {
            "gates": dict(sorted(self.gates.items())),
            "macros": dict(sorted(self.macros.items())),
            "arbitrary_rotations": self.arbitrary_rotations,
            "control_widths": {str(k): v for k, v in sorted(self.control_widths.items())},
            "total_gates": self.total_gates,
        }


def count_resources(c: Circuit, keep_qft: bool = False) -> ResourceReport:
    """Histogram of the macro-expanded circuit.

    With ``keep_qft`` the QFT macros stay opaque and are reported as macro calls only.
    """
    rep = ResourceReport()
    stack = list(reversed(c.ops))
    while stack:
        op = stack.pop()
        if isinstance(op, Macro):
            rep.macros[op.kind] += 1
            if keep_qft and op.kind in ("qft", "iqft"):
                continue
            stack.extend(reversed(expand_macro(op)))
            continue
        rep.gates[op.kind] += 1
        rep.control_widths[len(op.controls)] += 1
        if op.kind in ("p", "ry", "rz") and is_arbitrary_angle(op.theta):
            rep.arbitrary_rotations += 1
    return rep
