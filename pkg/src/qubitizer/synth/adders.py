"""Modular adders ``|i> -> |i + n mod m>`` and the wrap-negated variant."""

from __future__ import annotations

import numpy as np

from ..circuit.ir import Circuit, Macro
from ..circuit.library import adder_ladder_gates, check_adder_args


def adder_qft(n: int, m: int) -> Circuit:
    big_m = check_adder_args(n, m)
    return Circuit(big_m, (Macro("adder_qft", tuple(range(big_m)), (n, m)),))


def adder_ladder(n: int, m: int) -> Circuit:
    big_m = check_adder_args(n, m)
    return Circuit(big_m, (Macro("adder_ladder", tuple(range(big_m)), (n, m)),))


def zadd(n: int, m: int) -> Circuit:
    """Adder whose wrapped-around entries carry a -1."""
    big_m = check_adder_args(n, m)
    return Circuit(big_m, tuple(adder_ladder_gates(n, range(big_m), negate_wrap=True)))


def adder_matrix(n: int, m: int) -> np.ndarray:
    check_adder_args(n, m)
    out = np.zeros((m, m), dtype=complex)
    for i in range(m):
        out[(i + n) % m, i] = 1.0
    return out


def zadd_matrix(n: int, m: int) -> np.ndarray:
    check_adder_args(n, m)
    out = np.zeros((m, m), dtype=complex)
    for i in range(m):
        out[(i + n) % m, i] = -1.0 if i + n >= m else 1.0
    return out
