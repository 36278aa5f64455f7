"""Gate-level expansions of the macro vocabulary."""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np

from ..errors import NotNormalized, OutOfRange
from .ir import Gate, Macro, h, p, ry, swap, x, z


def register_size(m: int) -> int:
    if m < 1 or m & (m - 1):
        raise OutOfRange(f"m = {m} is not a power of two")
    return m.bit_length() - 1


def check_adder_args(n: int, m: int) -> int:
    big_m = register_size(m)
    if not 0 <= n < m:
        raise OutOfRange(f"adder needs 0 <= n < m, got n={n}, m={m}")
    return big_m


def _wrap_angle(theta: float) -> float:
    t = math.fmod(theta, 2 * math.pi)
    if t > math.pi:
        t -= 2 * math.pi
    elif t <= -math.pi:
        t += 2 * math.pi
    return t


def qft_gates(qubits: Sequence[int]) -> list[Gate]:
    """F|j> = sum_k exp(2 pi i jk / 2^K)|k> / sqrt(2^K), qubits[0] most significant."""
    qs = list(qubits)
    k = len(qs)
    out: list[Gate] = []
    for i in range(k):
        out.append(h(qs[i]))
        for l in range(i + 1, k):
            out.append(p(qs[i], math.pi / 2 ** (l - i), controls=[(qs[l], True)]))
    for i in range(k // 2):
        out.append(swap(qs[i], qs[k - 1 - i]))
    return out


def iqft_gates(qubits: Sequence[int]) -> list[Gate]:
    return [inverse_gate(g) for g in reversed(qft_gates(qubits))]


def adder_qft_ops(n: int, qubits: Sequence[int]) -> list:
    """Fourier-basis adder: QFT, one phase gate per qubit, inverse QFT."""
    qs = tuple(qubits)
    big_m = len(qs)
    m = 2**big_m
    check_adder_args(n, m)
    phases = [p(qs[b], _wrap_angle(2 * math.pi * n * 2 ** (big_m - 1 - b) / m)) for b in range(big_m)]
    return [Macro("qft", qs), *phases, Macro("iqft", qs)]


def _increment_power(power: int, qs: Sequence[int], negate_wrap: bool) -> list[Gate]:
    """Add 2**power: increment the high ``len(qs) - power`` qubits."""
    high = list(qs[: len(qs) - power])
    out: list[Gate] = []
    if negate_wrap and high:
        # -1 exactly when the high part is all ones, i.e. the addition wraps
        out.append(z(high[0], controls=[(q, True) for q in high[1:]]))
    for j in range(len(high)):
        out.append(x(high[j], controls=[(q, True) for q in high[j + 1 :]]))
    return out


def adder_ladder_gates(n: int, qubits: Sequence[int], negate_wrap: bool = False) -> list[Gate]:
    qs = tuple(qubits)
    big_m = len(qs)
    check_adder_args(n, 2**big_m)
    out: list[Gate] = []
    for power in range(big_m):
        if n >> power & 1:
            out.extend(_increment_power(power, qs, negate_wrap))
    return out


def stateprep_gates(amplitudes, qubits: Sequence[int], tol: float = 1e-10) -> list[Gate]:
    """Binary tree of controlled RY plus leaf phases; maps |0...0> to ``amplitudes``."""
    qs = list(qubits)
    k = len(qs)
    a = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if a.size != 2**k:
        raise OutOfRange(f"{a.size} amplitudes for {k} qubits")
    norm = float(np.vdot(a, a).real)
    if abs(norm - 1.0) > tol:
        raise NotNormalized(f"amplitude norm^2 = {norm!r}")
    prob = np.abs(a) ** 2
    out: list[Gate] = []
    for level in range(k):
        block = 2 ** (k - level)
        for prefix in range(2**level):
            seg = prob[prefix * block : (prefix + 1) * block]
            w0 = float(seg[: block // 2].sum())
            w1 = float(seg[block // 2 :].sum())
            if w1 <= 0.0:
                continue
            theta = 2.0 * math.atan2(math.sqrt(w1), math.sqrt(w0))
            ctrls = _prefix_controls(qs, level, prefix)
            out.append(ry(qs[level], theta, controls=ctrls))
    if np.any(np.abs(a.imag) > 0) or np.any(a.real < 0):
        last = qs[-1]
        for prefix in range(2 ** (k - 1)):
            ctrls = _prefix_controls(qs, k - 1, prefix)
            ph0 = float(np.angle(a[2 * prefix])) if abs(a[2 * prefix]) > 0 else 0.0
            ph1 = float(np.angle(a[2 * prefix + 1])) if abs(a[2 * prefix + 1]) > 0 else 0.0
            if ph0 != 0.0:
                out += [x(last, ctrls), p(last, ph0, ctrls), x(last, ctrls)]
            if ph1 != 0.0:
                out.append(p(last, ph1, ctrls))
    return out


def _prefix_controls(qs, level, prefix):
    return [(qs[j], bool(prefix >> (level - 1 - j) & 1)) for j in range(level)]


def inverse_gate(g: Gate) -> Gate:
    if g.kind in ("x", "y", "z", "h", "swap"):
        return g
    if g.kind == "s":
        return Gate("p", g.targets, g.controls, -math.pi / 2)
    return Gate(g.kind, g.targets, g.controls, -g.theta)


def expand_macro(mac: Macro) -> list:
    """One level of expansion; may still contain nested macros."""
    qs = mac.qubits
    if mac.kind == "qft":
        body = qft_gates(qs)
    elif mac.kind == "iqft":
        body = iqft_gates(qs)
    elif mac.kind == "adder_qft":
        n, m = mac.params
        check_adder_args(int(n), int(m))
        body = adder_qft_ops(int(n), qs)
    elif mac.kind == "adder_ladder":
        n, m = mac.params
        check_adder_args(int(n), int(m))
        body = adder_ladder_gates(int(n), qs)
    elif mac.kind == "stateprep":
        body = stateprep_gates(mac.params, qs)
    else:  # pragma: no cover - Macro validates kinds
        from ..errors import UnknownMacro

        raise UnknownMacro(mac.kind)
    if mac.controls:
        body = [op.with_controls(mac.controls) for op in body]
    return body
