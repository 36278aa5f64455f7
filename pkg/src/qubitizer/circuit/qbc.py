"""Text serialization (``.qbc``).

One gate per line::

    h  q0;
    rz(3.1415926535897931) +q2 q0;

Controls precede targets (``+`` positive, ``-`` negative polarity). Lines starting with
``#@`` are directives (width, registers, macros); other ``#`` lines are comments.
"""

from __future__ import annotations

import re

from ..errors import ParseError
from .ir import GATE_KINDS, MACRO_KINDS, PARAM_KINDS, Circuit, Gate, Macro

_LINE = re.compile(r"^([a-z_]+)(?:\(([^)]*)\))? (\S*) (\S+);$")


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _controls_text(controls) -> str:
    return ",".join(("+" if pol else "-") + f"q{q}" for q, pol in controls)


def _targets_text(qs) -> str:
    return ",".join(f"q{q}" for q in qs)


def _macro_params(mac: Macro) -> str:
    if mac.kind in ("qft", "iqft"):
        return ""
    if mac.kind == "stateprep":
        flat = []
        for a in mac.params:
            a = complex(a)
            flat += [_fmt(a.real), _fmt(a.imag)]
        return "(" + ",".join(flat) + ")"
    return "(" + ",".join(str(int(v)) for v in mac.params) + ")"


def export_text(c: Circuit, keep_macros: bool = False) -> str:
    lines = [f"#@qubits {c.num_qubits};"]
    for name, (lo, hi) in sorted(c.registers.items(), key=lambda kv: kv[1]):
        lines.append(f"#@register {name} {lo} {hi};")
    for op in c.ops:
        if isinstance(op, Macro):
            if not keep_macros:
                raise ValueError("circuit contains macros; expand them or pass keep_macros=True")
            lines.append(
                f"#@{op.kind}{_macro_params(op)} {_controls_text(op.controls)} {_targets_text(op.qubits)};"
            )
            continue
        param = f"({_fmt(op.theta)})" if op.theta is not None else ""
        lines.append(f"{op.kind}{param} {_controls_text(op.controls)} {_targets_text(op.targets)};")
    return "\n".join(lines) + "\n"


def _qubit(tok: str, lineno: int) -> int:
    if not tok.startswith("q") or not tok[1:].isdigit():
        raise ParseError(f"line {lineno}: bad qubit {tok!r}")
    return int(tok[1:])


def _parse_controls(text: str, lineno: int):
    if not text:
        return ()
    out = []
    for tok in text.split(","):
        if tok[:1] not in "+-" or not tok[1:]:
            raise ParseError(f"line {lineno}: bad control {tok!r}")
        out.append((_qubit(tok[1:], lineno), tok[0] == "+"))
    return tuple(out)


def parse_text(text: str) -> Circuit:
    num_qubits = None
    registers = {}
    ops = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        macro = False
        if line.startswith("#@"):
            body = line[2:]
            if body.startswith("qubits "):
                num_qubits = int(body[len("qubits ") :].rstrip(";"))
                continue
            if body.startswith("register "):
                _, name, lo, hi = body.rstrip(";").split()
                registers[name] = (int(lo), int(hi))
                continue
            line = body
            macro = True
        elif line.startswith("#"):
            continue
        match = _LINE.match(line)
        if not match:
            raise ParseError(f"line {lineno}: cannot parse {raw!r}")
        kind, param, ctrl_txt, tgt_txt = match.groups()
        controls = _parse_controls(ctrl_txt, lineno)
        targets = tuple(_qubit(t, lineno) for t in tgt_txt.split(","))
        try:
            if macro:
                if kind not in MACRO_KINDS:
                    raise ParseError(f"line {lineno}: unknown macro {kind!r}")
                params: tuple = ()
                if kind == "stateprep":
                    vals = [float(v) for v in param.split(",")]
                    params = tuple(complex(vals[i], vals[i + 1]) for i in range(0, len(vals), 2))
                elif param:
                    params = tuple(int(v) for v in param.split(","))
                ops.append(Macro(kind, targets, params, controls))
            else:
                if kind not in GATE_KINDS:
                    raise ParseError(f"line {lineno}: unknown gate {kind!r}")
                theta = float(param) if kind in PARAM_KINDS else None
                ops.append(Gate(kind, targets, controls, theta))
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: {exc}") from None
    if num_qubits is None:
        used = [q for op in ops for q in (op.qubits if isinstance(op, Gate) else op.all_qubits)]
        num_qubits = max(used) + 1 if used else 0
    return Circuit(num_qubits, tuple(ops), registers)


def write_qbc(c: Circuit, path, keep_macros: bool = False) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(export_text(c, keep_macros=keep_macros))


def read_qbc(path) -> Circuit:
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read())
