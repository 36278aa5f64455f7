"""Circuit IR, dense lowering and the ``.qbc`` text format."""

from .ir import (
    Circuit,
    Gate,
    Macro,
    circuit,
    cx,
    gphase,
    h,
    p,
    ry,
    rz,
    s,
    swap,
    x,
    y,
    z,
)
from .lower import (
    ResourceReport,
    apply_circuit,
    conjugate,
    count_resources,
    expand_macros,
    inverse,
    lower,
)
from .qbc import export_text, parse_text, read_qbc, write_qbc

__all__ = [
    "Circuit",
    "Gate",
    "Macro",
    "ResourceReport",
    "apply_circuit",
    "circuit",
    "conjugate",
    "count_resources",
    "cx",
    "expand_macros",
    "export_text",
    "gphase",
    "h",
    "inverse",
    "lower",
    "p",
    "parse_text",
    "read_qbc",
    "ry",
    "rz",
    "s",
    "swap",
    "write_qbc",
    "x",
    "y",
    "z",
]
