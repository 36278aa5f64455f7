"""Declarative structured-matrix specs and their JSON form.

Example::

    {"kind": "circulant", "m": 16, "n": 3, "weight": [1.0, 0.0], "variant": "recursive"}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from ..errors import InvalidSpec

KINDS = (
    "toeplitz_diag",
    "circulant",
    "circulant_adder",
    "hankel_antidiag",
    "anticirculant",
    "corner_embed",
    "circular_permutation",
    "permutation_table",
    "density_matrix",
    "outer_product",
    "line_column",
    "grid",
    "terms",
)

DEFAULT_VARIANT = {
    "circulant": "recursive",
    "circulant_adder": "adder",
    "anticirculant": "sum",
}


def parse_complex(value) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise InvalidSpec(f"complex value must be [re, im], got {value!r}")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str):
        return complex(value.replace(" ", ""))
    return complex(value)


def complex_to_json(c: complex) -> list[float]:
    c = complex(c)
    return [c.real, c.imag]


def parse_state(values) -> list[complex]:
    return [parse_complex(v) for v in values]


@dataclass(frozen=True)
class StructuredSpec:
    kind: str
    m: int | None = None
    n: int | None = None
    weight: complex = 1.0
    s: int | None = None
    variant: str | None = None
    extra: dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidSpec(f"unknown kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        object.__setattr__(self, "weight", parse_complex(self.weight))
        if self.variant is None and self.kind in DEFAULT_VARIANT:
            object.__setattr__(self, "variant", DEFAULT_VARIANT[self.kind])

    @property
    def big_m(self) -> int:
        if self.m is None or self.m < 1 or self.m & (self.m - 1):
            raise InvalidSpec(f"m = {self.m!r} is not a power of two")
        return self.m.bit_length() - 1

    def require(self, *names: str) -> None:
        for name in names:
            if name in ("m", "n", "s"):
                if getattr(self, name) is None:
                    raise InvalidSpec(f"{self.kind} needs '{name}'")
            elif name not in self.extra:
                raise InvalidSpec(f"{self.kind} needs '{name}'")

    def to_json(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind}
        for key in ("m", "n", "s", "variant"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        out["weight"] = complex_to_json(self.weight)
        out.update(self.extra)
        return out


_CORE = {"kind", "m", "n", "weight", "s", "variant"}


def spec_from_dict(d: dict) -> StructuredSpec:
    if not isinstance(d, dict) or "kind" not in d:
        raise InvalidSpec("spec must be an object with a 'kind'")
    extra = {k: v for k, v in d.items() if k not in _CORE}
    try:
        return StructuredSpec(
            kind=d["kind"],
            m=int(d["m"]) if d.get("m") is not None else None,
            n=int(d["n"]) if d.get("n") is not None else None,
            weight=d.get("weight", 1.0),
            s=int(d["s"]) if d.get("s") is not None else None,
            variant=d.get("variant"),
            extra=extra,
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidSpec):
            raise
        raise InvalidSpec(str(exc)) from None


def load_spec(path) -> StructuredSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidSpec(f"cannot read spec {path}: {exc}") from None
    return spec_from_dict(data)
