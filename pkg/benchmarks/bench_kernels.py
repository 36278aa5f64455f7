"""Time the numpy and Cython kernel backends on identical inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json out.json]
"""

import argparse
import importlib
import json
import sys
import timeit

import numpy as np

from qubitizer import _backend
from qubitizer.circuit import lower
from qubitizer.constants import JACOBI_TOL
from qubitizer.structured import build, spec_from_dict


def _cases(rng):
    for nq in (6, 8, 10):
        dim = 2**nq
        mat = np.eye(dim, dtype=complex)
        u = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))[0]
        tmask, cmask = 1 << (nq - 1), 0b11
        yield f"apply_1q {nq}q", lambda k, m=mat, u=u, t=tmask, c=cmask: k.apply_1q(m, u, t, c, c)
        yield f"apply_swap {nq}q", lambda k, m=mat, t=tmask, c=cmask: k.apply_swap(m, t, 1 << 2, c, 0)
    for dim in (16, 32, 64):
        h = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        h = (h + h.conj().T) / 2
        yield f"jacobi {dim}x{dim}", lambda k, h=h: k.jacobi_eigh(h.copy(), JACOBI_TOL, 100)


def _lowering(kernels):
    """Lower an 8-qubit permutation oracle end to end with the given kernels."""
    lw = importlib.import_module("qubitizer.circuit.lower")
    saved = lw.kernels
    lw.kernels = kernels
    try:
        res = build(spec_from_dict({"kind": "permutation_table", "table": [(5 * i + 3) % 16 for i in range(16)]}))
        lower(res.unitary)
    finally:
        lw.kernels = saved


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", help="write the timings to this file")
    args = ap.parse_args(argv)
    backends = _backend.available()
    if "cython" not in backends:
        print("compiled kernels not built; only the python backend is timed", file=sys.stderr)
    rng = np.random.default_rng(0)
    rows = []
    cases = list(_cases(rng)) + [("lower 8q circuit", _lowering)]
    for name, fn in cases:
        row = {"case": name}
        for bname, k in backends.items():
            number = 3
            best = min(timeit.repeat(lambda fn=fn, k=k: fn(k), number=number, repeat=args.repeat)) / number
            row[bname] = best
        rows.append(row)
    header = f"{'case':<18}" + "".join(f"{b:>12}" for b in backends) + ("    speedup" if len(backends) > 1 else "")
    print(header)
    for row in rows:
        line = f"{row['case']:<18}" + "".join(f"{row[b] * 1e3:>10.3f}ms" for b in backends)
        if "cython" in row:
            line += f"{row['python'] / row['cython']:>10.1f}x"
        print(line)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
