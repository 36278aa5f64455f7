"""Batch command-line front end: ``qubitizer {build,verify,count,bounds}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import densemath as dm
from .bounds import ShotPlan, monte_carlo_check, trotter_bound, variance_bound
from .circuit.lower import count_resources, lower
from .circuit.qbc import read_qbc, write_qbc
from .constants import DEFAULT_SEED, MAX_LOWER_QUBITS, default_tolerance
from .errors import QubitizerError, VerificationFailed
from .structured import build, dense_oracle, load_spec
from .structured.build import predicted_count, summand_count, table_one_count
from .structured.counting import fusc
from .structured.gram import projector_evolution
from .structured.spec import StructuredSpec, parse_state
from .synth.adders import adder_qft
from .synth.evolution import TrotterPlan, trotter
from .synth.lcu import block_encode, qubitize, walk_cosines
from .synth.measure import MeasurementProgram, measurement_program
from .synth.reducer import QUBITIZED, reducer_from_string

EXIT_OK, EXIT_FAILED, EXIT_SPEC = 0, 1, 2
QUERIES = ("hs", "be", "measure", "walk")


class SpecError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", type=Path)
    common.add_argument("--query", choices=QUERIES, default="be")
    common.add_argument("--t", type=float, default=0.1)
    common.add_argument("--steps", type=int, default=1)
    common.add_argument("--order", type=int, choices=(1, 2), default=1)
    common.add_argument("--variant")
    common.add_argument("--tol", type=float)
    common.add_argument("--shots", type=int)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--out", type=Path)
    common.add_argument("--report", type=Path)
    common.add_argument("--sweep", type=int)
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="qubitizer", description=__doc__)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="write a circuit and a JSON report")
    sub.add_parser("verify", parents=[common], help="compare against the dense oracle")
    sub.add_parser("count", parents=[common], help="summand counts vs closed forms")
    sub.add_parser("bounds", parents=[common], help="variance and Trotter bounds")
    return ap


def _tolerance(args) -> float:
    tol = default_tolerance() if args.tol is None else args.tol
    if not tol >= np.finfo(float).eps:
        raise SpecError(f"tolerance {tol!r} is below machine epsilon")
    return tol


def _spec(args) -> StructuredSpec:
    if args.spec is None:
        raise SpecError("--spec is required")
    spec = load_spec(args.spec)
    if args.variant:
        d = spec.to_json()
        d["variant"] = args.variant
        from .structured.spec import spec_from_dict

        spec = spec_from_dict(d)
    return spec


def _emit(obj: dict, path: Path | None) -> None:
    text = json.dumps(obj, indent=2, default=_json_default)
    if path is None:
        print(text)
    else:
        path.write_text(text + "\n")


def _json_default(o):
    if isinstance(o, complex):
        return [o.real, o.imag]
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(type(o).__name__)


# --------------------------------------------------------------------------- queries


def _synthesize(spec: StructuredSpec, args):
    """Circuit(s) for the requested query plus report fields."""
    res = build(spec)
    info: dict = {"kind": spec.kind, "variant": spec.variant, "query": args.query}
    if res.lch is not None:
        info["terms"] = [t.to_text() for t in res.lch.terms]
    if args.query == "hs":
        if res.lch is not None:
            plan = TrotterPlan(args.t, args.steps, args.order)
            return res, {"main": trotter(res.lch, plan)}, info
        if spec.kind == "density_matrix":
            return res, {"main": projector_evolution(parse_state(spec.extra["psi"]), args.t)}, info
        raise SpecError(f"{spec.kind} has no Hermitian decomposition for simulation")
    if args.query == "measure":
        if res.lch is None:
            raise SpecError(f"{spec.kind} has no Hermitian decomposition to measure")
        circuits = {}
        for i, (term, prog) in enumerate(_programs(res.lch)):
            if prog is not None:
                circuits[f"term{i}"] = prog.circuit
        if not circuits:
            raise SpecError("no qubitized terms to measure")
        return res, circuits, info
    if res.lcu is None and res.lch is None:
        circ = res.unitary
        info["subnormalization"] = 1.0
        if args.query == "walk":
            raise SpecError(f"{spec.kind} is encoded directly; no walk operator")
        return res, {"main": circ}, info
    be = block_encode(res.unitary_combination(), check=_small(res))
    info["subnormalization"] = be.subnormalization
    info["ancilla_qubits"] = be.n_ancilla
    info["all_reflections"] = be.all_reflections
    info["lcu_terms"] = len(be.lcu)
    if args.query == "be":
        return res, {"main": be.circuit}, info
    return res, {"main": qubitize(be, check=_small(res)), "be": be}, info


def _small(res) -> bool:
    return res.spec.big_m <= MAX_LOWER_QUBITS if res.spec.m else True


def _programs(lch):
    """Measurement program per term; frames are undone before the reducer."""
    out = []
    for term in lch.terms:
        r = reducer_from_string(term.string)
        if r.kind != QUBITIZED:
            out.append((term, None))
            continue
        prog = measurement_program(r)
        if term.frame is not None:
            prog = MeasurementProgram(term.frame + prog.circuit, prog.mode, r, prog.pre_gate)
        out.append((term, prog))
    return out


def _write_circuits(circuits: dict, out: Path | None) -> list[str]:
    if out is None:
        return []
    written = []
    for name, circ in circuits.items():
        if not hasattr(circ, "ops"):
            continue
        path = out if name == "main" else out.with_suffix(f".{name}.qbc")
        write_qbc(circ, path, keep_macros=True)
        read_qbc(path)  # round-trip guard
        written.append(str(path))
    return written


def cmd_build(args) -> int:
    spec = _spec(args)
    _, circuits, info = _synthesize(spec, args)
    info["circuits"] = _write_circuits(circuits, args.out)
    info["resources"] = {
        name: count_resources(c).to_dict() for name, c in circuits.items() if hasattr(c, "ops")
    }
    _emit(info, args.report)
    return EXIT_OK


# --------------------------------------------------------------------------- verify


def cmd_verify(args) -> int:
    tol = _tolerance(args)
    spec = _spec(args)
    res, circuits, info = _synthesize(spec, args)
    width = max(c.num_qubits for c in circuits.values() if hasattr(c, "ops"))
    if width > MAX_LOWER_QUBITS:
        raise SpecError(f"{width} qubits exceed the {MAX_LOWER_QUBITS}-qubit verification budget")
    target = dense_oracle(spec)
    checks = {"decomposition": dm.max_abs_diff(res.matrix(), target)}
    allowed = {"decomposition": tol}
    rng = np.random.default_rng(args.seed)

    if args.query == "hs":
        got = lower(circuits["main"])
        exact = dm.expm_hermitian(target, args.t)
        checks["evolution"] = dm.spectral_norm(got - exact)
        slack = tol
        if res.lch is not None and len(res.lch) > 1:
            tb = trotter_bound(res.lch, nested=False)
            slack = args.t**2 / args.steps * tb.bound + 1e-8
            info["trotter_bound"] = tb.bound
        allowed["evolution"] = slack
    elif args.query == "measure":
        psi = dm.random_state(target.shape[0], rng)
        worst = 0.0
        for term, prog in _programs(res.lch):
            if prog is None:
                continue
            mean, _ = prog.expectation(psi)
            ref = np.vdot(psi, term.materialize() @ psi).real / complex(_weight(term)).real
            worst = max(worst, abs(mean - ref))
        checks["expectation"] = worst
        allowed["expectation"] = tol
    elif "be" in circuits or args.query == "be":
        be = circuits.get("be")
        if be is None and res.lcu is None and res.lch is None:
            checks["unitary"] = dm.max_abs_diff(res.matrix(), target)
            allowed["unitary"] = tol
        else:
            be = be or block_encode(res.unitary_combination())
            checks["block"] = dm.max_abs_diff(be.block(), target / be.subnormalization)
            allowed["block"] = tol
            if be.all_reflections:
                sm = lower(be.circuit)
                checks["reflection"] = dm.max_abs_diff(sm @ sm, np.eye(sm.shape[0]))
                allowed["reflection"] = tol
            if args.query == "walk":
                cos = walk_cosines(be, circuits["main"])
                checks["walk_cosines"] = max(abs(a - b) for a, b, _ in cos)
                allowed["walk_cosines"] = max(tol, 1e-8)
    info["checks"] = {k: {"deviation": v, "allowed": allowed[k], "ok": v <= allowed[k]} for k, v in checks.items()}
    worst = max(checks, key=lambda k: checks[k] / allowed[k])
    info["worst"] = {"check": worst, "deviation": checks[worst]}
    info["passed"] = all(v <= allowed[k] for k, v in checks.items())
    _emit(info, args.report)
    if not info["passed"]:
        raise VerificationFailed(f"{worst} deviation {checks[worst]:.3e}", info["worst"])
    return EXIT_OK


def _weight(term):
    from .synth.reducer import term_weight

    return term_weight(term.string)


# --------------------------------------------------------------------------- count


def _count_row(spec: StructuredSpec) -> dict:
    row = {"kind": spec.kind, "variant": spec.variant, "n": spec.n, "m": spec.m}
    for rep in ("LCH", "LCU"):
        try:
            got = summand_count(spec, rep)
        except QubitizerError:
            got = None
        pred = predicted_count(spec, rep)
        row[rep] = {
            "measured": got,
            "predicted": pred,
            "table": table_one_count(spec, rep),
            "mismatch": pred is not None and got != pred,
        }
    return row


def _sweep_specs(args):
    base = _spec(args) if args.spec else StructuredSpec("toeplitz_diag", 2, 1)
    for n in range(1, args.sweep + 1):
        m = base.m if args.spec is not None and base.m and base.m > n else 2 ** n.bit_length()
        d = base.to_json()
        d.update(n=n, m=m)
        from .structured.spec import spec_from_dict

        yield spec_from_dict(d)


def cmd_count(args) -> int:
    if args.sweep is None:
        rows = [_count_row(_spec(args))]
    else:
        if args.sweep < 1:
            raise SpecError("--sweep must be positive")
        rows = [_count_row(s) for s in _sweep_specs(args)]
    adders = []
    for big_m in range(1, 6):
        rep = count_resources(adder_qft(1, 2**big_m), keep_qft=True)
        adders.append({"M": big_m, "phase_gates": rep.gates.get("p", 0)})
    out = {
        "rows": rows,
        "mismatches": sum(r["LCH"]["mismatch"] or r["LCU"]["mismatch"] for r in rows),
        "adder_qft": adders,
    }
    if args.out is not None and args.out.suffix == ".csv":
        lines = ["kind,variant,n,m,lch,lch_predicted,lcu,lcu_predicted,fusc_n"]
        for r in rows:
            lines.append(
                f"{r['kind']},{r['variant'] or ''},{r['n']},{r['m']},"
                f"{r['LCH']['measured']},{r['LCH']['predicted']},"
                f"{r['LCU']['measured']},{r['LCU']['predicted']},{fusc(r['n']) if r['n'] else ''}"
            )
        args.out.write_text("\n".join(lines) + "\n")
    _emit(out, args.report)
    return EXIT_OK


# --------------------------------------------------------------------------- bounds


def cmd_bounds(args) -> int:
    spec = _spec(args)
    res = build(spec)
    if res.lch is None:
        raise SpecError(f"{spec.kind} has no Hermitian decomposition")
    lch = res.lch
    rng = np.random.default_rng(args.seed)
    psi = spec.extra.get("state")
    psi = parse_state(psi) if psi is not None else dm.random_state(2**lch.n_qubits, rng)
    groups = spec.extra.get("groups")
    plan = ShotPlan(tuple(tuple(g) for g in groups), args.shots or 0) if groups else None
    report = variance_bound(lch, plan, psi)
    if len(lch) >= 2:
        report.trotter = trotter_bound(lch)
    if args.shots:
        for i, (term, prog) in enumerate(_programs(lch)):
            if prog is None:
                continue
            mc = monte_carlo_check(prog, psi, args.shots, seed=args.seed + i)
            report.monte_carlo.append({"term": i, **mc.to_dict()})
    _emit(report.to_dict(), args.report)
    return EXIT_OK


COMMANDS = {"build": cmd_build, "verify": cmd_verify, "count": cmd_count, "bounds": cmd_bounds}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return COMMANDS[args.command](args)
    except VerificationFailed as e:
        print(json.dumps({"error": "VerificationFailed", "message": str(e), "worst": e.worst}, default=_json_default), file=sys.stderr)
        return EXIT_FAILED
    except (SpecError, QubitizerError, OSError, ValueError, KeyError) as e:
        print(json.dumps({"error": type(e).__name__, "message": str(e)}), file=sys.stderr)
        return EXIT_SPEC


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
