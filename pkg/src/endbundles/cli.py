"""Command-line front end.

Every invocation prints one JSON report::

    {"command": [...], "inputs_digest": "<sha256>", "outputs": {...}, "status": "ok"}

Exit codes: 0 ok, 1 usage error, 2 domain error, 3 tolerance failure, 4 IO error.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import bandop, bundle, fourier, oscillator, seqcalc
from .errors import EndBundleError, ToleranceExceeded

EXIT_OK, EXIT_USAGE, EXIT_IO = 0, 1, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, (seqcalc.CoinvClass, seqcalc.EPSeq, bandop.EPBandOp,
                      bandop.MonomialLoop, bundle.EndCocycle, oscillator.WindingReport)):
        return _jsonable(v.to_json())
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, np.ndarray):
        return _jsonable(v.tolist())
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.floating):
        return float(v)
    return v


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, separators=(",", ":"))


def make_report(argv: list[str], outputs: dict | None, error: EndBundleError | None = None) -> dict:
    digest = hashlib.sha256(json.dumps(list(argv)).encode()).hexdigest()
    rep = {"command": list(argv), "inputs_digest": digest, "outputs": outputs or {}}
    if error is None:
        rep["status"] = "ok"
    else:
        rep["status"] = {"error": error.code, "message": str(error)}
    return rep


def emit_report(report: dict, path: str | None, rows: list[dict] | None = None,
                csv_path: str | None = None) -> None:
    """Write the JSON report (and the residual table as CSV when requested)."""
    if path:
        Path(path).write_text(dumps(report) + "\n")
    if csv_path:
        rows = rows or []
        fields = sorted({k for r in rows for k in r})
        with open(csv_path, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=fields)
            w.writeheader()
            for r in rows:
                w.writerow({k: _jsonable(r.get(k, "")) for k in fields})


# command implementations; each returns (outputs, csv_rows)

def _grid(ns) -> oscillator.GridSpec:
    return oscillator.GridSpec(ns.xmax, ns.npoints)


def _read_spec(ns, attr: str) -> str:
    if ns.file:
        return Path(ns.file).read_text()
    val = getattr(ns, attr, None)
    if val is None:
        raise UsageError(f"--{attr} or --file is required")
    return val


def _cocycle(ns) -> bundle.EndCocycle:
    if ns.file:
        return bundle.EndCocycle.from_json(json.loads(Path(ns.file).read_text()))
    if getattr(ns, "exp", None):
        return bundle.completed_sum_sphere(bandop.parse_exponents(ns.exp))
    return bundle.pushforward_universal_cover()


def _functional(ns) -> seqcalc.Functional:
    return seqcalc.Functional.parse(ns.functional)


def cmd_seq(ns):
    seq = seqcalc.parse_seq(_read_spec(ns, "seq"))
    if ns.action == "class":
        cls = seqcalc.coinv_class(seq)
        return {"class": cls, "trivial": cls.is_zero()}, None
    if ns.action == "pair":
        cls = seqcalc.coinv_class(seq)
        return {"class": cls, "pair": seqcalc.pair(_functional(ns), cls)}, None
    w = seqcalc.certificate_trivial(seq)
    return {"witness": w, "delta_matches": seqcalc.delta(w) == seq}, None


def cmd_op(ns):
    op = bandop.parse_op(_read_spec(ns, "spec"))
    if ns.action == "index":
        return {"index": bandop.fredholm_index(op)}, None
    if ns.action == "prop":
        return {"propagation": bandop.propagation(op)}, None
    if ns.n is not None:
        return {"n": ns.n, "periodic": bandop.is_periodic(op, ns.n)}, None
    n = bandop.minimal_period(op)
    return {"periodic": n is not None, "n": n}, None


def cmd_bundle(ns):
    a = ns.action
    if a == "esum":
        c = bundle.completed_sum_sphere(bandop.parse_exponents(ns.exp or "const:0"))
    elif a == "pushforward":
        c = bundle.pushforward_universal_cover()
    elif a == "pullback":
        c = bundle.pullback_circle(_cocycle(ns), ns.d)
    else:
        c = _cocycle(ns)
    out = {"cocycle_check": bundle.cocycle_check(c, ns.samples)}
    f = _functional(ns) if ns.functional else None
    if a == "alpha1":
        out["alpha1"] = bundle.alpha1(c, f or seqcalc.HALF_HALF_DUAL)
        out["shift_power_flag"] = bundle.shift_power_flag(c)
    elif a == "beta1":
        out["beta1"] = bundle.beta1(c)
    elif a == "hat":
        if c.base is bundle.BaseComplex.CIRCLE:
            out["hat_beta1"] = bundle.hat_beta1(c)
        else:
            out["hat_alpha1"] = bundle.hat_alpha1(c)
    else:
        out.update(bundle.invariants(c, f))
    out["cocycle"] = c
    return out, None


def cmd_fourier(ns):
    if ns.action == "l1":
        c = fourier.l1_bundle()
        rows = []
        for w in fourier.overlap_samples(ns.samples, ns.seed):
            rows.append({"t": fourier.branch(1, w), "branch1": fourier.branch(1, w),
                         "branch2": fourier.branch(2, w), "k": fourier.branch_difference(w),
                         "component": fourier.overlap_component(w)})
        out = {"beta1": bundle.beta1(c), "cocycle_check": bundle.cocycle_check(c, 64),
               "periodic_end": bundle.periodic_end_check(c),
               "components": {n: {"k": int(fourier.branch_difference(
                   fourier.point(sum(iv) / 2))), "printed_label": fourier.PRINTED_LABELS[n]}
                   for n, iv in fourier.COMPONENTS.items()},
               "branch_differences_integral": all(
                   abs(r["branch2"] - r["branch1"] - r["k"]) < 1e-12 for r in rows)}
        return out, rows
    if ns.action == "torus":
        c = fourier.l2_torus_bundle()
        out = {"cocycle_check": bundle.cocycle_check(c, ns.samples), "cocycle": c}
        try:
            bundle.alpha1(c, seqcalc.PERIODIC_DUAL)
        except EndBundleError as e:
            out["invariants"] = e.code
        return out, None
    rows = []
    for w in fourier.overlap_samples(ns.samples, ns.seed):
        num = fourier.transition_numeric(w, ns.modes, ns.points)
        exact = fourier.transition_exact(w).dense(-ns.modes, ns.modes + 1)
        rows.append({"t": fourier.branch(1, w), "component": fourier.overlap_component(w),
                     "max_deviation": float(np.abs(num - exact).max())})
    worst = max(r["max_deviation"] for r in rows)
    if worst > ns.tol:
        raise ToleranceExceeded(f"transition deviation {worst:.2e} > {ns.tol:g}")
    return {"max_deviation": worst, "samples": len(rows)}, rows


def cmd_osc(ns):
    g = _grid(ns)
    a = ns.action
    if a == "verify1d":
        rows, out = [], {}
        for val in ns.a:
            rep = oscillator.verify_identities_1d(val, ns.samples, ns.tol, g, ns.seed,
                                                  raise_on_fail=False)
            out[str(val)] = rep.residuals
            rows += rep.rows
            if not rep.ok:
                rep.raise_if_failed()
        return {"residuals": out}, rows
    if a == "verify2d":
        rng = np.random.default_rng(ns.seed)
        rows, worst = [], dict.fromkeys(oscillator.IDENTITIES_2D, 0.0)
        for j, U in enumerate(oscillator.random_sphere_points(ns.points, rng)):
            rep = oscillator.verify_identities_2d(U, ns.samples, ns.tol, g, ns.seed + j,
                                                  raise_on_fail=False)
            for r in rep.rows:
                rows.append({"point": j, **r})
            for k, v in rep.residuals.items():
                worst[k] = max(worst[k], v)
            rep.raise_if_failed()
        return {"residuals": worst}, rows
    if a == "frame":
        z = complex(ns.z)
        U = oscillator.u_point(z, ns.hemisphere)
        fr = oscillator.frame(U, ns.hemisphere, ns.K, ns.ordering, g)
        return {"U": U, **fr.report()}, None
    if ns.ordering == "interleaved":
        exps, rep = oscillator.interleaved_exponents(ns.K, ns.M, g)
        cls = seqcalc.coinv_class(exps)
        return {"ordering": "interleaved", "windings": rep, "class": cls,
                "witness": seqcalc.certificate_trivial(exps) if cls.is_zero() else None}, None
    c, rep = oscillator.oscillator_bundle(ns.K, ns.M, g)
    f = _functional(ns) if ns.functional else seqcalc.HALF_HALF_DUAL
    rep["alpha1"] = bundle.alpha1(c, f)
    rep["periodic_end"] = bundle.periodic_end_check(c)
    rep["cocycle_check"] = bundle.cocycle_check(c, 64)
    return rep, None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="also write the report to PATH")
    common.add_argument("--csv", metavar="PATH", help="write the residual/sample table to PATH")
    common.add_argument("--xmax", type=float, default=12.0)
    common.add_argument("--npoints", type=int, default=6144)
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--file", metavar="PATH", help="read the spec or cocycle JSON from PATH")
    common.add_argument("--functional", help="c_minus,c_plus, e.g. 1/2,-1/2")

    p = _Parser(prog="endbundles", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="group", required=True)

    s = sub.add_parser("seq", parents=[common])
    s.add_argument("action", choices=["class", "pair", "witness"])
    s.add_argument("--seq", help="sequence JSON or shorthand (const:c, delta:m, step:m, ...)")

    o = sub.add_parser("op", parents=[common])
    o.add_argument("action", choices=["index", "prop", "periodic"])
    o.add_argument("--spec", help="identity, shift:k, diag:<seq> or operator JSON")
    o.add_argument("--n", type=int)

    b = sub.add_parser("bundle", parents=[common])
    b.add_argument("action", choices=["esum", "pushforward", "pullback", "alpha1", "beta1", "hat"])
    b.add_argument("--exp", help="linear:slope[,intercept] or a sequence spec")
    b.add_argument("--d", type=int, default=1)

    f = sub.add_parser("fourier", parents=[common])
    f.add_argument("action", choices=["l1", "torus", "verify"])
    f.add_argument("--modes", type=int, default=64)
    f.add_argument("--points", type=int, default=1024)

    c = sub.add_parser("osc", parents=[common])
    c.add_argument("action", choices=["verify1d", "verify2d", "frame", "bundle"])
    c.add_argument("--a", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    c.add_argument("--points", type=int, default=20, help="random sphere points (verify2d)")
    c.add_argument("--K", type=int, default=6)
    c.add_argument("--M", type=int, default=64)
    c.add_argument("--z", default="0", help="disc coordinate, Python complex syntax")
    c.add_argument("--hemisphere", choices=["plus", "minus"], default="plus")
    c.add_argument("--ordering", choices=list(oscillator.ORDERINGS), default="split")
    return p


DEFAULTS = {"seq": (None, 64), "op": (None, 64), "bundle": (None, 64),
            "fourier": (1e-10, 16), "osc": (1e-5, 20)}
COMMANDS = {"seq": cmd_seq, "op": cmd_op, "bundle": cmd_bundle,
            "fourier": cmd_fourier, "osc": cmd_osc}


def run(argv: list[str] | None = None, stdout=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    try:
        ns = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    tol, samples = DEFAULTS[ns.group]
    ns.tol = tol if ns.tol is None else ns.tol
    ns.samples = samples if ns.samples is None else ns.samples
    if ns.group == "fourier" and ns.action == "l1" and "--samples" not in argv:
        ns.samples = 1024
    rows, code = None, EXIT_OK
    try:
        outputs, rows = COMMANDS[ns.group](ns)
        report = make_report(argv, outputs)
    except EndBundleError as e:
        report, code = make_report(argv, None, e), e.exit_code
    except (UsageError, ValueError, KeyError, json.JSONDecodeError) as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"io error: {e}", file=sys.stderr)
        return EXIT_IO
    print(dumps(report), file=stdout)
    try:
        emit_report(report, ns.json, rows, ns.csv)
    except OSError as e:
        print(f"io error: {e}", file=sys.stderr)
        return EXIT_IO
    return code


def main() -> None:
    sys.exit(run())
