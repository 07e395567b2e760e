"""Command-line entry point: ``zdg analyze | matrix | verify``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from .graph import DEFAULT_DENSE_CAP, Convention, SizeCapError, build_adjacency, export
from .report import Options, analyze_modulus, has_mismatch, summarize, sweep_moduli
from .wiener import StructureViolationError
from .zmod import EmptyGraphError, InvalidModulusError, class_partition, factorize

EXIT_OK, EXIT_ERROR, EXIT_MISMATCH = 0, 1, 2


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), allow_nan=False)


def _options(args) -> Options:
    return Options(
        convention=Convention(args.loops),
        tol=args.tol,
        quartic_tol=args.quartic_tol,
        dense_cap=args.dense_cap,
        timings=not args.no_timings,
    )


def render_text(rec: dict) -> str:
    lines = [
        f"Z_{rec['n']}  form={rec['form']}  factors={rec['factors']}  "
        f"convention={rec['convention']}",
        f"vertices: {rec['vertices']}",
        "classes: "
        + ", ".join(
            f"d={c['divisor']} size={c['size']}{' looped' if c['looped'] else ''}"
            for c in rec["classes"]
        ),
        f"block form: {rec['block_form']}",
    ]
    s = rec["spectrum"]
    lines.append(
        "nonzero eigenvalues: " + ", ".join(f"{x:.12g}" for x in s["nonzero"])
    )
    lines.append(f"zero multiplicity: {s['zero_multiplicity']}")
    lines.append(f"energy: {s['energy']:.12g}")
    if rec["dense_check"] is not None:
        d = rec["dense_check"]
        lines.append(
            f"dense cross-check: max diff {d['max_abs_diff']}, "
            f"trace residual {d['trace_residual']}, frobenius residual {d['frobenius_residual']}"
        )
    if rec["wiener"] is not None:
        w = rec["wiener"]
        lines.append(f"wiener (BFS): {w['brute_force']}  diameter: {w['diameter']}")
    for c in rec["closed_forms"]:
        lines.append(f"  {c['formula_id']:<18} {c['verdict']:<9} value={c['value']}")
    if "timings_ms" in rec:
        lines.append(
            "timings (ms): " + ", ".join(f"{k}={v}" for k, v in rec["timings_ms"].items())
        )
    return "\n".join(lines) + "\n"


def _reject(n: int, exc: Exception) -> int:
    if isinstance(exc, EmptyGraphError) or n == 1:
        print(f"Z_{n}: no zero divisors", file=sys.stderr)
    else:
        print(f"zdg: {exc}", file=sys.stderr)
    return EXIT_ERROR


def cmd_analyze(args) -> int:
    try:
        rec = analyze_modulus(args.n, _options(args))
    except (EmptyGraphError, InvalidModulusError) as exc:
        return _reject(args.n, exc)
    if args.format == "json":
        sys.stdout.write(_dumps(rec) + "\n")
    else:
        sys.stdout.write(render_text(rec))
    return EXIT_MISMATCH if has_mismatch(rec) else EXIT_OK


def cmd_matrix(args) -> int:
    try:
        cs = class_partition(factorize(args.n))
        A = build_adjacency(cs, Convention(args.loops), args.dense_cap)
    except (EmptyGraphError, InvalidModulusError) as exc:
        return _reject(args.n, exc)
    except SizeCapError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.buffer.write(export(A, args.format))
    sys.stdout.flush()
    return EXIT_OK


def cmd_verify(args) -> int:
    ns = sweep_moduli(args.form, args.p_max, args.q_max, args.n_cap)
    work = partial(analyze_modulus, opts=_options(args))
    out = open(args.output, "w") if args.output else sys.stdout
    records = []
    try:
        if args.jobs > 1 and len(ns) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = pool.map(work, ns)  # yields in submission order
                for rec in results:
                    records.append(rec)
                    out.write(_dumps(rec) + "\n")
                    out.flush()
        else:
            for n in ns:
                rec = work(n)
                records.append(rec)
                out.write(_dumps(rec) + "\n")
                out.flush()
        out.write(_dumps(summarize(records)) + "\n")
    except StructureViolationError as exc:
        print(f"zdg verify: aborted: {exc}", file=sys.stderr)
        return EXIT_ERROR
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK if all(r["structural_ok"] for r in records) else EXIT_ERROR


def _jobs_default() -> int:
    raw = os.environ.get("ZDG_JOBS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--loops", choices=["paper", "simple"], default="paper",
                        help="diagonal convention (default: paper)")
    common.add_argument("--dense-cap", type=_positive, default=DEFAULT_DENSE_CAP,
                        help="largest vertex count for dense matrices")

    checks = argparse.ArgumentParser(add_help=False)
    checks.add_argument("--tol", type=float, default=1e-9,
                        help="tolerance for closed-form eigenvalue/energy checks")
    checks.add_argument("--quartic-tol", type=float, default=1e-6,
                        help="relative residual tolerance for the p^2 q quartic")
    checks.add_argument("--no-timings", action="store_true",
                        help="omit per-stage timings (byte-stable output)")

    parser = argparse.ArgumentParser(
        prog="zdg", description="Zero-divisor graphs of Z_n: spectra, energy, Wiener index."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", parents=[common, checks], help="full report for one modulus")
    pa.add_argument("n", type=int)
    pa.add_argument("--format", choices=["text", "json"], default="text")
    pa.set_defaults(func=cmd_analyze)

    pm = sub.add_parser("matrix", parents=[common], help="export the adjacency matrix")
    pm.add_argument("n", type=int)
    pm.add_argument("--format", choices=["csv", "dot"], default="csv")
    pm.set_defaults(func=cmd_matrix)

    pv = sub.add_parser("verify", parents=[common, checks], help="sweep a family of moduli")
    pv.add_argument("--form", choices=["p3", "p2q", "general"], required=True)
    pv.add_argument("--p-max", type=_positive, required=True)
    pv.add_argument("--q-max", type=_positive, default=None)
    pv.add_argument("--n-cap", type=_positive, default=None)
    pv.add_argument("--jobs", type=_positive, default=_jobs_default())
    pv.add_argument("--output", default=None, help="write JSON-lines here instead of stdout")
    pv.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
