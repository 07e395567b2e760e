"""Per-modulus analysis records and verification sweeps.

A record is a plain dict with a fixed key order so that JSON output is
byte-stable. Formula ids name the printed result each check refers to.
"""

from __future__ import annotations

import math
import time
from contextlib import contextmanager
from dataclasses import dataclass

from .graph import (
    DEFAULT_DENSE_CAP,
    BlockSpec,
    Convention,
    build_adjacency,
    check_block_form,
)
from .spectra import (
    Mode,
    Spectrum,
    Variant,
    closed_eigenvalues_p3,
    dense_spectrum,
    energy_closed_p3,
    identity_residuals,
    quartic_p2q,
    quartic_residuals,
    spectrum,
)
from .wiener import wiener_report
from .zmod import FactoredModulus, PCubed, PSquaredQ, class_partition, factorize, is_prime

MATCH, MISMATCH = "Match", "Mismatch"

# formula ids whose mismatch is an expected, tallied erratum
ERRATA = frozenset({"thm4.3-statement", "thm5.2-printed"})
# spectral closed forms describe the looped matrix; without loops they are
# still evaluated and reported, but a mismatch is not a structural failure
LOOPED_ONLY = frozenset({"thm4.1", "thm4.2", "thm4.3-proof", "thm4.3-statement"})

REDUCTION_TOL = 1e-8
IDENTITY_TOL = 1e-8


def fmt(x: float) -> float:
    """Round to 12 significant digits for stable serialization."""
    return float(f"{x:.12g}")


def form_name(m: FactoredModulus) -> str:
    match m.form:
        case PCubed():
            return "p3"
        case PSquaredQ():
            return "p2q"
    return "general"


class _Timer:
    def __init__(self) -> None:
        self.ms: dict[str, float] = {}

    @contextmanager
    def stage(self, name: str):
        t0 = time.perf_counter()
        yield
        self.ms[name] = round((time.perf_counter() - t0) * 1000, 3)


def _verdict(ok: bool) -> str:
    return MATCH if ok else MISMATCH


def _closed_form_checks(
    m: FactoredModulus, spec: Spectrum, tol: float, quartic_tol: float
) -> list[dict]:
    checks: list[dict] = []
    match m.form:
        case PCubed(p):
            want = sorted(closed_eigenvalues_p3(p), reverse=True)
            got = list(spec.nonzero)
            if len(got) == 2:
                resid = max(abs(a - b) for a, b in zip(got, want))
            else:
                resid = math.inf
            ok = resid <= tol and spec.zero_multiplicity == p * p - 3
            checks.append(
                {
                    "formula_id": "thm4.1",
                    "value": [fmt(x) for x in want],
                    "residual": fmt(resid) if math.isfinite(resid) else None,
                    "verdict": _verdict(ok),
                }
            )
            e = energy_closed_p3(p)
            resid = abs(spec.energy - e)
            checks.append(
                {
                    "formula_id": "thm4.2",
                    "value": fmt(e),
                    "residual": fmt(resid),
                    "verdict": _verdict(resid <= tol),
                }
            )
        case PSquaredQ(p, q):
            for variant, fid in (
                (Variant.PROOF_DERIVATION, "thm4.3-proof"),
                (Variant.STATEMENT_AS_PRINTED, "thm4.3-statement"),
            ):
                coeffs = quartic_p2q(p, q, variant)
                res = quartic_residuals(coeffs, spec.nonzero)
                worst = max(res, default=0.0)
                ok = len(spec.nonzero) == 4 and worst <= quartic_tol
                checks.append(
                    {
                        "formula_id": fid,
                        "value": list(coeffs.as_tuple()),
                        "residual": fmt(worst),
                        "verdict": _verdict(ok),
                    }
                )
    return checks


def _spectrum_dict(spec: Spectrum) -> dict:
    return {
        "source": spec.source.value,
        "nonzero": [fmt(x) for x in spec.nonzero],
        "zero_multiplicity": spec.zero_multiplicity,
        "energy": fmt(spec.energy),
    }


@dataclass
class Options:
    convention: Convention = Convention.PAPER
    tol: float = 1e-9
    quartic_tol: float = 1e-6
    dense_cap: int = DEFAULT_DENSE_CAP
    timings: bool = True


def analyze_modulus(n: int, opts: Options | None = None) -> dict:
    """Full analysis record for Z_n.

    Raises ``EmptyGraphError`` when n is prime. The ``structural_ok`` flag
    covers everything except the known errata in ``ERRATA`` (and, under the
    simple convention, the spectral closed forms in ``LOOPED_ONLY``).
    """
    opts = opts or Options()
    timer = _Timer()
    with timer.stage("classes"):
        m = factorize(n)
        cs = class_partition(m)
    N = cs.total_vertices
    rec: dict = {
        "n": n,
        "form": form_name(m),
        "factors": [list(f) for f in m.factors],
        "convention": opts.convention.value,
        "vertices": N,
        "classes": [
            {"divisor": c.divisor, "size": c.size, "looped": c.looped} for c in cs.classes
        ],
    }
    failures: list[str] = []

    with timer.stage("reduced_spectrum"):
        reduced = spectrum(cs, opts.convention, Mode.CLASS_REDUCED)
    rec["spectrum"] = _spectrum_dict(reduced)

    dense_ok = N <= opts.dense_cap
    A = build_adjacency(cs, opts.convention, opts.dense_cap) if dense_ok else None
    if A is not None:
        with timer.stage("block_form"):
            spec_blocks = (
                BlockSpec.from_classes(cs) if rec["form"] == "general" else BlockSpec.for_form(m)
            )
            rec["block_form"] = check_block_form(A, spec_blocks)
        if not rec["block_form"]:
            failures.append("block_form")
        with timer.stage("dense_spectrum"):
            dense = dense_spectrum(A)
        tr, fr = identity_residuals(A, dense)
        if len(dense.nonzero) == len(reduced.nonzero):
            diff = max(
                (abs(a - b) for a, b in zip(dense.nonzero, reduced.nonzero)), default=0.0
            )
        else:
            diff = math.inf
        rec["dense_check"] = {
            **_spectrum_dict(dense),
            "max_abs_diff": fmt(diff) if math.isfinite(diff) else None,
            "trace_residual": fmt(tr),
            "frobenius_residual": fmt(fr),
        }
        if not diff <= REDUCTION_TOL:
            failures.append("reduction")
        if tr > IDENTITY_TOL * N:
            failures.append("trace_identity")
        if fr > IDENTITY_TOL * N * N:
            failures.append("frobenius_identity")
        reference = dense
    else:
        rec["block_form"] = None
        rec["dense_check"] = None
        reference = reduced

    checks = _closed_form_checks(m, reference, opts.tol, opts.quartic_tol)

    if A is not None:
        with timer.stage("wiener"):
            wr = wiener_report(cs, A)
        rec["wiener"] = {
            "brute_force": wr.brute_force,
            "unreachable_pairs": wr.unreachable_pairs,
            "diameter": wr.diameter,
            "class_table": [
                [d, e, dist] for (d, e), dist in wr.class_distance_table.items()
            ],
        }
        for fc in wr.closed_forms:
            checks.append(
                {
                    "formula_id": fc.formula_id,
                    "value": fc.value,
                    "residual": None if fc.value is None else fc.value - wr.brute_force,
                    "verdict": _verdict(fc.matched),
                }
            )
    else:
        rec["wiener"] = None

    rec["closed_forms"] = checks
    exempt = ERRATA | (LOOPED_ONLY if opts.convention is Convention.SIMPLE else frozenset())
    for c in checks:
        if c["verdict"] == MISMATCH and c["formula_id"] not in exempt:
            failures.append(c["formula_id"])
    rec["structural_failures"] = failures
    rec["structural_ok"] = not failures
    if opts.timings:
        rec["timings_ms"] = timer.ms
    return rec


def has_mismatch(rec: dict) -> bool:
    return any(c["verdict"] == MISMATCH for c in rec["closed_forms"])


def sweep_moduli(
    form: str, p_max: int, q_max: int | None = None, n_cap: int | None = None
) -> list[int]:
    """Moduli covered by a verification sweep, ascending.

    ``p3``: p^3 for primes p <= p_max. ``p2q``: p^2 q for distinct primes
    p <= p_max, q <= q_max. ``general``: every composite n <= n_cap (or
    <= p_max^3 when no cap is given) that is of neither special form.
    """
    q_max = p_max if q_max is None else q_max
    primes_p = [p for p in range(2, p_max + 1) if is_prime(p)]
    primes_q = [q for q in range(2, q_max + 1) if is_prime(q)]
    if form == "p3":
        ns = [p**3 for p in primes_p]
    elif form == "p2q":
        ns = [p * p * q for p in primes_p for q in primes_q if p != q]
    elif form == "general":
        top = n_cap if n_cap is not None else p_max**3
        ns = [
            n
            for n in range(4, top + 1)
            if not is_prime(n) and form_name(factorize(n)) == "general"
        ]
    else:
        raise ValueError(f"unknown form {form!r}")
    if n_cap is not None:
        ns = [n for n in ns if n <= n_cap]
    return sorted(ns)


def summarize(records: list[dict]) -> dict:
    tally: dict[str, dict[str, int]] = {}
    for rec in records:
        for c in rec["closed_forms"]:
            t = tally.setdefault(c["formula_id"], {MATCH: 0, MISMATCH: 0})
            t[c["verdict"]] += 1
    return {
        "summary": {
            "records": len(records),
            "structural_failures": [r["n"] for r in records if not r["structural_ok"]],
            "formulas": dict(sorted(tally.items())),
        }
    }

