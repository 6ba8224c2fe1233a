"""Command-line front end: ``collatz-poly {table,report,verify,search,roots,poly}``.

Exit codes: 0 success, 1 numeric failure (non-convergence, budget overrun),
2 a violated mathematical claim, 64 usage error.

Every global flag can also be set through an environment variable named
``COLLATZ_POLY_<FLAG>`` (e.g. ``COLLATZ_POLY_WORKERS=8``); explicit flags win.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass
from typing import Optional

from . import _kernels
from .analysis import Predicate, SUITES, iter_search, run_suite
from .bounds import attach_roots, bound_report, h_upper, in_proven_range, kalantari_U
from .core import Variant
from .errors import BudgetExceeded, CollatzPolyError, DegreeTooSmall
from .polynomial import build, to_dict
from .roots import find_roots, has_nonreal_root, vieta_check

EXIT_OK = 0
EXIT_NUMERIC = 1
EXIT_CLAIM = 2
EXIT_USAGE = 64

ENV_PREFIX = "COLLATZ_POLY_"
DEFAULT_T_VALUES = [3, 10, 10**3, 10**5, 10**7]

#: Frozen CSV column orders; new columns are only ever appended.
TABLE_COLUMNS = ["t", "h_t", "proven"]
SEARCH_COLUMNS = ["N"]
ROOT_COLUMNS = ["re", "im", "modulus", "residual"]
POLY_COLUMNS = ["j", "coeff"]
REPORT_COLUMNS = ["quantity", "value", "contains_roots"]
VERIFY_COLUMNS = ["suite", "N", "kind", "detail"]


@dataclass
class Config:
    variant: Variant
    fmt: str
    workers: int
    max_steps: int
    tol_root: float
    output: Optional[str]

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.tol_root <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_steps < 1:
            raise ValueError("max-steps must be >= 1")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _env(name, default):
    return os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"), default)


def _global_options(p: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--variant", choices=["standard", "alt"], default=d(_env("variant", "standard")))
    p.add_argument("--format", dest="fmt", choices=["json", "csv", "text"], default=d(_env("format", "text")))
    p.add_argument("--workers", type=int, default=d(int(_env("workers", 1))))
    p.add_argument("--max-steps", type=int, default=d(int(_env("max_steps", 10**6))))
    p.add_argument("--tol-root", type=float, default=d(float(_env("tol_root", 1e-9))))
    p.add_argument("--output", "-o", default=d(_env("output", None)), help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="collatz-poly", description="Collatz polynomials: bounds, roots and integer-root theorems.")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        _global_options(sp, suppress=True)
        return sp

    sp = add("table", "tabulate the closed-form bound h(t)")
    sp.add_argument("t", nargs="*", type=int, help=f"bases (default {DEFAULT_T_VALUES})")

    sp = add("report", "every bound for one N, checked against its numerical roots")
    sp.add_argument("N", type=int)
    sp.add_argument("--m", type=int, action="append", help="extra m for U_m (repeatable)")

    sp = add("verify", "run an exhaustive theorem suite over [2, HI]")
    sp.add_argument("hi", type=int)
    sp.add_argument("--suite", required=True, choices=sorted(SUITES))
    sp.add_argument("--lo", type=int, default=2)

    sp = add("search", "scan [LO, HI] for integer-root witnesses")
    sp.add_argument("lo", type=int)
    sp.add_argument("hi", type=int)
    sp.add_argument("--predicate", default="minus-one", choices=[p.value for p in Predicate])
    sp.add_argument("--from", dest="resume", metavar="PATH", help="resume from a previous JSON-lines stream")
    sp.add_argument("--chunk", type=int, default=250_000)
    sp.add_argument("--timing", action="store_true", help="include elapsed time in the summary")

    sp = add("roots", "numerical roots of one polynomial")
    sp.add_argument("N", type=int)

    sp = add("poly", "coefficients of one polynomial")
    sp.add_argument("N", type=int)
    return parser


def _fmt7(x: float) -> str:
    return f"{x:.7g}"


def _csv(rows, columns) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(rows)
    return buf.getvalue()


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


# --- subcommands ---------------------------------------------------------------


def cmd_table(args, cfg: Config, out) -> int:
    ts = args.t or DEFAULT_T_VALUES
    if any(t < 0 for t in ts):
        raise UsageError("t must be >= 0")
    rows = [(t, h_upper(t), in_proven_range(t)) for t in ts]
    if cfg.fmt == "json":
        out.write(_dump([{"t": t, "h_t": h, "proven": pr} for t, h, pr in rows]))
    elif cfg.fmt == "csv":
        out.write(_csv([(t, repr(h), str(pr).lower()) for t, h, pr in rows], TABLE_COLUMNS))
    else:
        width = max(len(str(t)) for t in ts)
        out.write(f"{'t':>{width}}  h(t)\n")
        for t, h, pr in rows:
            flag = "" if pr else "  (outside proven range)"
            out.write(f"{t:>{width}}  {_fmt7(h)}{flag}\n")
    return EXIT_OK


def cmd_report(args, cfg: Config, out) -> int:
    N = args.N
    if N < 1:
        raise UsageError("N must be >= 1")
    if N == 1:
        notice = "P_1 = 1 has degree 0: no roots and no bounds to report"
        if cfg.fmt == "json":
            out.write(_dump({"N": "1", "variant": cfg.variant.value, "degree": 0, "notice": notice}))
        elif cfg.fmt == "csv":
            out.write(_csv([("degree", 0, "")], REPORT_COLUMNS))
        else:
            out.write(notice + "\n")
        return EXIT_OK
    rep = bound_report(N, cfg.variant, max_steps=cfg.max_steps)
    for m in args.m or ():
        if m < 2:
            raise UsageError("--m must be >= 2")
        rep.U_m_values[m] = kalantari_U(build(N, cfg.variant, cfg.max_steps), m)
    rep.U_m_values = dict(sorted(rep.U_m_values.items()))
    poly = build(N, cfg.variant, cfg.max_steps)
    rs = find_roots(poly, residual_tol=cfg.tol_root)
    attach_roots(rep, rs.max_modulus, rs.min_modulus)
    integer_roots = [k for k in (-1, -2) if poly(k) == 0]
    vieta_ok = True
    try:
        vieta_check(poly, rs)
    except CollatzPolyError:
        vieta_ok = False
    violations = rep.theorem_violations()
    status = EXIT_CLAIM if violations else (EXIT_NUMERIC if not rs.converged or not vieta_ok else EXIT_OK)

    if cfg.fmt == "json":
        doc = {
            "bounds": rep.to_dict(),
            "roots": rs.to_dict(),
            "integer_roots": integer_roots,
            "has_nonreal_root": has_nonreal_root(rs),
            "vieta_ok": vieta_ok,
            "violations": violations,
        }
        out.write(_dump(doc))
    elif cfg.fmt == "csv":
        rows = [(k, repr(v), str(rep.containment.get(k, "")).lower()) for k, v in rep.upper_bounds().items()]
        rows.append(("lower", repr(rep.lower), str(rep.containment["lower"]).lower()))
        rows.append(("max_modulus", repr(rs.max_modulus), ""))
        rows.append(("min_modulus", repr(rs.min_modulus), ""))
        out.write(_csv(rows, REPORT_COLUMNS))
    else:
        out.write(f"N = {N} ({cfg.variant.value}), degree {rep.degree}, base t = {rep.t}"
                  + ("" if rep.proven_range else " (outside proven range)") + "\n")
        out.write(f"roots: max |z| = {rs.max_modulus:.10f}, min |z| = {rs.min_modulus:.10f}, "
                  f"converged = {rs.converged}\n")
        if integer_roots:
            out.write("integer roots: " + ", ".join(map(str, integer_roots)) + "\n")
        out.write("upper bounds:\n")
        for k, v in rep.upper_bounds().items():
            out.write(f"  {k:<20} {v:.10f}  {'ok' if rep.containment[k] else 'VIOLATED'}\n")
        out.write(f"lower bound:\n  {'lower':<20} {rep.lower:.10f}  "
                  f"{'ok' if rep.containment['lower'] else 'VIOLATED'}\n")
        if violations:
            out.write("theorem violations: " + ", ".join(violations) + "\n")
    return status


def cmd_verify(args, cfg: Config, out) -> int:
    if args.hi < 3 or args.lo < 1 or args.lo > args.hi:
        raise UsageError("need 1 <= lo <= hi and hi >= 3")
    res = run_suite(args.suite, args.hi, lo=args.lo, workers=cfg.workers, max_steps=cfg.max_steps)
    if cfg.fmt == "json":
        out.write(_dump(res.to_dict()))
    elif cfg.fmt == "csv":
        rows = [(res.suite, N, "violation", d) for N, d in res.violations]
        rows += [(res.suite, N, "numeric", d) for N, d in res.numeric_failures]
        out.write(_csv(rows, VERIFY_COLUMNS))
    else:
        out.write(f"{res.suite} on [{res.lo}, {res.hi}]: {res.checked} checked, "
                  f"{len(res.violations)} violations, {len(res.numeric_failures)} numeric failures\n")
        for N, d in res.violations[:20]:
            out.write(f"  violation N={N}: {d}\n")
        for N, d in res.numeric_failures[:20]:
            out.write(f"  numeric N={N}: {d}\n")
    if res.violations:
        return EXIT_CLAIM
    return EXIT_NUMERIC if res.numeric_failures else EXIT_OK


def _load_checkpoint(path: str, lo: int, hi: int, predicate: str):
    hits, resume_at = [], lo
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError:
                break  # truncated tail of an interrupted run
            if rec.get("type") == "hit":
                hits.append(int(rec["N"]))
            elif rec.get("type") == "progress":
                if rec.get("predicate", predicate) != predicate:
                    raise UsageError(f"checkpoint was written for predicate {rec['predicate']!r}")
                resume_at = int(rec["scanned_through"]) + 1
    return [h for h in hits if lo <= h < resume_at], resume_at


def cmd_search(args, cfg: Config, out) -> int:
    lo, hi = args.lo, args.hi
    if lo < 1 or lo > hi:
        raise UsageError(f"empty or invalid range [{lo}, {hi}]")
    if args.chunk < 1:
        raise UsageError("chunk must be >= 1")
    if cfg.variant is not Variant.STANDARD:
        raise UsageError("search is defined for the standard polynomial only")
    pred = Predicate(args.predicate)
    prior, start = [], lo
    if args.resume:
        if cfg.fmt != "json":
            raise UsageError("--from requires --format json")
        prior, start = _load_checkpoint(args.resume, lo, hi, pred.value)
    t0 = time.perf_counter()
    all_hits = list(prior)
    exceeded: list[int] = []
    scanned = 0
    if cfg.fmt == "csv":
        out.write(",".join(SEARCH_COLUMNS) + "\n")
    for N in prior:
        _emit_hit(out, cfg.fmt, N)
    if start <= hi:
        for chunk in iter_search(start, hi, pred, cfg.workers, cfg.max_steps, args.chunk):
            for N in chunk.hits:
                _emit_hit(out, cfg.fmt, N)
            all_hits.extend(chunk.hits)
            exceeded.extend(chunk.exceeded)
            scanned += chunk.scanned
            if cfg.fmt == "json":
                out.write(json.dumps({"type": "progress", "predicate": pred.value, "scanned_through": chunk.hi}) + "\n")
            out.flush()
    summary = {
        "type": "summary",
        "range": [lo, hi],
        "predicate": pred.value,
        "hits": len(all_hits),
        "first_hit": all_hits[0] if all_hits else None,
        "scanned": scanned,
        "resumed_from": start if args.resume else None,
        "budget_exceeded": exceeded,
        "backend": _kernels.BACKEND,
    }
    if args.timing:
        summary["elapsed"] = round(time.perf_counter() - t0, 3)
    if cfg.fmt == "json":
        out.write(json.dumps(summary) + "\n")
    elif cfg.fmt == "text":
        out.write(f"# {summary['hits']} hits for {pred.value} in [{lo}, {hi}]"
                  + (f", {len(exceeded)} budget overruns" if exceeded else "") + "\n")
    return EXIT_NUMERIC if exceeded else EXIT_OK


def _emit_hit(out, fmt, N):
    if fmt == "json":
        out.write(json.dumps({"type": "hit", "N": N}) + "\n")
    else:
        out.write(f"{N}\n")


def cmd_roots(args, cfg: Config, out) -> int:
    poly = build(args.N, cfg.variant, cfg.max_steps)
    if poly.degree < 1:
        raise DegreeTooSmall(f"P_{args.N} has degree 0")
    rs = find_roots(poly, residual_tol=cfg.tol_root)
    if cfg.fmt == "json":
        doc = {"N": str(args.N), "variant": cfg.variant.value, **rs.to_dict()}
        out.write(_dump(doc))
    elif cfg.fmt == "csv":
        d = rs.to_dict()
        rows = [(repr(re), repr(im), repr(abs(complex(re, im))), repr(r)) for (re, im), r in zip(d["roots"], d["residuals"])]
        out.write(_csv(rows, ROOT_COLUMNS))
    else:
        for z in rs.sorted_roots():
            out.write(f"{z.real:+.15f} {z.imag:+.15f}i   |z| = {abs(z):.15f}\n")
        out.write(f"# {rs.degree} roots, {rs.iterations} sweeps, converged = {rs.converged}\n")
    return EXIT_OK if rs.converged else EXIT_NUMERIC


def cmd_poly(args, cfg: Config, out) -> int:
    poly = build(args.N, cfg.variant, cfg.max_steps)
    if cfg.fmt == "json":
        out.write(_dump(to_dict(poly)))
    elif cfg.fmt == "csv":
        out.write(_csv(list(enumerate(poly.coeffs)), POLY_COLUMNS))
    else:
        terms = [str(poly.coeffs[0])] + [f"{a}z" if j == 1 else f"{a}z^{j}" for j, a in enumerate(poly.coeffs) if j]
        out.write(" + ".join(terms) + "\n")
    return EXIT_OK


COMMANDS = {
    "table": cmd_table,
    "report": cmd_report,
    "verify": cmd_verify,
    "search": cmd_search,
    "roots": cmd_roots,
    "poly": cmd_poly,
}


def main(argv=None) -> int:
    try:
        parser = build_parser()
    except ValueError as exc:
        print(f"collatz-poly: error: bad {ENV_PREFIX}* environment value: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = Config(Variant.parse(args.variant), args.fmt, args.workers, args.max_steps, args.tol_root, args.output)
    except ValueError as exc:
        print(f"collatz-poly: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = open(cfg.output, "w", newline="") if cfg.output else sys.stdout
    try:
        return COMMANDS[args.command](args, cfg, out)
    except UsageError as exc:
        print(f"collatz-poly: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"collatz-poly: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except DegreeTooSmall as exc:
        print(f"collatz-poly: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
