"""Command-line front end.

    twistinv sig FILE [--json]
    twistinv equiv A B [--tol F]
    twistinv normalform FILE
    twistinv selftest [--seed N] [--trials N] [--suite NAME]

Input files are JSON: ``{"twists": [{"omega": [..3], "v": [..3]}, ...],
"metadata": {"label": "..."}}``.  Exit codes: 0 success/match, 1 mismatch or
failed suite, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import selftest
from .invariants import DEFAULT_RTOL, close, equivalent, signature, syzygy_residuals
from .normal_form import NormalFormError, normalize_triple, signature_preserved
from .screw import Twist, ZeroTwistError, pitch

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

CAVEAT = (
    "note: equal invariants are a necessary condition for the triples to be related "
    "by a rigid motion; sufficiency is not claimed"
)


class InputError(Exception):
    pass


def default_tol() -> float:
    raw = os.environ.get("TWISTINV_TOL")
    if raw is None:
        return DEFAULT_RTOL
    try:
        tol = float(raw)
    except ValueError:
        raise InputError(f"TWISTINV_TOL is not a number: {raw!r}")
    if not (tol >= 0 and math.isfinite(tol)):
        raise InputError(f"TWISTINV_TOL must be a finite non-negative number, got {raw!r}")
    return tol


def _vector(value, where: str) -> list[float]:
    if not isinstance(value, list) or len(value) != 3:
        raise InputError(f"{where}: expected an array of 3 numbers")
    out = []
    for c, x in enumerate(value):
        if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
            raise InputError(f"{where}[{c}]: expected a finite number, got {x!r}")
        out.append(float(x))
    return out


def parse_document(text: str) -> tuple[list[Twist], dict]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    if not isinstance(doc, dict) or "twists" not in doc:
        raise InputError("top level must be an object with a 'twists' array")
    records = doc["twists"]
    if not isinstance(records, list):
        raise InputError("'twists' must be an array")
    if not records:
        raise InputError("'twists' is empty; at least one twist is required")
    twists = []
    for i, rec in enumerate(records):
        if not isinstance(rec, dict):
            raise InputError(f"twists[{i}]: expected an object with 'omega' and 'v'")
        for key in ("omega", "v"):
            if key not in rec:
                raise InputError(f"twists[{i}]: missing field '{key}'")
        twists.append(Twist(_vector(rec["omega"], f"twists[{i}].omega"), _vector(rec["v"], f"twists[{i}].v")))
    meta = doc.get("metadata") or {}
    if not isinstance(meta, dict):
        raise InputError("'metadata' must be an object")
    return twists, meta


def load(path: str) -> tuple[list[Twist], dict]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}")
    except UnicodeDecodeError:
        raise InputError(f"{path}: not valid UTF-8")
    try:
        return parse_document(text)
    except InputError as exc:
        raise InputError(f"{path}: {exc}")


def _pitch_value(s: Twist):
    try:
        h = pitch(s)
    except ZeroTwistError:
        return None
    return "inf" if h == math.inf else float(h)


def signature_document(twists: list[Twist]) -> dict:
    sig = signature(twists)
    key = lambda t: ",".join(str(i + 1) for i in t)  # noqa: E731
    residuals = None
    if sig.k == 3:
        residuals = [float(r) for r in syzygy_residuals(sig)]
    return {
        "quad_primal": np.asarray(sig.quad_primal, dtype=float).tolist(),
        "quad_dual": np.asarray(sig.quad_dual, dtype=float).tolist(),
        "cubic_primal": {key(t): float(v) for t, v in sig.cubic_primal.items()},
        "cubic_dual": {key(t): float(v) for t, v in sig.cubic_dual.items()},
        "pitches": [_pitch_value(s) for s in twists],
        "syzygy_residuals": residuals,
    }


def _fmt(x) -> str:
    return f"{float(x):.12g}"


def cmd_signature(args) -> int:
    twists, meta = load(args.file)
    doc = signature_document(twists)
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
        return EXIT_OK
    if "label" in meta:
        print(f"# {meta['label']}")
    sig = signature(twists)
    for label, value in sig.labeled().items():
        print(f"{label:<8} {_fmt(value)}")
    for i, h in enumerate(doc["pitches"], start=1):
        if h is None:
            print(f"pitch{i:<3} undefined (zero twist)")
        else:
            print(f"pitch{i:<3} {h if h == 'inf' else _fmt(h)}")
    if doc["syzygy_residuals"] is not None:
        r1, r2 = doc["syzygy_residuals"]
        print(f"syzygy residuals  {_fmt(r1)}  {_fmt(r2)}")
    return EXIT_OK


def _triple(path: str) -> list[Twist]:
    twists, _ = load(path)
    if len(twists) != 3:
        raise InputError(f"{path}: expected exactly 3 twists, found {len(twists)}")
    return twists


def cmd_equiv(args) -> int:
    a, b = _triple(args.a), _triple(args.b)
    tol = args.tol if args.tol is not None else default_tol()
    report = equivalent(a, b, tol)
    sa, sb = signature(a).labeled(), signature(b).labeled()
    print(f"{'invariant':<10} {'A':>16} {'B':>16} {'delta':>12}")
    for key in sa:
        flag = "" if close(sa[key], sb[key], tol) else "  *"
        print(f"{key:<10} {_fmt(sa[key]):>16} {_fmt(sb[key]):>16} {report.deltas[key]:>12.3e}{flag}")
    print("match" if report.match else "mismatch")
    print(CAVEAT)
    return EXIT_OK if report.match else EXIT_MISMATCH


def cmd_normalform(args) -> int:
    twists = _triple(args.file)
    try:
        nf = normalize_triple(*twists)
    except NormalFormError as exc:
        raise InputError(str(exc))
    print(f"branch       {nf.branch.name}")
    print("rotation")
    for row in nf.motion.rotation:
        print("  " + "  ".join(f"{x + 0.0:>14.10f}" for x in row))
    print("translation  " + "  ".join(f"{x + 0.0:.10f}" for x in nf.motion.translation))
    for i, (a, b) in enumerate(zip(nf.alpha, nf.beta), start=1):
        print(f"alpha{i} {a:>16.10f}   beta{i} {b:>16.10f}")
    before = signature(twists).values()
    after = signature(nf.transformed).values()
    resid = float(np.max(np.abs(before - after)))
    print(f"pattern residual    {nf.pattern_residual():.3e}")
    print(f"signature residual  {resid:.3e}")
    return EXIT_OK if signature_preserved(nf, twists) else EXIT_MISMATCH


def cmd_selftest(args) -> int:
    if args.trials < 1:
        raise InputError("--trials must be at least 1")
    if args.suite != "all" and args.suite not in selftest.SUITES:
        raise InputError(f"unknown suite {args.suite!r}; choose from all, {', '.join(selftest.SUITES)}")
    results = selftest.run(args.suite, args.trials, args.seed)
    print(f"selftest seed={args.seed} trials={args.trials}")
    for r in results:
        print(r.line())
    ok = all(r.ok for r in results)
    print("all suites passed" if ok else "FAILED")
    return EXIT_OK if ok else EXIT_MISMATCH


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="twistinv", description="Adjoint invariants of twist triples in se(3).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sig", help="print the invariant signature of a twist file")
    p.add_argument("file")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--table", action="store_true", help="plain table (default)")
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser("equiv", help="compare the invariants of two triples")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("normalform", help="reduce a triple to normal form")
    p.add_argument("file")
    p.set_defaults(func=cmd_normalform)

    p = sub.add_parser("selftest", help="run the seeded property suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--suite", default="all")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"twistinv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
