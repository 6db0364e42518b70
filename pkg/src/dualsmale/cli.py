"""Command-line front end.

Exit codes: 0 success, 1 bad input or numerical failure, 2 candidate
counterexample to a conjectured bound, 3 numerical anomaly against a proven
bound (or failed verification).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from .checks import GENERAL_CHECKS, ODD_CHECKS, run_check
from .errors import DualSmaleError, GuaranteeViolated
from .oddcert import certify_symmetric, detect_symmetry
from .polycore import NormalizedPolynomial, Polynomial, normalize_at
from .ratios import Status, check_dual_bound, check_smale_upper, dual_lower_bounds, is_conservative, ratio_report
from .reports import render_report, write_atomic
from .rootfind import DEFAULT_TOL, ToleranceConfig
from .sampling import random_normalized, random_odd
from .search import SearchConfig, class_name, minimize_dual_ratio, parse_class

log = logging.getLogger("dualsmale")

EXIT_OK, EXIT_INPUT, EXIT_CANDIDATE, EXIT_ANOMALY = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected re,im but got {text!r}")
    return complex(float(parts[0]), float(parts[1]))


def parse_range(text: str) -> tuple[int, int]:
    if ":" in text:
        a, b = text.split(":", 1)
        lo, hi = int(a), int(b)
    else:
        lo = hi = int(text)
    if lo > hi:
        raise UsageError(f"empty degree range {text!r}")
    return lo, hi


def _tol(args) -> ToleranceConfig:
    if getattr(args, "tol", None) is None:
        return DEFAULT_TOL
    return ToleranceConfig(residual_tol=args.tol)


def _load(args) -> tuple[NormalizedPolynomial, bytes]:
    raw = Path(args.input).read_bytes()
    p = Polynomial.loads(raw.decode())
    if args.normalize_at is not None:
        return normalize_at(p, parse_complex(args.normalize_at)), raw
    return NormalizedPolynomial.snap(p), raw


def _emit(args, text: str) -> None:
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def _status_code(statuses) -> int:
    statuses = set(statuses)
    if Status.NUMERICAL_ANOMALY in statuses:
        return EXIT_ANOMALY
    if Status.CANDIDATE_COUNTEREXAMPLE in statuses:
        return EXIT_CANDIDATE
    return EXIT_OK


def cmd_analyze(args) -> int:
    p, raw = _load(args)
    cfg = _tol(args)
    rep = ratio_report(p, cfg)
    odd = detect_symmetry(p) % 2 == 0
    dual = check_dual_bound(rep, odd=odd)
    smale = check_smale_upper(rep)
    body = {
        "polynomial": p.to_dict(),
        "odd": odd,
        "report": rep.to_dict(),
        "dual_check": dual.to_dict(),
        "smale_check": smale.to_dict(),
        "conservative": is_conservative(rep),
    }
    code = _status_code([dual.status, smale.status])
    body["status"] = {EXIT_OK: "OK", EXIT_CANDIDATE: Status.CANDIDATE_COUNTEREXAMPLE.value,
                      EXIT_ANOMALY: Status.NUMERICAL_ANOMALY.value}[code]
    config = {"input": str(args.input), "normalize_at": args.normalize_at, "tol": asdict(cfg)}
    _emit(args, render_report("analyze", config, body, raw))
    return code


def cmd_certify(args) -> int:
    p, raw = _load(args)
    cfg = _tol(args)
    k = args.k if args.k is not None else detect_symmetry(p)
    if k < 2:
        raise UsageError("no rotational symmetry of order k >= 2 detected; pass --k to force one")
    code = EXIT_OK
    try:
        cert = certify_symmetric(p, k, cfg)
    except GuaranteeViolated as exc:
        cert, code = exc.certificate, EXIT_ANOMALY
    print(f"certified: |P(c)/c| = {cert.q_abs!r} >= {cert.bound!r}" if code == EXIT_OK
          else f"GUARANTEE VIOLATED: |P(c)/c| = {cert.q_abs!r} < {cert.bound!r}")
    config = {"input": str(args.input), "k": k, "normalize_at": args.normalize_at, "tol": asdict(cfg)}
    body = {"certificate": cert.to_dict(), "status": "OK" if code == EXIT_OK else "NUMERICAL_ANOMALY"}
    text = render_report("certify", config, body, raw)
    if args.out:
        write_atomic(args.out, text)
    return code


def bounds_table(lo: int, hi: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "tan_bound", "square_bound", "one_over_n", "one_minus_one_over_n"])
    for n in range(lo, hi + 1):
        b = dual_lower_bounds(n)
        w.writerow([n, repr(b.tan_bound), repr(b.square_bound), repr(1.0 / n), repr(1.0 - 1.0 / n)])
    return buf.getvalue()


def cmd_bounds(args) -> int:
    lo, hi = parse_range(args.degrees)
    if not 2 <= lo <= hi <= 1000:
        raise UsageError("degree range must satisfy 2 <= min <= max <= 1000")
    _emit(args, bounds_table(lo, hi))
    return EXIT_OK


def cmd_search(args) -> int:
    if args.degree is None and args.degrees is None:
        raise UsageError("pass --degree or --degrees")
    lo, hi = parse_range(args.degrees) if args.degrees else (args.degree, args.degree)
    k = parse_class(args.poly_class)
    degrees = [d for d in range(lo, hi + 1) if k == 1 or (d - 1) % k == 0]
    if args.degrees is None and not degrees:
        raise UsageError(f"class {args.poly_class} needs degree = 1 mod {k}")
    if not degrees:
        raise UsageError(f"no degree in {lo}:{hi} fits class {args.poly_class}")
    tol = _tol(args)
    results = []
    for d in degrees:
        cfg = SearchConfig(
            degree=d,
            poly_class=class_name(k),
            restarts=args.restarts,
            max_evals_per_restart=args.max_evals,
            seed=args.seed,
            coefficient_radius=args.radius,
        )
        log.info("searching degree %d class %s", d, cfg.poly_class)
        results.append(minimize_dual_ratio(cfg, tol, workers=args.workers))
    body = {"results": [r.to_dict() for r in results]}
    config = {"class": class_name(k), "degrees": degrees, "restarts": args.restarts,
              "max_evals": args.max_evals, "seed": args.seed, "radius": args.radius, "tol": asdict(tol)}
    _emit(args, render_report("search", config, body))

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["degree", "best_D", "conjectured_floor", "proven_floor"])
    for r in results:
        w.writerow([r.config.degree, repr(r.best_D), repr(r.conjectured_floor), repr(r.proven_floor)])
    plot_path = args.plot_csv or (Path(args.out).with_suffix(".csv") if args.out else None)
    if plot_path:
        write_atomic(plot_path, buf.getvalue())

    flags = [f for r in results for f in r.flags]
    if any(f["below_proven_floor"] for f in flags):
        return EXIT_ANOMALY
    return EXIT_CANDIDATE if flags else EXIT_OK


def _verify_one(p: NormalizedPolynomial, cfg: ToleranceConfig, counts: dict, failures: list) -> None:
    checks = dict(GENERAL_CHECKS)
    if p.degree >= 3 and detect_symmetry(p) % 2 == 0:
        checks.update(ODD_CHECKS)
    for name, fn in checks.items():
        ok, detail = run_check(fn, p, cfg)
        c = counts.setdefault(name, {"pass": 0, "fail": 0})
        c["pass" if ok else "fail"] += 1
        if not ok:
            failures.append({"property": name, "polynomial": p.to_dict(), "detail": _jsonable(detail)})


def _jsonable(detail: dict) -> dict:
    return {k: (float(v) if isinstance(v, (np.floating, float)) else v) for k, v in detail.items()}


def cmd_verify(args) -> int:
    cfg = _tol(args)
    counts: dict = {}
    failures: list = []
    raw = None
    if args.replay:
        raw = Path(args.replay).read_bytes()
        doc = json.loads(raw)
        if "body" in doc:
            doc = doc["body"]
        polys = [f["polynomial"] for f in doc.get("failures", [])] + doc.get("polynomials", [])
        if not polys:
            raise UsageError("replay file holds no polynomials")
        for obj in polys:
            _verify_one(NormalizedPolynomial.snap(Polynomial.from_dict(obj)), cfg, counts, failures)
        config = {"replay": str(args.replay), "tol": asdict(cfg)}
    else:
        if args.samples is None or args.samples < 1:
            raise UsageError("--samples must be a positive integer")
        lo, hi = parse_range(args.degrees)
        if lo < 2:
            raise UsageError("degrees must be >= 2")
        rng = np.random.default_rng(np.random.SeedSequence(args.seed))
        for d in range(lo, hi + 1):
            for _ in range(args.samples):
                _verify_one(random_normalized(rng, d), cfg, counts, failures)
                if d >= 3 and d % 2 == 1:
                    _verify_one(random_odd(rng, d), cfg, counts, failures)
        config = {"samples": args.samples, "degrees": [lo, hi], "seed": args.seed, "tol": asdict(cfg)}
    body = {"counts": {k: counts[k] for k in sorted(counts)}, "failures": failures}
    _emit(args, render_report("verify", config, body, raw))
    for name in sorted(counts):
        print(f"{name}: {counts[name]['pass']} pass, {counts[name]['fail']} fail", file=sys.stderr)
    return EXIT_ANOMALY if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dualsmale", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, inp=True):
        if inp:
            sp.add_argument("input", help='polynomial file: {"coeffs": [[re, im], ...]}, ascending degree')
            sp.add_argument("--normalize-at", metavar="RE,IM", help="re-base at this point before analysis")
        sp.add_argument("--tol", type=float, help="root residual tolerance")
        sp.add_argument("--out", help="output path (default: stdout)")

    sp = sub.add_parser("analyze", help="critical points, S(P), D(P) and bound checks")
    common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("certify", help="symmetric lower-bound certificate")
    common(sp)
    sp.add_argument("--k", type=int, help="symmetry order (default: detected)")
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("bounds", help="CSV table of the bound constants per degree")
    sp.add_argument("--degrees", required=True, metavar="A:B")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("search", help="multi-start minimization of D(P)")
    common(sp, inp=False)
    sp.add_argument("--class", dest="poly_class", default="general", help="general | odd | sym:<k>")
    sp.add_argument("--degree", type=int)
    sp.add_argument("--degrees", metavar="A:B")
    sp.add_argument("--restarts", type=int, default=64)
    sp.add_argument("--max-evals", type=int, default=2000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--radius", type=float, default=2.0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--plot-csv", help="plot data path (default: --out with .csv suffix)")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("verify", help="batch property suite on random polynomials")
    common(sp, inp=False)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--degrees", default="2:10", metavar="A:B")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--replay", help="re-run the checks on polynomials from a failure file")
    sp.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, DualSmaleError, ValueError, KeyError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
