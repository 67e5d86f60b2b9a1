"""Command line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 for usage errors (bad arguments, unknown names, refused degree caps).
``VCERT_THREADS`` bounds the number of worker processes used by the
certificate pipeline.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .certificate import (
    MODES,
    InstanceSpec,
    PipelineError,
    compare_with_printed,
    dumps,
    emit_certificate,
    instance_coefficients,
    run_pipeline,
)
from .appendix import relation
from .exact import fmt_rat
from .identities import SUITES, run_suite
from .oracle import DEFAULT_MAX_DEGREE
from .rules import RULES, resolve_reading, special_charges, verify_rule

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_range(text: str) -> range:
    """``"2..5"`` -> ``range(2, 6)``; a single integer is a one-element range."""
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a range like 2..5, got {text!r}")
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _clin(x) -> str:
    if not x.a1:
        return str(x.a0)
    return f"{x.a0} + ({x.a1})*c"


# ---------------------------------------------------------------------------
# subcommands

def cmd_identity(args) -> int:
    if args.name not in SUITES:
        raise UsageError(f"unknown identity {args.name!r}; known: {', '.join(sorted(SUITES))}")
    kwargs: dict = {}
    if args.name == "associativity":
        kwargs = {"m_range": args.range or range(2, 6), "max_weight": args.max_weight or 6}
    elif args.name == "four-mode":
        kwargs = {"m_range": args.m or range(3, 6), "p_range": args.p or range(2, 4),
                  "reading": args.reading}
    else:
        kwargs = {"m_range": args.range or range(-3, 4), "max_weight": args.max_weight or 4}
    try:
        checks = run_suite(args.name, **kwargs)
    except ValueError as exc:
        raise UsageError(str(exc))
    failed = [c for c in checks if not c.passed]
    for c in failed:
        print(f"FAIL {c.params}")
    print(f"{args.name}: {len(checks) - len(failed)}/{len(checks)} instances pass")
    return EXIT_OK if not failed else EXIT_FAIL


def cmd_coeffs(args) -> int:
    try:
        spec = InstanceSpec(args.k, args.m)
    except ValueError as exc:
        raise UsageError(str(exc))
    quad = instance_coefficients(spec, args.mode)
    if args.json:
        print(json.dumps({"k": spec.k, "m": spec.m, "s": spec.s, "convention": args.mode,
                          **quad.to_json()}, sort_keys=True, indent=2))
        return EXIT_OK
    print(f"k={spec.k} m={spec.m} (n, p, q)=({spec.n}, {spec.p}, {spec.q}) s={spec.s} "
          f"convention={args.mode}")
    printed = {"xi": f"xi{spec.k}", "zeta": f"zeta{spec.k}"}
    if spec.k == 0:
        printed.update(alpha="alpha0", beta="beta0", gammaP="gamma0p", deltaP="delta0p")
    for name in ("alpha", "beta", "gammaP", "deltaP", "xi", "zeta"):
        value = getattr(quad, name)
        note = f"   [printed {printed[name]}: {relation(printed[name], value, spec.m)}]" \
            if name in printed else ""
        print(f"  {name:7s} = {_clin(value)}{note}")
    return EXIT_OK


def _witness_table(block: dict) -> None:
    print("   s    m  k  G_k(m)")
    for row in block["checks"]["witnesses"]:
        g = row["G"].removesuffix("/1")
        g = g if len(g) <= 40 else g[:18] + "..." + g[-18:]
        print(f"  {row['s']:3d}  {row['m']:3d}  {row['k']}  {g}")


def cmd_certify(args) -> int:
    if args.smax < 32 or args.smax % 2:
        raise UsageError("--smax must be an even integer >= 32")
    try:
        cert = emit_certificate(args.smax)
    except PipelineError as exc:
        print(f"pipeline failed at stage {exc.stage}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = dumps(cert)
    Path(args.out).write_text(text, encoding="utf-8")
    _witness_table(cert)
    th = cert["theorem"]
    for label, block in (("top level", cert), ("cross check", cert["cross_check"])):
        bad = [k for k, v in block["checks"].items()
               if k != "witnesses" and not (v is True or (isinstance(v, dict) and v.get("ok")))]
        print(f"{label} ({block['convention']}): " + ("all checks pass" if not bad else
                                                     "FAILED " + ", ".join(bad)))
    print(f"theorem for n in [{th['range_checked'][0]}, {th['range_checked'][1]}]: "
          f"{'holds' if th['holds'] else 'NOT established'}; written to {args.out}")
    return EXIT_OK if th["holds"] else EXIT_FAIL


def cmd_oracle(args) -> int:
    if args.rule not in RULES:
        raise UsageError(f"unknown rule {args.rule!r}; known: {', '.join(sorted(RULES))}")
    if args.max_weight > args.cap:
        raise UsageError(f"--max-weight {args.max_weight} exceeds the degree cap {args.cap}; "
                         "raise --cap explicitly to proceed (cost grows quickly)")
    charges = special_charges(seed=args.seed) if args.specialize else ()
    reports = verify_rule(args.rule, args.max_weight, charges, max_degree=args.cap)
    readings = resolve_reading(reports) if any("reading" in r.params for r in reports) else {}
    verified = sorted(r for r, (_, bad) in readings.items() if bad == 0)
    if readings:
        ok = bool(verified)
        plain = [r for r in reports if "reading" not in r.params]
        ok = ok and all(r.passed for r in plain)
    else:
        ok = all(r.passed for r in reports)
    if args.json:
        print(json.dumps({"rule": args.rule, "max_weight": args.max_weight,
                          "charges": [fmt_rat(c) for c in charges],
                          "instances": [r.to_json() for r in reports],
                          "readings": {k: {"passed": a, "failed": b} for k, (a, b) in readings.items()},
                          "verified_readings": verified, "ok": ok}, sort_keys=True, indent=2))
    else:
        for r in reports:
            if not r.passed:
                print(f"fail  weight {r.degree}  {r.params}")
        passed = sum(r.passed for r in reports)
        print(f"{args.rule}: {passed}/{len(reports)} instances pass up to weight {args.max_weight}"
              + (f" (specialized at {len(charges)} charges)" if charges else ""))
        for k, (a, b) in sorted(readings.items()):
            print(f"  reading {k}: {a} pass, {b} fail")
        if readings:
            print("  verified reading: " + (", ".join(verified) if verified else "none"))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_appendix(args) -> int:
    reports = [compare_with_printed(run_pipeline(mode)) for mode in MODES]
    if args.json:
        print(json.dumps(reports, sort_keys=True, indent=2))
    else:
        for rep in reports:
            print(f"convention {rep['convention']}:")
            for name, rel in rep["polynomial"].items():
                counts = ", ".join(f"{k} {v}" for k, v in rep["pointwise"][name].items())
                print(f"  {name:8s} polynomial: {rel:16s} nodes: {counts}")
            print(f"  f        {'matches' if rep['f_match'] else 'differs from'} the printed coefficients")
    exact = any(rep["exact"] for rep in reports)
    print("printed forms reproduced exactly" if exact else
          "printed forms NOT reproduced exactly (see relations above)")
    return EXIT_OK if exact else EXIT_FAIL


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vcert", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("identity", help="run an exact identity suite")
    p.add_argument("name", help=f"one of: {', '.join(sorted(SUITES))}")
    p.add_argument("--range", type=parse_range, help="mode index range, e.g. 2..5")
    p.add_argument("--m", type=parse_range, help="four-mode: range for m and n")
    p.add_argument("--p", type=parse_range, help="four-mode: range for p and q")
    p.add_argument("--max-weight", type=int, help="weight bound for the test vectors u")
    p.add_argument("--reading", choices=("corrected", "printed"), default="corrected")
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("coeffs", help="instance coefficients alpha, beta, gamma', delta', xi, zeta")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--mode", choices=MODES, default="engine")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("certify", help="run the pipeline and write the certificate")
    p.add_argument("--smax", type=int, default=100)
    p.add_argument("--out", default="certificate.json")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("oracle", help="verify a rewriting rule family by C2 membership")
    p.add_argument("--rule", required=True, help=f"one of: {', '.join(sorted(RULES))}")
    p.add_argument("--max-weight", type=int, default=10)
    p.add_argument("--cap", type=int, default=DEFAULT_MAX_DEGREE)
    p.add_argument("--no-specialize", dest="specialize", action="store_false",
                   help="skip re-solving at specific central charges")
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("appendix", help="compare computed data with every printed closed form")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_appendix)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"vcert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        if "VCERT_THREADS" in str(exc):
            print(f"vcert: error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        raise


if __name__ == "__main__":
    sys.exit(main())
