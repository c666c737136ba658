"""Command line front end.

Subcommands:

  classify   decide the vanishing checklists for a bundle, JSON out
  table      print h^i(E(m)) over a twist range
  fedder     membership test for Frobenius splitting, optional second
             route through the top-cohomology action and random sampling
  decompose  split F_*O(k) on P^n into line bundles
  hilbert    Hilbert function of a presentation matrix, with an optional
             cross-check against the sheaf formulas
  audit      re-derive one catalogued vanishing claim point by point

Exit codes: 0 success (including a NotSplit report, which is an answer,
not a failure), 2 bad arguments or bad input, 3 a cross-check that was
asked for and failed.  ULRICHLAB_THREADS>1 spreads sampled work over a
thread pool; output order never depends on it.

Polynomials are written as terms joined by + or -, each term
[coeff*]x<i>[^e]*...: for example "x0^4+x1^4+x2^4+x3^4+2*x0*x1*x2*x3".
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional

from . import __version__
from .classify import (
    THEOREMS,
    ClassificationReport,
    TheoremAudit,
    UnsupportedSpace,
    audit_theorem,
    classify,
)
from .cohomology import (
    B1,
    AmbientSpace,
    BundleSpec,
    Counterexample,
    FrobPush,
    Hypersurface,
    NotSplit,
    ProjectiveSpace,
    bundle_cohom_dim,
    hyp_cohom,
)
from .frobenius import (
    build_b1_presentation,
    build_frobpush_presentation,
    decompose_pn,
    hilbert_function,
)
from .kernel import Polynomial, PrimeField, parse_polynomial
from .splitting import fedder_check, frobenius_action, random_homogeneous


def _thread_count(parser: argparse.ArgumentParser) -> int:
    raw = os.environ.get("ULRICHLAB_THREADS", "1")
    try:
        v = int(raw)
    except ValueError:
        parser.error(f"ULRICHLAB_THREADS must be an integer, got {raw!r}")
    if v < 1:
        parser.error(f"ULRICHLAB_THREADS must be >= 1, got {v}")
    return v


def _parse_range(text: str, parser: argparse.ArgumentParser, flag: str) -> range:
    """Inclusive integer range written a..b."""
    parts = text.split("..")
    try:
        if len(parts) != 2:
            raise ValueError
        a, b = int(parts[0]), int(parts[1])
    except ValueError:
        parser.error(f"{flag} expects a..b with integers, got {text!r}")
    if b < a:
        parser.error(f"{flag}: empty range {text!r}")
    return range(a, b + 1)


def _parse_poly(
    text: str, n: int, p: int, parser: argparse.ArgumentParser
) -> Polynomial:
    try:
        return parse_polynomial(text, n + 1, PrimeField(p))
    except ValueError as e:
        parser.error(f"--f: {e}")
    raise AssertionError("unreachable")


def _space_from_args(
    args: argparse.Namespace, parser: argparse.ArgumentParser
) -> AmbientSpace:
    try:
        if args.space == "pn":
            if args.d is not None or args.f is not None:
                parser.error("--d and --f apply only to --space hyp")
            return ProjectiveSpace(args.n, args.p)
        if args.d is None:
            parser.error("--space hyp needs --d")
        f = None
        if args.f is not None:
            f = _parse_poly(args.f, args.n, args.p, parser)
        return Hypersurface(args.n, args.d, args.p, f)
    except ValueError as e:
        parser.error(str(e))
    raise AssertionError("unreachable")


def _bundle_from_args(
    args: argparse.Namespace, parser: argparse.ArgumentParser
) -> BundleSpec:
    if args.bundle == "frobpush":
        if args.k is None:
            parser.error("--bundle frobpush needs --k")
        return FrobPush(args.k, args.c)
    if args.k is not None:
        parser.error("--k applies only to --bundle frobpush")
    return B1(args.c)


def _split_override(args: argparse.Namespace) -> Optional[bool]:
    if getattr(args, "assume_split", False):
        return True
    if getattr(args, "assume_not_split", False):
        return False
    return None


def _space_json(space: AmbientSpace) -> Dict[str, object]:
    if isinstance(space, ProjectiveSpace):
        return {"kind": "pn", "p": space.p, "n": space.n, "d": None, "f": None}
    return {
        "kind": "hyp",
        "p": space.p,
        "n": space.n,
        "d": space.d,
        "f": None if space.f is None else space.f.to_text(),
    }


def _bundle_json(spec: BundleSpec) -> Dict[str, object]:
    if isinstance(spec, FrobPush):
        return {"kind": "frobpush", "k": spec.k, "c": spec.c}
    return {"kind": "b1", "k": None, "c": spec.c}


def _result_json(result) -> Dict[str, object]:
    if isinstance(result, Counterexample):
        return {
            "result": "counterexample",
            "witness_m": result.m,
            "witness_dim": str(result.dim),
        }
    return {"result": "vanishes", "witness_m": None, "witness_dim": None}


def _report_json(report: ClassificationReport) -> Dict[str, object]:
    conditions = []
    for rec in report.conditions:
        row: Dict[str, object] = {"id": rec.id, "j": rec.j, "ray": str(rec.ray)}
        row.update(_result_json(rec.result))
        conditions.append(row)
    return {
        "space": _space_json(report.space),
        "bundle": _bundle_json(report.spec),
        "verdict": {
            "acm": report.verdict.acm,
            "weakly_ulrich": report.verdict.weakly_ulrich,
            "almost_ulrich": report.verdict.almost_ulrich,
            "ulrich": report.verdict.ulrich,
        },
        "conditions": conditions,
        "obstructions": {
            "h_q_E_minus_q": str(report.obstructions.h_q_E_minus_q),
            "h_0_E_minus_1": str(report.obstructions.h_0_E_minus_1),
        },
        "assumptions": list(report.assumptions),
        "version": __version__,
    }


def _notsplit_json(space: AmbientSpace, spec: BundleSpec, detail: str) -> Dict[str, object]:
    return {
        "error": "NotSplit",
        "detail": detail,
        "space": _space_json(space),
        "bundle": _bundle_json(spec),
        "version": __version__,
    }


def _emit(obj: Dict[str, object]) -> None:
    print(json.dumps(obj, indent=2))


# -- subcommands ------------------------------------------------------


def cmd_classify(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    space = _space_from_args(args, parser)
    spec = _bundle_from_args(args, parser)
    try:
        report = classify(space, spec, split=_split_override(args))
    except NotSplit as e:
        _emit(_notsplit_json(space, spec, str(e)))
        return 0
    _emit(_report_json(report))
    return 0


def cmd_table(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    space = _space_from_args(args, parser)
    spec = _bundle_from_args(args, parser)
    ms = _parse_range(args.m_range, parser, "--m-range")
    degrees = list(range(space.q + 1)) if args.i is None else [args.i]
    for i in degrees:
        if not 0 <= i <= space.q:
            parser.error(f"--i must be in 0..{space.q}, got {i}")
    try:
        rows = [
            (m, [bundle_cohom_dim(space, spec, i, m, split=_split_override(args)) for i in degrees])
            for m in ms
        ]
    except NotSplit as e:
        _emit(_notsplit_json(space, spec, str(e)))
        return 0
    if args.json:
        _emit(
            {
                "space": _space_json(space),
                "bundle": _bundle_json(spec),
                "degrees": degrees,
                "rows": [
                    {"m": m, "dims": [str(v) for v in vals]} for m, vals in rows
                ],
                "version": __version__,
            }
        )
        return 0
    header = ["m"] + [f"h^{i}" for i in degrees]
    table = [header] + [[str(m)] + [str(v) for v in vals] for m, vals in rows]
    widths = [max(len(r[c]) for r in table) for c in range(len(header))]
    for r in table:
        print("  ".join(s.rjust(w) for s, w in zip(r, widths)))
    return 0


def cmd_fedder(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    threads = _thread_count(parser)
    field = PrimeField(args.p) if _is_prime_arg(args.p, parser) else None
    assert field is not None

    if args.sample is not None:
        if args.d != args.n + 1:
            parser.error(
                "--sample compares the two routes, which decide the same "
                "question only for d = n + 1"
            )
        rng = random.Random(args.seed)
        polys = [
            random_homogeneous(field, args.n + 1, args.d, rng)
            for _ in range(args.sample)
        ]

        def run(f: Polynomial) -> Dict[str, object]:
            v = fedder_check(args.p, f, args.d, args.n)
            act = frobenius_action(args.p, f, args.d, args.n)
            return {
                "f": f.to_text(),
                "split": v.split,
                "action_zero": act.is_zero(),
                "agree": v.split == (not act.is_zero()),
            }

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(run, polys))
        else:
            results = [run(f) for f in polys]
        out = {
            "p": args.p,
            "d": args.d,
            "n": args.n,
            "seed": args.seed,
            "samples": args.sample,
            "agree": sum(1 for r in results if r["agree"]),
            "results": results,
            "version": __version__,
        }
        _emit(out)
        return 0 if out["agree"] == args.sample else 3

    if args.f is None:
        parser.error("fedder needs --f (or --sample N)")
    f = _parse_poly(args.f, args.n, args.p, parser)
    try:
        verdict = fedder_check(args.p, f, args.d, args.n)
    except ValueError as e:
        parser.error(str(e))
    out: Dict[str, object] = {
        "p": args.p,
        "d": args.d,
        "n": args.n,
        "f": f.to_text(),
        "split": verdict.split,
        "witness": None if verdict.witness is None else str(verdict.witness),
    }
    if args.action:
        act = frobenius_action(args.p, f, args.d, args.n)
        out["action"] = {"size": len(act.basis), "zero": act.is_zero()}
        if args.d == args.n + 1:
            out["routes_agree"] = verdict.split == (not act.is_zero())
    out["version"] = __version__
    _emit(out)
    if "routes_agree" in out and out["routes_agree"] is False:
        return 3
    return 0


def _is_prime_arg(p: int, parser: argparse.ArgumentParser) -> bool:
    try:
        PrimeField(p)
    except ValueError as e:
        parser.error(str(e))
    return True


def cmd_decompose(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    try:
        ms = decompose_pn(args.p, args.n, args.k)
    except ValueError as e:
        parser.error(str(e))
    if args.json:
        _emit(
            {
                "p": args.p,
                "n": args.n,
                "k": args.k,
                "summands": {str(t): m for t, m in sorted(ms.items(), reverse=True)},
                "total": ms.total,
                "pretty": ms.pretty(),
                "version": __version__,
            }
        )
    else:
        print(ms.pretty())
    return 0


def cmd_hilbert(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    threads = _thread_count(parser)
    if args.f is None:
        parser.error("hilbert needs --f")
    f = _parse_poly(args.f, args.n, args.p, parser)
    try:
        if args.kind == "frobpush":
            P = build_frobpush_presentation(args.p, f, args.d, args.n, args.k)
        else:
            if args.k != 0:
                parser.error("--k applies only to --kind frobpush")
            P = build_b1_presentation(args.p, f, args.d, args.n)
    except ValueError as e:
        parser.error(str(e))
    ts = list(_parse_range(args.t_range, parser, "--t-range"))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            dims = list(pool.map(lambda t: hilbert_function(P, t), ts))
    else:
        dims = [hilbert_function(P, t) for t in ts]

    expected: List[Optional[int]] = [None] * len(ts)
    if args.check:
        space = Hypersurface(args.n, args.d, args.p)
        if args.kind == "frobpush":
            expected = [hyp_cohom(space, 0, args.k + args.p * t) for t in ts]
        else:
            expected = [
                hyp_cohom(space, 0, args.p * t) - hyp_cohom(space, 0, t) for t in ts
            ]

    all_match = True
    rows = []
    for t, dim, exp in zip(ts, dims, expected):
        match = None if exp is None else dim == exp
        if match is False:
            all_match = False
        rows.append({"t": t, "dim": str(dim), "expected": None if exp is None else str(exp), "match": match})

    if args.json:
        _emit(
            {
                "kind": args.kind,
                "p": args.p,
                "d": args.d,
                "n": args.n,
                "k": args.k if args.kind == "frobpush" else None,
                "f": f.to_text(),
                "values": rows,
                "all_match": all_match if args.check else None,
                "version": __version__,
            }
        )
    else:
        for row in rows:
            line = f"t={row['t']}  dim={row['dim']}"
            if args.check:
                tag = "ok" if row["match"] else "MISMATCH"
                line += f"  expected={row['expected']}  {tag}"
            print(line)
    if args.check and not all_match:
        print("cross-check failed: matrix and sheaf dimensions disagree", file=sys.stderr)
        return 3
    return 0


def cmd_audit(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    f = None
    if args.f is not None:
        f = _parse_poly(args.f, args.n, args.p, parser)
    try:
        audit = audit_theorem(args.theorem, p=args.p, d=args.d, n=args.n, f=f)
    except (UnsupportedSpace, ValueError) as e:
        parser.error(str(e))
    if args.json:
        _emit(_audit_json(audit))
        return 0
    print(f"theorem {audit.theorem}: claim {audit.claim}")
    print(f"  hypothesis: {audit.hypothesis} -> {'met' if audit.hypothesis_met else 'NOT met'}")
    if audit.error is not None:
        print(f"  error: {audit.error}")
    for c in audit.checks:
        where = str(c.ray) if c.ray is not None else f"m={c.m}"
        tag = "AGREE" if c.agree else "DISAGREE"
        extra = ""
        if isinstance(c.result, Counterexample):
            extra = f"  (m={c.result.m}, dim={c.result.dim})"
        print(f"  {tag:8s} {c.id:12s} j={c.j} {where}{extra}")
    print(f"  overall: {'all checks agree' if audit.all_agree else 'DISAGREEMENT found'}")
    return 0


def _audit_json(audit: TheoremAudit) -> Dict[str, object]:
    checks = []
    for c in audit.checks:
        row: Dict[str, object] = {
            "id": c.id,
            "j": c.j,
            "ray": None if c.ray is None else str(c.ray),
            "m": c.m,
            "agree": c.agree,
        }
        row.update(_result_json(c.result))
        checks.append(row)
    return {
        "theorem": audit.theorem,
        "claim": audit.claim,
        "p": audit.p,
        "d": audit.d,
        "n": audit.n,
        "bundle": None if audit.spec is None else _bundle_json(audit.spec),
        "polarization": audit.polarization,
        "hypothesis": audit.hypothesis,
        "hypothesis_met": audit.hypothesis_met,
        "error": audit.error,
        "checks": checks,
        "all_agree": None if audit.error is not None else audit.all_agree,
        "version": __version__,
    }


# -- parser -----------------------------------------------------------


def _add_space_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--space", choices=("pn", "hyp"), default="hyp")
    sp.add_argument("--n", type=int, required=True, help="ambient projective dimension")
    sp.add_argument("--p", type=int, required=True, help="characteristic (prime)")
    sp.add_argument("--d", type=int, default=None, help="hypersurface degree")
    sp.add_argument("--f", type=str, default=None, help="defining polynomial")


def _add_bundle_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--bundle", choices=("frobpush", "b1"), required=True)
    sp.add_argument("--k", type=int, default=None, help="pushed-forward twist (frobpush)")
    sp.add_argument("--c", type=int, default=0, help="outer twist")
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--assume-split", action="store_true")
    grp.add_argument("--assume-not-split", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ulrichlab",
        description="Exact cohomology tables and Ulrich-type classification "
        "for Frobenius pushforwards on hypersurfaces.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("classify", help="decide the vanishing checklists (JSON)")
    _add_space_args(sp)
    _add_bundle_args(sp)

    sp = sub.add_parser("table", help="print h^i(E(m)) over a twist range")
    _add_space_args(sp)
    _add_bundle_args(sp)
    sp.add_argument("--i", type=int, default=None, help="single cohomological degree")
    sp.add_argument("--m-range", type=str, required=True, help="inclusive a..b")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("fedder", help="Frobenius splitting membership test")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--f", type=str, default=None)
    sp.add_argument("--action", action="store_true", help="also compute the top-cohomology action")
    sp.add_argument("--sample", type=int, default=None, help="compare both routes on N random f")
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("decompose", help="split F_*O(k) on P^n into line bundles")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("hilbert", help="Hilbert function of a presentation matrix")
    sp.add_argument("--kind", choices=("frobpush", "b1"), required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, default=0)
    sp.add_argument("--f", type=str, required=True)
    sp.add_argument("--t-range", type=str, required=True, help="inclusive a..b")
    sp.add_argument("--check", action="store_true", help="cross-check against sheaf formulas")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("audit", help="re-derive a catalogued vanishing claim")
    sp.add_argument("--theorem", choices=THEOREMS, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--f", type=str, default=None)
    sp.add_argument("--json", action="store_true")

    return parser


_DISPATCH = {
    "classify": cmd_classify,
    "table": cmd_table,
    "fedder": cmd_fedder,
    "decompose": cmd_decompose,
    "hilbert": cmd_hilbert,
    "audit": cmd_audit,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return _DISPATCH[args.command](args, parser)


if __name__ == "__main__":
    sys.exit(main())
