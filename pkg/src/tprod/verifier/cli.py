"""Command line front end.

Exit codes: 0 when every scenario came out as claimed, 1 on a mismatch,
2 on usage errors and guard violations.
"""

from __future__ import annotations

import argparse
import json
import sys

from ..algcore import DEFAULT_SEED
from ..errors import UsageError
from ..scalar import FieldSpec
from .params import parse_m
from .scenarios import REGISTRY, Report, Scenario, SuiteSummary, run, run_suite
from . import scenarios as sc


def _field_arg(text: str) -> str:
    FieldSpec.parse(text)  # validate early
    return text


def _pairs_arg(text: str) -> list:
    """``1.1,1.2,2.1`` -> [[1, 1], [1, 2], [2, 1]]."""
    try:
        return [[int(a) for a in t.split(".")] for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad index list {text!r}; expected e.g. 1.1,1.2") from None


def _m_arg(text: str) -> list:
    return list(parse_m(text))


def _short(ev: dict) -> str:
    keys = ("chain", "target_rank", "product", "witness", "counterexample", "member",
            "product_nonzero", "quotient_dims", "orders", "reason")
    parts = []
    for k in keys:
        if k in ev and ev[k] is not None:
            v = ev[k]
            text = json.dumps(v) if not isinstance(v, str) else v
            parts.append(f"{k}={text if len(text) <= 60 else text[:57] + '...'}")
    if "cases" in ev:
        parts.append("members=" + "".join("1" if c["member"] else "0" for c in ev["cases"]))
    if "checks" in ev:
        parts.append("failures=" + str(sum(c["failures"] for c in ev["checks"])))
    return " ".join(parts)


def print_table(reports: list[Report], out=None) -> None:
    out = out or sys.stdout
    rows = [(r.verdict, {True: "yes", False: "NO", None: "-"}[r.as_claimed], f"{r.timing:.2f}s",
             r.scenario["name"], _short(r.evidence)) for r in reports]
    head = ("verdict", "as claimed", "time", "scenario", "evidence")
    widths = [max(len(x[i]) for x in rows + [head]) for i in range(4)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths) + "  {}"
    print(fmt.format(*head), file=out)
    for row in rows:
        print(fmt.format(*row), file=out)


def _emit(reports: list[Report], args) -> int:
    summary = SuiteSummary(reports)
    if args.json == "-":
        print(json.dumps([r.to_dict() for r in reports], sort_keys=True, indent=1))
    else:
        print_table(reports)
        if len(reports) > 1:
            print(f"\n{len(reports)} scenarios, {len(summary.mismatches)} mismatches, "
                  f"{len(summary.skipped)} skipped")
        if args.json:
            with open(args.json, "w") as fh:
                json.dump([r.to_dict() for r in reports], fh, sort_keys=True, indent=1)
                fh.write("\n")
    if args.verbose and args.json != "-":
        for r in reports:
            print(json.dumps(r.evidence, sort_keys=True, indent=1))
    return summary.exit_code()


def _single(args, name, kind, anchor, claim, p, runner) -> int:
    s = Scenario(name, kind, anchor, claim, p, runner, args.expect)
    return _emit([run(s)], args)


def cmd_suite(args) -> int:
    if args.list:
        for s in REGISTRY.values():
            print(f"{s.name:<34} {s.kind:<16} {s.anchor}")
        return 0
    names = args.only.split(",") if args.only else "all"
    return _emit(run_suite(names, jobs=args.jobs), args)


def cmd_containment(args) -> int:
    p = {"m": args.m, "target": args.target, "degree": args.degree, "field": args.field,
         "max_degree": args.max_degree}
    claim = f"product ideal m={args.m} inside T^({args.target}) at degree {args.degree}"
    return _single(args, "containment", "containment", "commutator-ideal", claim, p, sc.run_containment)


def cmd_noncontainment(args) -> int:
    p = {"m": args.m, "target": args.target, "field": args.field, "max_degree": args.max_degree}
    claim = f"canonical witness for m={args.m} outside T^({args.target})"
    return _single(args, "noncontainment", "non-containment", "sharp-general", claim, p,
                   sc.run_noncontainment)


def cmd_witness(args) -> int:
    if args.family == "grassmann":
        p = {"m": args.m, "field": args.field, "mu": args.mu, "mu_prime": args.mu_prime}
        return _single(args, "grassmann-witness", "witness", "grassmann-witness",
                       f"Grassmann witness for m={args.m}", p, sc.run_case1)
    p = {"m": args.m, "field": "fp:2", "max_rank": args.max_rank}
    return _single(args, "group-witness", "witness", "group-witness",
                   f"group-algebra witness for m={args.m}", p, sc.run_case2)


def cmd_lie_class(args) -> int:
    p = {"algebra": args.algebra, "limit": args.limit, "field": args.field}
    return _single(args, "lie-class", "vanishing", "witness-class",
                   f"L_{args.limit}({args.algebra}) = 0", p, sc.run_lie_class)


def cmd_member(args) -> int:
    p = {"field": args.field, "max_degree": args.max_degree,
         "cases": [[args.n, args.degree, args.expr, None]]}
    return _single(args, "tideal-member", "identity", "commutator-ideal",
                   f"{args.expr} in T^({args.n})", p, _member_runner)


def _member_runner(p: dict):
    ok, ev = sc.run_membership(p)
    return ev["cases"][0]["member"], ev


def cmd_lemma_cl(args) -> int:
    s, r = args.factors
    p = {"mode": args.mode, "lengths": [args.length], "trials": args.trials, "seed": args.seed,
         "s": s, "r": r, "field": args.field}
    return _single(args, "lemma-cl", "identity", "tensor-commutator",
                   f"closed form for commutators of length {args.length} in G (x) H", p, sc.run_lemma_cl)


def _common(p: argparse.ArgumentParser, expect: str = "verified") -> None:
    p.add_argument("--json", metavar="PATH", help="write JSON reports to PATH ('-' for stdout only)")
    p.add_argument("--expect", choices=("verified", "refuted", "any"), default=expect,
                   help=f"claimed verdict (default {expect})")
    p.add_argument("-v", "--verbose", action="store_true", help="print full evidence")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tprod", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run scenarios or a single containment check")
    vsub = verify.add_subparsers(dest="what", required=True)
    s = vsub.add_parser("suite", help="run the registered scenarios")
    s.add_argument("--only", help="comma separated scenario names or name prefixes")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--list", action="store_true", help="list scenarios and exit")
    s.add_argument("--json", metavar="PATH", help="also write JSON reports to PATH ('-' for stdout only)")
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(func=cmd_suite)

    c = vsub.add_parser("containment", help="T^(m1)...T^(mk) inside T^(target) at one degree")
    c.add_argument("--m", type=_m_arg, required=True)
    c.add_argument("--target", type=int, required=True)
    c.add_argument("--degree", type=int, required=True)
    c.add_argument("--field", type=_field_arg, default="q")
    c.add_argument("--max-degree", type=int, default=None, help="raise the degree guard")
    _common(c)
    c.set_defaults(func=cmd_containment)

    n = vsub.add_parser("noncontainment", help="canonical product witness outside T^(target)")
    n.add_argument("--m", type=_m_arg, required=True)
    n.add_argument("--target", type=int, required=True)
    n.add_argument("--field", type=_field_arg, default="q")
    n.add_argument("--max-degree", type=int, default=None)
    _common(n)
    n.set_defaults(func=cmd_noncontainment)

    w = sub.add_parser("witness", help="explicit witness algebras")
    wsub = w.add_subparsers(dest="family", required=True)
    g = wsub.add_parser("grassmann", help="E_N (x) E_r, characteristic != 2")
    g.add_argument("--m", type=_m_arg, required=True)
    g.add_argument("--field", type=_field_arg, default="q")
    g.add_argument("--mu", type=_pairs_arg, default=None, help="P in order of images, e.g. 2.1,1.1,1.2,2.2")
    g.add_argument("--mu-prime", type=_pairs_arg, default=None)
    _common(g)
    g.set_defaults(func=cmd_witness)
    gr = wsub.add_parser("group", help="F G_N / I (x) F G_r / I_r over fp:2")
    gr.add_argument("--m", type=_m_arg, required=True)
    gr.add_argument("--max-rank", type=int, default=None, help="raise the rank guard (at most 5)")
    _common(gr)
    gr.set_defaults(func=cmd_witness)

    lc = sub.add_parser("lie-class", help="lower central chain of a finite algebra")
    lc.add_argument("--algebra", required=True, help="grassmann:S[,R] | groupquot:N[,R] | universal:M[,R]")
    lc.add_argument("--limit", type=int, required=True)
    lc.add_argument("--field", type=_field_arg, default="q")
    _common(lc, expect="any")
    lc.set_defaults(func=cmd_lie_class)

    t = sub.add_parser("tideal", help="T-ideal queries")
    tsub = t.add_subparsers(dest="what", required=True)
    mem = tsub.add_parser("member", help="is a multilinear polynomial in T^(n)?")
    mem.add_argument("--n", type=int, required=True)
    mem.add_argument("--degree", type=int, required=True)
    mem.add_argument("--expr", required=True)
    mem.add_argument("--field", type=_field_arg, default="q")
    mem.add_argument("--max-degree", type=int, default=None)
    _common(mem, expect="any")
    mem.set_defaults(func=cmd_member)

    lm = sub.add_parser("lemma-cl", help="commutator closed form in G (x) H")
    lm.add_argument("--length", type=int, required=True)
    lm.add_argument("--mode", choices=("generators", "random"), default="generators")
    lm.add_argument("--trials", type=int, default=1)
    lm.add_argument("--seed", type=int, default=DEFAULT_SEED)
    lm.add_argument("--factors", type=lambda t: tuple(int(a) for a in t.split(",")), default=(3, 3),
                    help="Grassmann sizes S,R for random mode (default 3,3)")
    lm.add_argument("--field", type=_field_arg, default="q")
    _common(lm)
    lm.set_defaults(func=cmd_lemma_cl)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:  # argparse uses 2 for usage errors already
        return int(e.code or 0)
    try:
        return args.func(args)
    except (UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
