"""Command-line front end.

Exit codes: 0 ok, 1 usage error, 2 a check or oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import dimension as dm
from .codec import format_perm, parse_perm, path_to_perm, perm_to_path
from .combinatorics import eulerian_table, factorial
from .graph import Cylinder, Orientation, PathError
from .measures import (
    FiniteRank,
    Symmetric,
    WalkMode,
    WeightError,
    alpha_from_initial,
    check_consistency,
    check_invariance,
    default_alpha,
    permutation_chi_square,
    sample_paths,
)

EXIT_OK, EXIT_USAGE, EXIT_CHECK = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_cylinder(text: str) -> Cylinder:
    """Accept either the edge encoding ("L1,R1,R1") or a permutation ("2341")."""
    t = text.strip()
    try:
        if t and t[0].upper() in "LR":
            return Cylinder.parse(t)
        return perm_to_path(parse_perm(t))
    except (PathError, ValueError) as exc:
        raise UsageError(f"cannot parse cylinder {text!r}: {exc}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad integer list {text!r}") from exc


def _schedule(args) -> list[tuple[int, int]]:
    if args.schedule:
        pts = []
        for tok in args.schedule.split(","):
            try:
                n, k = tok.split(":")
                pts.append((int(n), int(k)))
            except ValueError as exc:
                raise UsageError(f"bad schedule point {tok!r}; expected n:k") from exc
        return pts
    return dm.diagonal_schedule(_int_list(args.n))


def _measure(args):
    if args.measure == "symmetric":
        return Symmetric()
    if args.measure == "symmetric-reverse":
        return Symmetric(Orientation.REVERSE)
    if args.alpha1 is not None:
        try:
            given = [Fraction(tok) for tok in args.alpha1.split(",")]
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad --alpha1 {args.alpha1!r}") from exc
        return FiniteRank(alpha_from_initial(given))
    return FiniteRank(default_alpha)


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands --------------------------------------------------------------

def cmd_eulerian(args) -> int:
    table = eulerian_table()
    bad = [n for n in range(args.max_n + 1) if sum(table.row(n)) != factorial(n + 1)]
    if args.format == "json":
        doc = {"rows": [[str(x) for x in table.row(n)] for n in range(args.max_n + 1)],
               "row_sum_check": "fail" if bad else "pass"}
        _emit(json.dumps(doc, indent=2) + "\n", args.output)
    elif args.format == "csv":
        lines = ["n,k,A"] + [f"{n},{k},{a}" for n in range(args.max_n + 1) for k, a in enumerate(table.row(n))]
        _emit("\n".join(lines) + "\n", args.output)
    else:
        lines = [f"{n:>3}: " + " ".join(str(a) for a in table.row(n)) for n in range(args.max_n + 1)]
        lines.append(f"row sums = (n+1)!: {'fail at ' + str(bad) if bad else 'ok'}")
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_CHECK if bad else EXIT_OK


def cmd_dim(args) -> int:
    F = parse_cylinder(args.cylinder)
    try:
        q = dm.DimQuery(F, args.n, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    chosen = dm.Variant(args.variant)
    slot = dm.dim_formula(q, dm.Variant.SLOT_CORRECTED)
    literal = dm.dim_formula(q, dm.Variant.AS_PRINTED)
    use_perm = {"auto": None, "graph": False, "both": True}[args.oracle]
    try:
        oracle = dm.dim_bruteforce(q, use_permutations=use_perm)
    except dm.OracleTooLarge as exc:
        raise UsageError(str(exc)) from exc
    checked = slot if chosen is dm.Variant.SLOT_CORRECTED else literal
    mismatch = checked != oracle.graph or not oracle.consistent
    doc = {
        "cylinder": F.encode(),
        "pattern": format_perm(path_to_perm(F)),
        "n": q.n,
        "k": q.k,
        "formula_slot": str(slot),
        "formula_literal": str(literal),
        "oracle_graph": str(oracle.graph),
        "oracle_permutations": None if oracle.permutations is None else str(oracle.permutations),
        "variant_checked": chosen.value,
        "literal_agrees": literal == oracle.graph,
        "status": "mismatch" if mismatch else "ok",
    }
    if args.format == "json":
        _emit(json.dumps(doc, indent=2) + "\n", args.output)
    else:
        lines = [
            f"cylinder {doc['cylinder']}  pi(F)={doc['pattern']}  target ({q.n},{q.k})",
            f"  formula (slot)    {slot}",
            f"  formula (literal) {literal}" + ("" if doc["literal_agrees"] else "   <- differs from oracle"),
            f"  oracle graph DP   {oracle.graph}",
        ]
        if oracle.permutations is not None:
            lines.append(f"  oracle perm scan  {oracle.permutations}")
        lines.append(f"  status: {doc['status']} (checked variant: {chosen.value})")
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_CHECK if mismatch else EXIT_OK


def cmd_ratio(args) -> int:
    F = parse_cylinder(args.cylinder_a)
    G = parse_cylinder(args.cylinder_b)
    if len(F) != len(G):
        raise UsageError("cylinders must have the same length")
    pts = _schedule(args)
    for n, k in pts:
        if n < len(F) or not 0 <= k <= n:
            raise UsageError(f"schedule point ({n},{k}) is out of range")
    rows = dm.ratio_table(F, G, pts, dm.Variant(args.variant))
    if args.format == "json":
        _emit(dm.ratio_rows_to_json(rows, F, G) + "\n", args.output)
    elif args.format == "csv":
        _emit(dm.ratio_rows_to_csv(rows), args.output)
    else:
        lines = [f"F={F.encode()} ({format_perm(path_to_perm(F))})  F'={G.encode()} ({format_perm(path_to_perm(G))})",
                 f"{'n':>5} {'k':>5} {'|ratio-1|':>14}"]
        for r in rows:
            dev = r.as_dict()["abs_dev"] or "undefined"
            lines.append(f"{r.n:>5} {r.k:>5} {dev:>14}")
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if all(r.defined for r in rows) else EXIT_CHECK


def cmd_perm2path(args) -> int:
    try:
        F = perm_to_path(parse_perm(args.permutation))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(F.encode())
    return EXIT_OK


def cmd_path2perm(args) -> int:
    F = parse_cylinder(args.cylinder)
    print(format_perm(path_to_perm(F)))
    return EXIT_OK


def cmd_sample(args) -> int:
    spec = _measure(args)
    if args.chi_square:
        if spec.orientation is not Orientation.STANDARD:
            raise UsageError("the chi-square test needs a standard-orientation measure")
        res = permutation_chi_square(spec, args.m, args.count, args.seed)
        ok = res.passed(args.significance)
        doc = {"m": args.m, "count": args.count, "seed": args.seed, "statistic": res.statistic,
               "dof": res.dof, "p_value": res.p_value, "significance": args.significance,
               "status": "pass" if ok else "fail"}
        if args.format == "json":
            _emit(json.dumps(doc, indent=2) + "\n", args.output)
        else:
            _emit("".join(f"{k}: {v}\n" for k, v in doc.items()), args.output)
        return EXIT_OK if ok else EXIT_CHECK
    out = []
    for c in sample_paths(spec, args.m - 1, args.count, args.seed):
        if spec.orientation is Orientation.STANDARD:
            out.append(f"{c.encode()}\t{format_perm(path_to_perm(c))}")
        else:
            out.append(c.encode())
    _emit("\n".join(out) + "\n", args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    spec = _measure(args)
    which = [args.kind] if args.kind != "all" else ["invariance", "consistency"]
    reports = []
    for kind in which:
        fn = check_invariance if kind == "invariance" else check_consistency
        reports.append(fn(spec, args.depth))
    if args.format == "json":
        doc = reports[0].as_dict() if len(reports) == 1 else [r.as_dict() for r in reports]
        _emit(json.dumps(doc, indent=2) + "\n", args.output)
    else:
        lines = []
        for r in reports:
            lines.append(f"{r.check} [{r.spec}, depth {r.depth}]: {r.status}")
            for v in r.violations[:10]:
                lines.append(f"  level {v.level} column {v.column}: " + ", ".join(str(x) for x in v.measures))
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK


def cmd_walk(args) -> int:
    from .measures import reinforced_walk

    trace = reinforced_walk(args.steps, WalkMode(args.mode), args.seed)
    if args.format == "csv":
        _emit(trace.to_csv(), args.output)
    elif args.format == "json":
        _emit(json.dumps({"summary": trace.summary(), "k_n": trace.columns}) + "\n", args.output)
    else:
        _emit("".join(f"{k}: {v}\n" for k, v in trace.summary().items()), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="euler-adic", description="Euler adic system: Eulerian numbers, codec, dimensions, measures.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, formats=("table", "csv", "json")):
        sp.add_argument("--format", choices=formats, default="table")
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")

    sp = sub.add_parser("eulerian", help="dump the Eulerian triangle")
    sp.add_argument("--max-n", type=int, default=10)
    common(sp)
    sp.set_defaults(func=cmd_eulerian)

    sp = sub.add_parser("dim", help="dim(F,(n,k)) by formula and oracles")
    sp.add_argument("--cylinder", required=True, help='edges "L1,R1,R1" or a permutation "2341"')
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--variant", choices=[v.value for v in dm.Variant], default="slot")
    sp.add_argument("--oracle", choices=["auto", "graph", "both"], default="auto",
                    help="auto runs the permutation scan only for n <= %d" % dm.PERM_ORACLE_MAX_N)
    common(sp, ("table", "json"))
    sp.set_defaults(func=cmd_dim)

    sp = sub.add_parser("ratio", help="dim(F,(n,k)) / dim(F',(n,k)) along a schedule")
    sp.add_argument("--cylinder-a", required=True)
    sp.add_argument("--cylinder-b", required=True)
    sp.add_argument("--n", default="10,20,40,80", help="levels for the diagonal schedule k = n // 2")
    sp.add_argument("--schedule", help="explicit points n:k,n:k,... (overrides --n)")
    sp.add_argument("--variant", choices=[v.value for v in dm.Variant], default="slot")
    common(sp, ("csv", "json", "table"))
    sp.set_defaults(func=cmd_ratio)

    sp = sub.add_parser("perm2path", help="permutation -> cylinder")
    sp.add_argument("permutation")
    sp.set_defaults(func=cmd_perm2path)

    sp = sub.add_parser("path2perm", help="cylinder -> permutation")
    sp.add_argument("cylinder")
    sp.set_defaults(func=cmd_path2perm)

    def measure_args(sp):
        sp.add_argument("--measure", choices=["symmetric", "symmetric-reverse", "finite-rank"], default="symmetric")
        sp.add_argument("--alpha1", help="finite-rank: alpha_1[,alpha_2,...] as p/q, continued by the recursion "
                             "(default alpha_n = 1/(2(n+1)))")

    sp = sub.add_parser("sample", help="sample paths/permutations, optionally chi-square test them")
    measure_args(sp)
    sp.add_argument("--m", type=int, default=4, help="permutation length (path length m-1)")
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--chi-square", action="store_true")
    sp.add_argument("--significance", type=float, default=0.01)
    common(sp, ("table", "json"))
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("check", help="exact invariance / consistency checks")
    measure_args(sp)
    sp.add_argument("--depth", type=int, default=7)
    sp.add_argument("--kind", choices=["invariance", "consistency", "all"], default="all")
    common(sp, ("table", "json"))
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser(
        "walk",
        help="two-loop reinforced walk; loop A is the right turn, k_n = times A chosen in n steps",
    )
    sp.add_argument("--mode", choices=[m.value for m in WalkMode], default="negative")
    sp.add_argument("--steps", type=int, default=10000)
    sp.add_argument("--seed", type=int, required=True)
    common(sp, ("table", "csv", "json"))
    sp.set_defaults(func=cmd_walk)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, WeightError) as exc:
        print(f"euler-adic: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
