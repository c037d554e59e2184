"""Command-line front end: ``invtrees <command> ...``.

Exit status: 0 on success, 1 when a verification finds a mismatch, 2 on a
usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import oracle
from .closure import l_tau, parse_pattern_list
from .discover import describe, discover, export_rules
from .gentree import BudgetExceeded, level_sizes, subtree_level_counts
from .registry import CLASSES, CatalogClass, get_class, load_rules
from .ruledsl import RuleError, level_counts, parse_rules, validate_against_discovery
from .seqcore import INVERSION, RGS, Pattern, contains, is_valid, kind_from_name, parse_word
from .series import SERIES_CATALOG, FormulaId, SeriesError, catalog_series, detect_offset, formula_terms

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2
ENGINES = ("oracle", "rules", "series", "formula", "terms")


class UsageError(Exception):
    pass


def _emit(rows, header, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "csv":
        print(",".join(header), file=out)
        for r in rows:
            print(",".join("" if v is None else str(v) for v in r), file=out)
        return
    cells = [[str(h) for h in header]] + [["" if v is None else str(v) for v in r] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    for row in cells:
        print("  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip(), file=out)


def _timing(args, label: str, t0: float) -> None:
    if args.timing:
        print(f"# {label}: {time.perf_counter() - t0:.3f}s", file=sys.stderr)


def _pattern_set(args):
    if not args.patterns:
        raise UsageError("--patterns is required")
    return parse_pattern_list(args.patterns, kind_from_name(args.kind))


# ---------------------------------------------------------------------------
# commands


def cmd_check(args) -> int:
    kind = kind_from_name(args.kind)
    w = parse_word(args.word)
    valid = is_valid(w, kind)
    rows = [("valid", str(valid).lower())]
    if args.patterns:
        B = parse_pattern_list(args.patterns, kind if kind in (INVERSION, RGS) else INVERSION)
        rows += [(f"contains {p}", str(contains(w, p)).lower()) for p in B.raw]
    _emit(rows, ("property", "value"), args.format)
    return EXIT_OK


def cmd_closure(args) -> int:
    for q in l_tau(Pattern.parse(args.pattern, INVERSION)):
        print(q)
    return EXIT_OK


def cmd_count(args) -> int:
    B = _pattern_set(args)
    t0 = time.perf_counter()
    if args.method == "tree":
        counts = level_sizes(B, args.n, budget=args.budget)
        if B.kind == RGS:
            counts = [1] + counts[:-1]
        notes = []
    else:
        rep = oracle.count_avoiders(B, args.n, method=args.method, threads=args.threads,
                                    budget=args.budget)
        counts, notes = rep.counts, rep.notes
    _timing(args, "count", t0)
    _emit(enumerate(counts), ("n", "count"), args.format)
    for note in notes:
        print(f"# {note}", file=sys.stderr)
    return EXIT_OK


def cmd_subtree(args) -> int:
    B = _pattern_set(args)
    counts = subtree_level_counts(parse_word(args.prefix), B, args.depth, budget=args.budget)
    _emit(enumerate(counts), ("level", "nodes"), args.format)
    return EXIT_OK


def cmd_extensions(args) -> int:
    B = parse_pattern_list(args.patterns, INVERSION)
    counts = oracle.capped_extension_counts(parse_word(args.prefix), args.cap, B, args.maxlen,
                                            budget=args.budget)
    _emit(enumerate(counts), ("length", "words"), args.format)
    return EXIT_OK


def cmd_discover(args) -> int:
    B = _pattern_set(args)
    t0 = time.perf_counter()
    table, rules = discover(B, args.depth, depth=args.shape_depth, budget=args.budget)
    _timing(args, "discover", t0)
    doc = export_rules(table, rules)
    if args.out:
        Path(args.out).write_text(doc)
    if args.format == "csv" or not args.out:
        if args.format == "csv":
            sys.stdout.write(doc)
        else:
            print(f"# {rules.status} after {rules.depth} levels, {len(table)} classes")
            for line in describe(table, rules):
                print(line)
    return EXIT_OK


def _load_rule_args(args):
    if args.file:
        return parse_rules(Path(args.file).read_text(),
                           {"L": args.ell} if args.ell is not None else None, name=args.file)
    if not args.cls:
        raise UsageError("give --class or --file")
    c = get_class(args.cls)
    if c.rules is None:
        raise UsageError(f"class {c.name} has no rule file")
    return load_rules(c.rules, args.ell if c.param else None)


def cmd_rules(args) -> int:
    rules = _load_rule_args(args)
    if args.action == "count":
        t0 = time.perf_counter()
        counts = level_counts(rules, args.n)
        _timing(args, "rules", t0)
        _emit(enumerate(counts), ("n", "count"), args.format)
        return EXIT_OK
    if args.patterns:
        B = _pattern_set(args)
    elif args.cls:
        B = get_class(args.cls).pattern_set(args.ell)
    else:
        raise UsageError("validate needs --patterns or --class")
    rep = validate_against_discovery(rules, B, args.depth)
    print(rep)
    return EXIT_OK if rep.consistent else EXIT_MISMATCH


def cmd_series(args) -> int:
    fid = FormulaId.parse(args.formula)
    entry = SERIES_CATALOG.get(fid.name)
    if entry is None:
        raise UsageError(f"unknown formula {fid.name!r}; known: {', '.join(SERIES_CATALOG)}")
    shift = entry.count_shift if args.as_counts else 0
    s = catalog_series(fid, args.n + shift)
    rows = []
    for k in range(args.n + 1):
        c = s[k + shift]
        rows.append((k, c.numerator if c.denominator == 1 else c))
    _emit(rows, ("n" if args.as_counts else "k", "coeff"), args.format)
    return EXIT_OK


def cmd_wilf(args) -> int:
    kind = kind_from_name(args.kind)
    left = parse_pattern_list(args.left, kind)
    right = parse_pattern_list(args.right, kind)
    res = oracle.wilf_check(left, right, args.n, threads=args.threads, budget=args.budget)
    rows = [(n, a, b) for n, (a, b) in enumerate(zip(res.left, res.right))]
    _emit(rows, ("n", args.left, args.right), args.format)
    if res.equal:
        print(f"# equal for n <= {args.n}")
        return EXIT_OK
    print(f"# first divergence at n = {res.first_divergence}")
    return EXIT_MISMATCH


# ---------------------------------------------------------------------------
# verify


@dataclass
class VerifyPlan:
    cls: CatalogClass
    N: int
    engines: tuple[str, ...]
    ell: int | None = None
    oracle_max: int = 11
    threads: int | None = None
    budget: int = oracle.DEFAULT_BUDGET
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if len(self.engines) < 2:
            raise UsageError("verify needs at least two engines")
        for e in self.engines:
            if e not in ENGINES:
                raise UsageError(f"unknown engine {e!r}")


def available_engines(c: CatalogClass) -> tuple[str, ...]:
    out = ["oracle"]
    if c.rules:
        out.append("rules")
    if c.series:
        out.append("series")
    if c.formula:
        out.append("formula")
    if c.terms:
        out.append("terms")
    return tuple(out)


def run_verify(plan: VerifyPlan, timing: bool = False) -> tuple[dict[str, list], bool]:
    """Columns per engine (n = 0..N, None where an engine has no value) and
    whether all engines agree wherever two or more have a value."""
    c, N = plan.cls, plan.N
    rgs = c.kind == RGS
    cols: dict[str, list] = {}
    for eng in plan.engines:
        t0 = time.perf_counter()
        col: list = [None] * (N + 1)
        if eng == "oracle":
            top = min(N, plan.oracle_max)
            rep = oracle.count_avoiders(c.pattern_set(plan.ell), top, threads=plan.threads,
                                        budget=plan.budget)
            if rep.truncated:
                raise BudgetExceeded("oracle budget exhausted")
            col[: top + 1] = rep.counts
        elif eng == "rules":
            if not c.rules:
                raise UsageError(f"class {c.name} has no rule file")
            lc = level_counts(load_rules(c.rules, plan.ell if c.param else None), N)
            col = [1] + lc[:N] if rgs else lc
        elif eng == "series":
            if not c.series:
                raise UsageError(f"class {c.name} has no generating function")
            shift = SERIES_CATALOG[FormulaId.parse(c.series_id(plan.ell)).name].count_shift
            s = catalog_series(c.series_id(plan.ell), N + shift)
            col = [None if n < c.series_from else s.int_terms(n + shift, n + shift + 1)[0]
                   for n in range(N + 1)]
        elif eng == "terms":
            if not c.terms:
                raise UsageError(f"class {c.name} has no reference terms")
            for n, v in enumerate(c.terms[: N + 1]):
                col[n] = v
        cols[eng] = col
        if timing:
            print(f"# {eng}: {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    if "formula" in plan.engines:
        if not c.formula:
            raise UsageError(f"class {c.name} has no closed formula")
        ref = next((cols[e] for e in cols if e != "formula"), None)
        f = formula_terms(c.formula, N + 1)
        known = [v for v in ref if v is not None] if ref else []
        offset = detect_offset(f, known) if known else 0
        if offset is None:
            plan.notes.append("formula: no offset in {0, 1} aligns it with the other engines")
            offset = 0
        elif offset:
            plan.notes.append(f"formula offset +{offset}: value at n+{offset} counts level n")
        cols["formula"] = [f[n + offset] if n + offset < len(f) else None for n in range(N + 1)]
    ok = True
    for n in range(N + 1):
        vals = {cols[e][n] for e in plan.engines if cols[e][n] is not None}
        if len(vals) > 1:
            ok = False
    return {e: cols[e] for e in plan.engines}, ok


def cmd_verify(args) -> int:
    c = get_class(args.cls)
    if c.param and args.ell is None:
        raise UsageError(f"class {c.name} needs --ell")
    engines = tuple(args.engines.split(",")) if args.engines else available_engines(c)
    plan = VerifyPlan(c, args.n, engines, args.ell, args.oracle_max, args.threads, args.budget)
    cols, ok = run_verify(plan, timing=args.timing)
    rows = []
    for n in range(args.n + 1):
        vals = [cols[e][n] for e in plan.engines]
        present = [v for v in vals if v is not None]
        status = "" if len(present) < 2 else ("ok" if len(set(present)) == 1 else "MISMATCH")
        rows.append((n, *vals, status))
    _emit(rows, ("n", *plan.engines, "status"), args.format)
    for note in plan.notes:
        print(f"# {note}")
    print(f"# {c.name}: {'all engines agree' if ok else 'MISMATCH'}")
    return EXIT_OK if ok else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv"), default="text")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads for brute-force counting (default: all cores)")
    common.add_argument("--timing", action="store_true", help="report elapsed times on stderr")
    common.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET,
                        help="node budget for tree traversals")

    pat = argparse.ArgumentParser(add_help=False)
    pat.add_argument("--kind", default="inv", help="inv or rgs")
    pat.add_argument("--patterns", help="comma-separated patterns, e.g. 000,021")

    p = argparse.ArgumentParser(prog="invtrees", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common, pat], help="validity and containment of a word")
    s.add_argument("--word", required=True)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("closure", parents=[common], help="minimal inversion-sequence extensions")
    s.add_argument("--pattern", required=True)
    s.set_defaults(func=cmd_closure)

    s = sub.add_parser("count", parents=[common, pat], help="avoider counts for n = 0..N")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--method", choices=("dfs", "filter", "tree"), default="dfs")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("subtree", parents=[common, pat], help="level sizes below a node")
    s.add_argument("--prefix", required=True)
    s.add_argument("--depth", type=int, required=True)
    s.set_defaults(func=cmd_subtree)

    s = sub.add_parser("extensions", parents=[common], help="capped-alphabet extension counts")
    s.add_argument("--prefix", required=True)
    s.add_argument("--cap", type=int, required=True)
    s.add_argument("--patterns", required=True)
    s.add_argument("--maxlen", type=int, required=True)
    s.set_defaults(func=cmd_extensions)

    s = sub.add_parser("discover", parents=[common, pat], help="classes and succession rules")
    s.add_argument("--depth", type=int, required=True, help="number of levels to explore")
    s.add_argument("--shape-depth", type=int, default=None,
                   help="subtree truncation used to compare nodes (default 2t)")
    s.add_argument("--out", help="write the JSON rule document here")
    s.set_defaults(func=cmd_discover)

    s = sub.add_parser("rules", parents=[common, pat], help="count with or validate a rule file")
    s.add_argument("action", choices=("count", "validate"))
    s.add_argument("--class", dest="cls", help=f"catalog class ({', '.join(CLASSES)})")
    s.add_argument("--file", help="rule file in the DSL")
    s.add_argument("--ell", type=int, default=None)
    s.add_argument("--n", type=int, default=10)
    s.add_argument("--depth", type=int, default=8)
    s.set_defaults(func=cmd_rules)

    s = sub.add_parser("series", parents=[common], help="coefficients of a catalog series")
    s.add_argument("--formula", required=True, help="e.g. thAA2 or ext_m_upto(3)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--as-counts", action="store_true",
                   help="shift so that line n is the count for size n")
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("wilf", parents=[common], help="compare two avoider sequences")
    s.add_argument("--kind", default="inv")
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_wilf)

    s = sub.add_parser("verify", parents=[common], help="cross-check engines on a catalog class")
    s.add_argument("--class", dest="cls", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--engines", help=f"comma-separated subset of {','.join(ENGINES)}")
    s.add_argument("--ell", type=int, default=None)
    s.add_argument("--oracle-max", type=int, default=11,
                   help="largest n handed to the brute-force oracle")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError, RuleError, SeriesError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"invtrees {args.command}: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"invtrees {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
