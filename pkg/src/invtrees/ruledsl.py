"""Parametric succession rules: a small text language, exact level counting,
and replay against the concrete pattern-avoidance tree.

One declaration per line::

    root: a[1]
    let L = 4
    a[m] -> a[m+1], range(j=1..m: b[m,j]) ; guard: m>=1
    b[m,j] -> repeat(j: b[m,j-1]), range(i=j..m+1: b[m+1,i]) ; guard: 1<=j, j<=m
    weight T[m] = ext_m_upto(m) ; guard: m>=1
    f -> f

All arithmetic is affine in the template variables, range indices and
``let`` constants.  ``range`` is ascending and empty when its lower bound
exceeds the upper one; ``repeat`` with a negative count is an error.  A
``weight`` family is a terminal label whose subtree sizes, level by level,
are the coefficients of a catalog series.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product
from typing import NamedTuple, Sequence

from .closure import PatternSet
from .gentree import Automaton, BudgetExceeded
from .seqcore import RGS
from .series import SERIES_CATALOG, FormulaId, catalog_series


class RuleError(ValueError):
    pass


class DSLSyntaxError(RuleError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


class ParamLabel(NamedTuple):
    family: str
    params: tuple[int, ...] = ()

    def __str__(self):
        if not self.params:
            return self.family
        return f"{self.family}[{','.join(map(str, self.params))}]"


# ---------------------------------------------------------------------------
# affine expressions


@dataclass(frozen=True)
class Affine:
    const: int = 0
    coefs: tuple[tuple[str, int], ...] = ()

    @staticmethod
    def of(const: int = 0, coefs: dict | None = None) -> "Affine":
        items = tuple(sorted((k, v) for k, v in (coefs or {}).items() if v))
        return Affine(const, items)

    def __add__(self, other: "Affine") -> "Affine":
        d = dict(self.coefs)
        for k, v in other.coefs:
            d[k] = d.get(k, 0) + v
        return Affine.of(self.const + other.const, d)

    def scale(self, c: int) -> "Affine":
        return Affine.of(self.const * c, {k: v * c for k, v in self.coefs})

    @property
    def is_const(self) -> bool:
        return not self.coefs

    def vars(self) -> set[str]:
        return {k for k, _ in self.coefs}

    def __call__(self, env: dict[str, int]) -> int:
        total = self.const
        for k, v in self.coefs:
            total += v * env[k]
        return total

    def __str__(self):
        parts = [f"{v}*{k}" if v != 1 else k for k, v in self.coefs]
        if self.const or not parts:
            parts.append(str(self.const))
        return "+".join(parts)


# ---------------------------------------------------------------------------
# syntax tree


@dataclass(frozen=True)
class LabelExpr:
    family: str
    args: tuple[Affine, ...] = ()

    def eval(self, env) -> ParamLabel:
        return ParamLabel(self.family, tuple(a(env) for a in self.args))


@dataclass(frozen=True)
class Single:
    label: LabelExpr


@dataclass(frozen=True)
class Repeat:
    count: Affine
    label: LabelExpr


@dataclass(frozen=True)
class Range:
    index: str
    lower: Affine
    upper: Affine
    label: LabelExpr


@dataclass(frozen=True)
class Comparison:
    left: Affine
    op: str
    right: Affine

    def holds(self, env) -> bool:
        a, b = self.left(env), self.right(env)
        return {"<=": a <= b, "<": a < b, ">=": a >= b, ">": a > b, "=": a == b,
                "==": a == b, "!=": a != b}[self.op]


@dataclass
class RuleTemplate:
    family: str
    slots: tuple[str | int, ...]
    guard: tuple[Comparison, ...]
    children: tuple
    line: int = 0

    def bind(self, params: tuple[int, ...], consts: dict[str, int]) -> dict | None:
        if len(params) != len(self.slots):
            return None
        env = dict(consts)
        for slot, v in zip(self.slots, params):
            if isinstance(slot, int):
                if slot != v:
                    return None
            else:
                env[slot] = v
        if all(c.holds(env) for c in self.guard):
            return env
        return None


@dataclass
class WeightFamily:
    family: str
    slots: tuple[str | int, ...]
    guard: tuple[Comparison, ...]
    series: str
    arg: Affine | None
    line: int = 0

    bind = RuleTemplate.bind


@dataclass
class ParamRuleSet:
    root: ParamLabel
    templates: list[RuleTemplate]
    weights: list[WeightFamily] = field(default_factory=list)
    consts: dict[str, int] = field(default_factory=dict)
    arity: dict[str, int] = field(default_factory=dict)
    name: str = ""

    @property
    def families(self) -> list[str]:
        return list(self.arity)

    def __post_init__(self):
        self._cache: dict[ParamLabel, list[ParamLabel]] = {}
        self._wcache: dict[tuple[ParamLabel, int], list[int]] = {}

    # dispatch ---------------------------------------------------------------
    def is_weight(self, label: ParamLabel) -> bool:
        return any(w.family == label.family for w in self.weights)

    def _match(self, label: ParamLabel):
        hits = []
        for t in self.templates:
            if t.family == label.family:
                env = t.bind(label.params, self.consts)
                if env is not None:
                    hits.append((t, env))
        return hits

    def expand(self, label: ParamLabel) -> list[ParamLabel]:
        """Ordered child labels of ``label``."""
        kids = self._cache.get(label)
        if kids is not None:
            return kids
        hits = self._match(label)
        if not hits:
            raise RuleError(f"no template matches label {label}")
        if len(hits) > 1:
            lines = ", ".join(str(t.line) for t, _ in hits)
            raise RuleError(f"label {label} matches several templates (lines {lines})")
        template, env = hits[0]
        kids = []
        for item in template.children:
            if isinstance(item, Single):
                kids.append(item.label.eval(env))
            elif isinstance(item, Repeat):
                n = item.count(env)
                if n < 0:
                    raise RuleError(f"negative repeat count {n} expanding {label}")
                kids.extend([item.label.eval(env)] * n)
            else:
                lo, hi = item.lower(env), item.upper(env)
                for i in range(lo, hi + 1):
                    env[item.index] = i
                    kids.append(item.label.eval(env))
                env.pop(item.index, None)
        for k in kids:
            if self.arity.get(k.family) != len(k.params):
                raise RuleError(f"child {k} of {label} has the wrong arity")
        self._cache[label] = kids
        return kids

    def weights_of(self, label: ParamLabel, length: int) -> list[int]:
        """Subtree sizes of a weight label at relative levels 0..length-1."""
        key = (label, length)
        got = self._wcache.get(key)
        if got is not None:
            return got
        hits = []
        for w in self.weights:
            if w.family == label.family:
                env = w.bind(label.params, self.consts)
                if env is not None:
                    hits.append((w, env))
        if len(hits) != 1:
            raise RuleError(f"weight label {label} matches {len(hits)} declarations")
        w, env = hits[0]
        fid = FormulaId(w.series, None if w.arg is None else w.arg(env))
        shift = SERIES_CATALOG[w.series].count_shift
        s = catalog_series(fid, length - 1 + shift)
        got = s.int_terms(shift, length + shift)
        self._wcache[key] = got
        return got


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|"
                    r"(?P<op>->|\.\.|<=|>=|==|!=|[\[\](),:;=<>+\-*]))")


class _Tokens:
    def __init__(self, text: str, line: int):
        self.toks: list[tuple[str, str, int]] = []
        self.line = line
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                col = pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
                raise DSLSyntaxError(f"unexpected character {text[col - 1]!r}", line, col)
            kind = m.lastgroup
            start = m.start(kind)
            self.toks.append((kind, m.group(kind), start + 1))
            pos = m.end()
        self.i = 0
        self.end_col = len(text) + 1

    def peek(self, k: int = 0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else ("eof", "", self.end_col)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, msg: str, tok=None):
        tok = tok or self.peek()
        raise DSLSyntaxError(msg, self.line, tok[2])

    def expect(self, value: str):
        tok = self.next()
        if tok[1] != value or tok[0] == "eof":
            self.error(f"expected {value!r}, found {tok[1] or 'end of line'!r}", tok)
        return tok

    def accept(self, value: str) -> bool:
        if self.peek()[1] == value and self.peek()[0] != "eof":
            self.i += 1
            return True
        return False

    def name(self) -> str:
        tok = self.next()
        if tok[0] != "name":
            self.error(f"expected a name, found {tok[1] or 'end of line'!r}", tok)
        return tok[1]

    def at_end(self) -> bool:
        return self.peek()[0] == "eof"


def _expr(ts: _Tokens, scope: set[str]) -> Affine:
    result = _term(ts, scope)
    while ts.peek()[1] in ("+", "-") and ts.peek()[0] == "op":
        op = ts.next()[1]
        rhs = _term(ts, scope)
        result = result + (rhs if op == "+" else rhs.scale(-1))
    return result


def _term(ts: _Tokens, scope: set[str]) -> Affine:
    neg = False
    while ts.peek()[1] == "-" and ts.peek()[0] == "op":
        ts.next()
        neg = not neg
    start = ts.peek()
    value = _factor(ts, scope)
    while ts.peek()[1] == "*" and ts.peek()[0] == "op":
        ts.next()
        rhs = _factor(ts, scope)
        if value.is_const:
            value = rhs.scale(value.const)
        elif rhs.is_const:
            value = value.scale(rhs.const)
        else:
            ts.error("non-affine expression (product of two variables)", start)
    return value.scale(-1) if neg else value


def _factor(ts: _Tokens, scope: set[str]) -> Affine:
    tok = ts.next()
    if tok[0] == "num":
        return Affine.of(int(tok[1]))
    if tok[0] == "name":
        if tok[1] not in scope:
            ts.error(f"unknown variable {tok[1]!r}", tok)
        return Affine.of(0, {tok[1]: 1})
    if tok[1] == "(":
        e = _expr(ts, scope)
        ts.expect(")")
        return e
    ts.error(f"expected an expression, found {tok[1] or 'end of line'!r}", tok)


def _label(ts: _Tokens, scope: set[str]) -> LabelExpr:
    fam = ts.name()
    args = []
    if ts.accept("["):
        if not ts.accept("]"):
            args.append(_expr(ts, scope))
            while ts.accept(","):
                args.append(_expr(ts, scope))
            ts.expect("]")
    return LabelExpr(fam, tuple(args))


def _item(ts: _Tokens, scope: set[str]):
    tok = ts.peek()
    if tok[0] == "name" and tok[1] == "repeat" and ts.peek(1)[1] == "(":
        ts.next()
        ts.expect("(")
        count = _expr(ts, scope)
        ts.expect(":")
        lab = _label(ts, scope)
        ts.expect(")")
        return Repeat(count, lab)
    if tok[0] == "name" and tok[1] == "range" and ts.peek(1)[1] == "(":
        ts.next()
        ts.expect("(")
        idx_tok = ts.peek()
        idx = ts.name()
        if idx in scope:
            ts.error(f"range index {idx!r} shadows another variable", idx_tok)
        ts.expect("=")
        lo = _expr(ts, scope)
        ts.expect("..")
        hi = _expr(ts, scope)
        ts.expect(":")
        lab = _label(ts, scope | {idx})
        ts.expect(")")
        return Range(idx, lo, hi, lab)
    return Single(_label(ts, scope))


def _lhs(ts: _Tokens) -> tuple[str, tuple[str | int, ...]]:
    fam = ts.name()
    slots: list[str | int] = []
    if ts.accept("["):
        if not ts.accept("]"):
            while True:
                tok = ts.next()
                if tok[0] == "num":
                    slots.append(int(tok[1]))
                elif tok[0] == "name":
                    if tok[1] in slots:
                        ts.error(f"repeated variable {tok[1]!r}", tok)
                    slots.append(tok[1])
                else:
                    ts.error("expected a variable or integer", tok)
                if ts.accept("]"):
                    break
                ts.expect(",")
    return fam, tuple(slots)


def _guard(ts: _Tokens, scope: set[str]) -> tuple[Comparison, ...]:
    out = []
    if not ts.accept(";"):
        return ()
    tok = ts.next()
    if tok[1] != "guard":
        ts.error("expected 'guard:' after ';'", tok)
    ts.expect(":")
    while True:
        left = _expr(ts, scope)
        chain = False
        while ts.peek()[1] in ("<=", "<", ">=", ">", "=", "==", "!="):
            op = ts.next()[1]
            right = _expr(ts, scope)
            out.append(Comparison(left, op, right))
            left = right
            chain = True
        if not chain:
            ts.error("expected a comparison")
        if not ts.accept(","):
            break
    if not ts.at_end():
        ts.error(f"unexpected {ts.peek()[1]!r}")
    return tuple(out)


OVERLAP_BOX = range(-1, 41)


def parse_rules(doc: str, consts: dict[str, int] | None = None, name: str = "") -> ParamRuleSet:
    """Parse a rule document; ``consts`` override its ``let`` values."""
    overrides = dict(consts or {})
    lets: dict[str, int] = {}
    templates: list[RuleTemplate] = []
    weights: list[WeightFamily] = []
    arity: dict[str, int] = {}
    root_expr = None
    root_line = 0
    uses: list[tuple[LabelExpr, int, int]] = []

    def note_arity(fam, n, line, col):
        if arity.setdefault(fam, n) != n:
            raise DSLSyntaxError(f"family {fam!r} used with {n} parameters, "
                                 f"declared with {arity[fam]}", line, col)

    for lineno, raw in enumerate(doc.splitlines(), 1):
        text = raw.split("#", 1)[0]
        if not text.strip():
            continue
        ts = _Tokens(text, lineno)
        first = ts.peek()
        if first[1] == "root" and ts.peek(1)[1] == ":":
            ts.next()
            ts.next()
            root_expr = _label(ts, set(lets))
            root_line = lineno
            if not ts.at_end():
                ts.error(f"unexpected {ts.peek()[1]!r}")
            uses.append((root_expr, lineno, first[2]))
            continue
        if first[1] == "let" and ts.peek(1)[0] == "name":
            ts.next()
            nm = ts.name()
            ts.expect("=")
            val = _expr(ts, set(lets))
            if not val.is_const:
                val = Affine.of(val(lets))
            lets[nm] = overrides.get(nm, val.const)
            if not ts.at_end():
                ts.error(f"unexpected {ts.peek()[1]!r}")
            continue
        if first[1] == "weight" and ts.peek(1)[0] == "name":
            ts.next()
            fam, slots = _lhs(ts)
            note_arity(fam, len(slots), lineno, first[2])
            scope = set(lets) | {s for s in slots if isinstance(s, str)}
            ts.expect("=")
            stok = ts.peek()
            series = ts.name()
            if series not in SERIES_CATALOG:
                ts.error(f"unknown series {series!r}", stok)
            arg = None
            if ts.accept("("):
                arg = _expr(ts, scope)
                ts.expect(")")
            guard = _guard(ts, scope)
            weights.append(WeightFamily(fam, slots, guard, series, arg, lineno))
            continue
        fam, slots = _lhs(ts)
        note_arity(fam, len(slots), lineno, first[2])
        scope = set(lets) | {s for s in slots if isinstance(s, str)}
        ts.expect("->")
        items = []
        if ts.peek()[1] not in (";",) and not ts.at_end():
            if ts.peek()[1] == "eps":
                ts.next()
            else:
                while True:
                    col = ts.peek()[2]
                    item = _item(ts, scope)
                    items.append(item)
                    uses.append((item.label, lineno, col))
                    if not ts.accept(","):
                        break
        guard = _guard(ts, scope)
        if not ts.at_end():
            ts.error(f"unexpected {ts.peek()[1]!r}")
        templates.append(RuleTemplate(fam, slots, guard, tuple(items), lineno))

    for nm in overrides:
        if nm not in lets:
            raise RuleError(f"override for undeclared constant {nm!r}")
    if root_expr is None:
        raise RuleError("missing 'root:' declaration")
    for lab, line, col in uses:
        if lab.family not in arity:
            raise DSLSyntaxError(f"family {lab.family!r} has no template", line, col)
        if arity[lab.family] != len(lab.args):
            raise DSLSyntaxError(f"family {lab.family!r} takes {arity[lab.family]} "
                                 f"parameters, got {len(lab.args)}", line, col)
    rules = ParamRuleSet(root_expr.eval(lets), templates, weights, lets, arity, name)
    _check_overlaps(rules)
    _ = root_line
    return rules


def _check_overlaps(rules: ParamRuleSet) -> None:
    decls = [(t.family, t, "template") for t in rules.templates] + \
            [(w.family, w, "weight") for w in rules.weights]
    for i, (fam, a, _) in enumerate(decls):
        for fam2, b, _ in decls[i + 1:]:
            if fam != fam2:
                continue
            n = rules.arity[fam]
            for params in product(OVERLAP_BOX, repeat=n):
                if a.bind(params, rules.consts) is not None and \
                        b.bind(params, rules.consts) is not None:
                    label = ParamLabel(fam, tuple(params))
                    raise RuleError(f"templates on lines {a.line} and {b.line} "
                                    f"both match {label}")


# ---------------------------------------------------------------------------
# counting


def level_counts(rules: ParamRuleSet, N: int, param_slack: int = 2) -> list[int]:
    """Nodes per level 0..N of the tree generated by ``rules``.

    Labels are aggregated with multiplicities, so the work is proportional
    to the number of distinct labels per level.  Parameters larger than
    ``level + param_slack`` are treated as a malformed rule set.
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    counts = [0] * (N + 1)
    cur: dict[ParamLabel, int] = {rules.root: 1}
    counts[0] = 1
    if rules.is_weight(rules.root):
        return rules.weights_of(rules.root, N + 1)
    for level in range(N):
        nxt: dict[ParamLabel, int] = defaultdict(int)
        for label, mult in cur.items():
            for kid in rules.expand(label):
                if any(p > level + 1 + param_slack for p in kid.params):
                    raise RuleError(f"parameter of {kid} out of range at level {level + 1}")
                if rules.is_weight(kid):
                    ws = rules.weights_of(kid, N - level)
                    for k, w in enumerate(ws):
                        counts[level + 1 + k] += mult * w
                else:
                    nxt[kid] += mult
        counts[level + 1] += sum(nxt.values())
        cur = nxt
    return counts


# ---------------------------------------------------------------------------
# validation against the concrete tree


@dataclass
class ValidationReport:
    consistent: bool
    depth: int
    rule_counts: list[int]
    tree_counts: list[int]
    divergence_level: int | None = None
    message: str = ""
    pairs_checked: int = 0

    def __str__(self):
        if self.consistent:
            return f"consistent to depth {self.depth} ({self.pairs_checked} node/label pairs)"
        return f"divergence at level {self.divergence_level}: {self.message}"


def validate_against_tree(rules: ParamRuleSet, B: PatternSet, depth: int,
                          budget: int = 10**7) -> ValidationReport:
    """Replay the parametric tree next to T(B) down to ``depth``.

    Per level it compares node counts and, for every (node, label) pair, the
    number of children; children are paired left to right, so agreement at
    every node is plane isomorphism of the truncated trees.
    """
    auto = Automaton(B)
    rule_counts = level_counts(rules, depth)
    tree_counts = [0] * (depth + 1)
    tree_counts[0] = 1
    frontier: dict[tuple, tuple[tuple, ParamLabel, int]] = {}
    root = (1,) if B.kind == RGS else (0,)
    frontier[(auto.root(), rules.root)] = (root, rules.root, 1)
    # concrete counts are accumulated with multiplicities alongside the replay
    divergence = None
    message = ""
    checked = 0
    for level in range(depth):
        nxt: dict[tuple, tuple[tuple, ParamLabel, int]] = {}
        for (st, label), (word, _, mult) in frontier.items():
            checked += 1
            if checked > budget:
                raise BudgetExceeded("validation budget exceeded")
            kids = auto.child_states(st)
            tree_counts[level + 1] += mult * len(kids)
            if label is not None and divergence is None and rules.is_weight(label):
                want = rules.weights_of(label, depth - level + 1)
                got = _state_counts(auto, st, depth - level)
                if got != want:
                    k = next(i for i, (a, b) in enumerate(zip(got, want)) if a != b)
                    divergence = level + k
                    message = (f"weight label {label} at node {_fmt(word)}: subtree counts "
                               f"{got} vs {want}")
                label = None
            lab_kids = None
            if label is not None and divergence is None:
                lab_kids = rules.expand(label)
                if len(lab_kids) != len(kids):
                    divergence = level + 1
                    message = (f"node {_fmt(word)} has {len(kids)} children, label {label} "
                               f"gives {len(lab_kids)}")
                    lab_kids = None
            if lab_kids is None:
                # unchecked from here on: keep only the concrete counts going
                for x, cst in kids:
                    key = (cst, None)
                    prev = nxt.get(key)
                    nxt[key] = (word + (x,), None, mult + (prev[2] if prev else 0))
                continue
            for (x, cst), lk in zip(kids, lab_kids):
                key = (cst, lk)
                prev = nxt.get(key)
                nxt[key] = (word + (x,), lk, mult + (prev[2] if prev else 0))
        frontier = nxt
        if divergence is None and rule_counts[level + 1] != tree_counts[level + 1]:
            divergence = level + 1
            message = (f"level {level + 1}: rules give {rule_counts[level + 1]} nodes, "
                       f"tree has {tree_counts[level + 1]}")
    if divergence is None:
        # weight subtrees are only checked by counts; make sure totals agree too
        for lvl, (a, b) in enumerate(zip(rule_counts, tree_counts)):
            if a != b:
                divergence, message = lvl, f"level {lvl}: {a} vs {b} nodes"
                break
    return ValidationReport(divergence is None, depth, rule_counts, tree_counts,
                            divergence, message, checked)


def _state_counts(auto: Automaton, st, depth: int) -> list[int]:
    from .gentree import _dfs_counts

    return _dfs_counts(auto, st, depth, 10**9)


def _fmt(w: Sequence[int]) -> str:
    return "".join(map(str, w)) if all(x <= 9 for x in w) else ",".join(map(str, w))


def validate_against_discovery(rules: ParamRuleSet, B: PatternSet, depth: int) -> ValidationReport:
    return validate_against_tree(rules, B, depth)
