"""Level-by-level discovery of equivalence classes and succession rules.

Each new node is compared, by its truncated subtree shape, against every
class found so far.  Unknown shapes open a new class whose representative
is the node itself (the left-most one at the lowest level, since nodes are
visited level by level, left to right).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .closure import PatternSet
from .gentree import DEFAULT_BUDGET, root_word
from .isocheck import ShapeEngine
from .seqcore import Word, format_word, parse_word

REGULAR = "regular"
TRUNCATED = "truncated"


@dataclass(frozen=True)
class ClassInfo:
    id: int
    rep: Word
    level: int
    # position among the classes first seen on the same level
    index: int = 0


@dataclass
class ClassTable:
    classes: list[ClassInfo] = field(default_factory=list)
    lookup: dict[int, int] = field(default_factory=dict, compare=False, repr=False)

    def add(self, rep: Word, level: int, shape: int | None) -> ClassInfo:
        index = sum(1 for c in self.classes if c.level == level)
        info = ClassInfo(len(self.classes), tuple(rep), level, index)
        self.classes.append(info)
        if shape is not None:
            self.lookup[shape] = info.id
        return info

    def __len__(self):
        return len(self.classes)

    def reps(self) -> list[Word]:
        return [c.rep for c in self.classes]


@dataclass
class RuleSet:
    root: int
    rules: dict[int, list[int]]
    status: str
    depth: int

    @property
    def regular(self) -> bool:
        return self.status == REGULAR

    def level_counts(self, N: int) -> list[int]:
        """Iterate the concrete rules from the root for levels 0..N."""
        counts = [1]
        cur = {self.root: 1}
        for level in range(N):
            nxt: dict[int, int] = {}
            for cid, mult in cur.items():
                kids = self.rules.get(cid)
                if kids is None:
                    raise KeyError(f"class {cid} has no rule; rules cover "
                                   f"levels below {self.depth}")
                for k in kids:
                    nxt[k] = nxt.get(k, 0) + mult
            counts.append(sum(nxt.values()))
            cur = nxt
        return counts


def discover(B: PatternSet, D: int, depth: int | None = None,
             budget: int = DEFAULT_BUDGET, engine: ShapeEngine | None = None
             ) -> tuple[ClassTable, RuleSet]:
    """Run the discovery loop for ``D`` levels.

    ``depth`` is the truncation used to compare subtrees (default twice the
    horizon).  The result is regular when a level produces no new class, so
    every class found has its rule; otherwise it is truncated at ``D``.
    """
    if D < 0:
        raise ValueError("D must be >= 0")
    engine = engine or ShapeEngine(B, budget)
    if depth is None:
        depth = engine.default_depth()
    table = ClassTable()
    rules: dict[int, list[int]] = {}
    root = root_word(B)
    root_state = engine.state(root)
    table.add(root, 0, engine.shape_id(root_state, depth))
    frontier: list[tuple[Word, object, int]] = [(root, root_state, 0)]
    status = TRUNCATED
    for level in range(1, D + 1):
        if not frontier:
            status = REGULAR
            break
        new: list[tuple[Word, object, int]] = []
        for word, st, cid in frontier:
            kids = []
            for x, cst in engine.auto.child_states(st):
                sid = engine.shape_id(cst, depth)
                k = table.lookup.get(sid)
                if k is None:
                    child = word + (x,)
                    k = table.add(child, level, sid).id
                    new.append((child, cst, k))
                kids.append(k)
            rules[cid] = kids
        frontier = new
    else:
        if not frontier:
            status = REGULAR
    return table, RuleSet(0, rules, status, D)


# ---------------------------------------------------------------------------
# JSON documents


def export_rules(table: ClassTable, rules: RuleSet) -> str:
    doc = {
        "status": rules.status,
        "depth": rules.depth,
        "classes": [{"id": c.id, "rep": format_word(c.rep), "level": c.level}
                    for c in table.classes],
        "rules": [{"id": cid, "children": list(rules.rules[cid])}
                  for cid in sorted(rules.rules)],
    }
    return json.dumps(doc, indent=2) + "\n"


def import_rules(text: str) -> tuple[ClassTable, RuleSet]:
    doc = json.loads(text)
    try:
        status = doc["status"]
        if status not in (REGULAR, TRUNCATED):
            raise ValueError(f"bad status {status!r}")
        table = ClassTable()
        for i, c in enumerate(doc["classes"]):
            if c["id"] != i:
                raise ValueError("class ids must be dense and in order")
            table.add(parse_word(c["rep"]), int(c["level"]), None)
        rules = {int(r["id"]): [int(k) for k in r["children"]] for r in doc["rules"]}
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed rule document: {exc}") from None
    for kids in rules.values():
        for k in kids:
            if not 0 <= k < len(table):
                raise ValueError(f"rule refers to unknown class {k}")
    return table, RuleSet(0, rules, status, int(doc["depth"]))


def replay_check(table: ClassTable, rules: RuleSet, B: PatternSet) -> list[str]:
    """Compare each rule against the ordered children of its representative.

    Returns a list of problems; empty means every child list has the right
    length and every child has the shape of the class it is mapped to.
    """
    engine = ShapeEngine(B)
    depth = engine.default_depth()
    rep_shape = {c.id: engine.shape_of(c.rep, depth).id for c in table.classes}
    problems = []
    for cid, kids in sorted(rules.rules.items()):
        rep = table.classes[cid].rep
        st = engine.state(rep)
        got = engine.auto.child_states(st)
        if len(got) != len(kids):
            problems.append(f"class {cid} ({format_word(rep)}): {len(got)} children, "
                            f"rule lists {len(kids)}")
            continue
        for pos, ((x, cst), k) in enumerate(zip(got, kids)):
            if engine.shape_id(cst, depth) != rep_shape[k]:
                problems.append(f"class {cid}: child {pos} ({format_word(rep + (x,))}) "
                                f"is not in class {k}")
    return problems


def describe(table: ClassTable, rules: RuleSet, compact: bool = True) -> list[str]:
    """Human-readable rules, one line per class: ``01 -> 00, 011``."""
    fmt = lambda w: format_word(w, compact=compact)  # noqa: E731
    lines = []
    for cid in sorted(rules.rules):
        kids = rules.rules[cid]
        rhs = ", ".join(fmt(table.classes[k].rep) for k in kids) or "eps"
        lines.append(f"{fmt(table.classes[cid].rep)} -> {rhs}")
    return lines


def rule_words(table: ClassTable, ids: Sequence[int]) -> list[Word]:
    return [table.classes[i].rep for i in ids]
