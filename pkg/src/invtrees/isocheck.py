"""Canonical signatures of depth-truncated plane subtrees.

``shape_of`` hash-conses the ordered tuple of child signatures, so two
truncated subtrees are plane-isomorphic iff their ids are equal.  Work is
memoised on the automaton state of a node, which fixes its whole subtree.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Sequence

from .closure import PatternSet
from .gentree import DEFAULT_BUDGET, Automaton, BudgetExceeded, State


@dataclass(frozen=True)
class Shape:
    id: int
    depth: int


class Interner:
    """Append-only map from ordered child-id tuples to dense ids."""

    def __init__(self):
        self._ids: dict[tuple[int, ...], int] = {(): 0}
        self._kids: list[tuple[int, ...]] = [()]
        self._lock = threading.Lock()

    def intern(self, kids: tuple[int, ...]) -> int:
        sid = self._ids.get(kids)
        if sid is not None:
            return sid
        with self._lock:
            sid = self._ids.get(kids)
            if sid is None:
                sid = len(self._kids)
                self._kids.append(kids)
                self._ids[kids] = sid
        return sid

    def children(self, sid: int) -> tuple[int, ...]:
        return self._kids[sid]

    def truncate(self, sid: int, depth: int) -> int:
        if depth == 0:
            return 0
        return self.intern(tuple(self.truncate(k, depth - 1) for k in self._kids[sid]))

    def __len__(self):
        return len(self._kids)


LEAF = 0


class ShapeEngine:
    def __init__(self, B: PatternSet, budget: int = DEFAULT_BUDGET,
                 interner: Interner | None = None):
        self.B = B
        self.auto = Automaton(B)
        self.interner = interner or Interner()
        self.budget = budget
        self.work = 0
        self._memo: dict[tuple[State, int], int] = {}
        self._kids: dict[State, list[State]] = {}

    def _child_states(self, st: State) -> list[State]:
        kids = self._kids.get(st)
        if kids is None:
            kids = [s for _, s in self.auto.child_states(st)]
            self._kids[st] = kids
            self.work += 1
            if self.work > self.budget:
                raise BudgetExceeded(f"shape budget {self.budget} exceeded")
        return kids

    def shape_id(self, st: State, depth: int) -> int:
        if depth == 0:
            return LEAF
        key = (st, depth)
        sid = self._memo.get(key)
        if sid is None:
            sid = self.interner.intern(
                tuple(self.shape_id(k, depth - 1) for k in self._child_states(st)))
            self._memo[key] = sid
        return sid

    def state(self, w: Sequence[int]) -> State:
        st = self.auto.state_of(w)
        if st is None:
            raise ValueError("word does not avoid the pattern set")
        return st

    def shape_of(self, w: Sequence[int], depth: int) -> Shape:
        if depth < 0:
            raise ValueError("depth must be >= 0")
        return Shape(self.shape_id(self.state(w), depth), depth)

    def default_depth(self) -> int:
        return 2 * self.B.horizon_t


def shape_of(w: Sequence[int], B: PatternSet, depth: int,
             engine: ShapeEngine | None = None) -> Shape:
    engine = engine or ShapeEngine(B)
    return engine.shape_of(w, depth)


def equivalent(e: Sequence[int], e2: Sequence[int], B: PatternSet,
               depth: int | None = None, engine: ShapeEngine | None = None) -> bool:
    """Plane-isomorphism of the two subtrees truncated ``depth`` levels down
    (default twice the longest closure pattern)."""
    engine = engine or ShapeEngine(B)
    if depth is None:
        depth = engine.default_depth()
    return engine.shape_of(e, depth) == engine.shape_of(e2, depth)


@dataclass
class AuditResult:
    depth: int
    nodes: int
    classes_low: int
    classes_high: int
    mismatches: list[tuple[tuple[int, ...], tuple[int, ...]]]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def depth_audit(B: PatternSet, max_level: int, depth: int | None = None,
                extra: int = 2, words=None, engine: ShapeEngine | None = None) -> AuditResult:
    """Compare the node partition at ``depth`` with the one at ``depth + extra``.

    Nodes are every word of T(B) up to ``max_level`` unless ``words`` is given.
    Any pair classified differently by the two depths is reported.
    """
    from .gentree import iter_level

    engine = engine or ShapeEngine(B)
    if depth is None:
        depth = engine.default_depth()
    if words is None:
        words = [w for lvl in range(max_level + 1) for w in iter_level(B, lvl)]
    low: dict[int, tuple[int, ...]] = {}
    high: dict[int, tuple[int, ...]] = {}
    low_to_high: dict[int, int] = {}
    high_to_low: dict[int, int] = {}
    mismatches = []
    for w in words:
        st = engine.state(w)
        a = engine.shape_id(st, depth)
        b = engine.shape_id(st, depth + extra)
        low.setdefault(a, w)
        high.setdefault(b, w)
        if low_to_high.setdefault(a, b) != b:
            mismatches.append((low[a], w))
        if high_to_low.setdefault(b, a) != a:
            mismatches.append((high[b], w))
    return AuditResult(depth, len(words), len(low_to_high), len(high_to_low), mismatches)
