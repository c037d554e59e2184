"""Lazy expansion of the pattern-avoidance tree T(B).

Besides the word-level API (``children``, ``level_sizes``) this module has
``Automaton``: an exact summary of everything about a node that can still
influence its descendants.  Two nodes with equal states have literally the
same subtree, so shape computations and counting can be memoised on it.

A state keeps, for every pattern prefix already matched inside the word,
the constraint that the rest of the pattern imposes on future letters: the
order type of the unmatched suffix plus an open integer interval per suffix
slot.  Dominated constraints are dropped and single-slot constraints are
merged into one set of forbidden letters.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .closure import PatternSet
from .seqcore import RGS, Word, extension_ok, normalize

INF = 1 << 30
DEFAULT_BUDGET = 10**9


class BudgetExceeded(RuntimeError):
    """Raised when a traversal visits more nodes than its budget allows."""

    def __init__(self, message: str, partial: list[int] | None = None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class TreeNode:
    word: Word

    @property
    def level(self) -> int:
        return len(self.word) - 1


def root_word(B: PatternSet) -> Word:
    return (1,) if B.kind == RGS else (0,)


def child_letters(w: Sequence[int], B: PatternSet) -> range:
    if B.kind == RGS:
        return range(1, max(w) + 2)
    return range(len(w) + 1)


def children(w: Sequence[int], B: PatternSet) -> list[Word]:
    """Ordered children of ``w`` (ascending appended letter)."""
    w = tuple(w)
    return [w + (x,) for x in child_letters(w, B) if extension_ok(w, x, B.raw)]


# state = (size, constraints, forbidden)
#   size: len(word) for inversion sequences, max letter for RGS
#   constraints: frozenset of (order_type, regions) with >= 2 open slots
#   forbidden: sorted disjoint (lo, hi) open intervals of banned next letters
State = tuple


def _merge_intervals(ivs) -> tuple:
    out: list[list[int]] = []
    for lo, hi in sorted(ivs):
        # integer content of (lo, hi) is lo+1 .. hi-1; touching runs merge
        if out and lo < out[-1][1]:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return tuple((lo, hi) for lo, hi in out)


def _dominates(s: tuple, r: tuple) -> bool:
    """Region tuple ``s`` contains ``r`` slot by slot."""
    for (a, b), (c, d) in zip(s, r):
        if a > c or d > b:
            return False
    return True


def _prune(cons) -> frozenset:
    kept: dict[tuple, list[tuple]] = {}
    for ot, regs in cons:
        _insert(kept, ot, regs)
    return frozenset((ot, r) for ot, rs in kept.items() for r in rs)


def _insert(groups: dict, ot: tuple, regs: tuple) -> None:
    rs = groups.setdefault(ot, [])
    for s in rs:
        if _dominates(s, regs):
            return
    rs[:] = [s for s in rs if not _dominates(regs, s)]
    rs.append(regs)


class Automaton:
    """Incremental avoidance automaton for a pattern set.

    Works on the raw patterns.  The literal closure is not always
    avoidance-equivalent to them (00211 holds 100 yet avoids 0100), so the
    raw set is the one that defines the class.
    """

    def __init__(self, B: PatternSet):
        self.B = B
        self.rgs = B.kind == RGS
        floor = 0 if self.rgs else -1
        self.floor = floor
        init = set()
        for p in B.raw:
            ot = normalize(p.word)
            init.add((ot, tuple((floor, INF) for _ in ot)))
        self.initial_constraints = _prune(init)
        self._ot_info: dict[tuple, tuple] = {}

    def root(self) -> State:
        state = (0, self.initial_constraints, ())
        first = 1 if self.rgs else 0
        nxt = self.step(state, first)
        assert nxt is not None
        return nxt

    def state_of(self, w: Sequence[int]) -> State | None:
        """State after reading ``w`` from scratch; None if ``w`` contains B."""
        state = (0, self.initial_constraints, ())
        for x in w:
            state = self.step(state, x)
            if state is None:
                return None
        return state

    def letters(self, state: State) -> range:
        if self.rgs:
            return range(1, state[0] + 2)
        return range(state[0] + 1)

    def _info(self, ot: tuple) -> tuple:
        """Per order type: relation of each later slot to the head, and the
        order type of the tail."""
        info = self._ot_info.get(ot)
        if info is None:
            head = ot[0]
            rels = tuple((c > head) - (c < head) for c in ot[1:])
            info = (rels, normalize(ot[1:]))
            self._ot_info[ot] = info
        return info

    def step(self, state: State, x: int) -> State | None:
        size, cons, forb = state
        for lo, hi in forb:
            if lo < x < hi:
                return None
        added = []
        single = []
        for ot, regs in cons:
            lo, hi = regs[0]
            if not lo < x < hi:
                continue
            rels, tail = self._info(ot)
            rest = []
            for rel, (a, b) in zip(rels, regs[1:]):
                if rel == 0:
                    if a < x - 1:
                        a = x - 1
                    if b > x + 1:
                        b = x + 1
                elif rel < 0:
                    if b > x:
                        b = x
                elif a < x:
                    a = x
                if b - a <= 1:
                    break
                rest.append((a, b))
            else:
                if len(rest) == 1:
                    single.append(rest[0])
                else:
                    added.append((tail, tuple(rest)))
        size = max(size, x) if self.rgs else size + 1
        if added:
            groups: dict[tuple, list[tuple]] = {}
            for ot, regs in cons:
                groups.setdefault(ot, []).append(regs)
            for ot, regs in added:
                _insert(groups, ot, regs)
            cons = frozenset((ot, r) for ot, rs in groups.items() for r in rs)
        if single:
            forb = _merge_intervals(forb + tuple(single))
        return (size, cons, forb)

    def child_states(self, state: State) -> list[tuple[int, State]]:
        out = []
        for x in self.letters(state):
            nxt = self.step(state, x)
            if nxt is not None:
                out.append((x, nxt))
        return out


def _dfs_counts(auto: Automaton, state: State, depth: int, budget: int) -> list[int]:
    counts = [0] * (depth + 1)
    counts[0] = 1
    visited = 1
    stack: list[tuple[State, int]] = [(state, 0)]
    while stack:
        st, lvl = stack.pop()
        if lvl == depth:
            continue
        kids = auto.child_states(st)
        counts[lvl + 1] += len(kids)
        visited += len(kids)
        if visited > budget:
            raise BudgetExceeded(f"node budget {budget} exceeded", counts)
        if lvl + 1 < depth:
            stack.extend((s, lvl + 1) for _, s in kids)
    return counts


def level_sizes(B: PatternSet, N: int, budget: int = DEFAULT_BUDGET) -> list[int]:
    """Number of nodes at levels 0..N of T(B), by pruned depth-first search."""
    auto = Automaton(B)
    return _dfs_counts(auto, auto.root(), N, budget)


def subtree_level_counts(prefix: Sequence[int], B: PatternSet, depth: int,
                         budget: int = DEFAULT_BUDGET) -> list[int]:
    auto = Automaton(B)
    state = auto.state_of(prefix)
    if state is None:
        raise ValueError("prefix does not avoid the pattern set")
    return _dfs_counts(auto, state, depth, budget)


def iter_level(B: PatternSet, level: int) -> Iterator[Word]:
    """Words at one level of T(B), left to right."""
    auto = Automaton(B)

    def rec(w: Word, st: State) -> Iterator[Word]:
        if len(w) - 1 == level:
            yield w
            return
        for x, nxt in auto.child_states(st):
            yield from rec(w + (x,), nxt)

    yield from rec(root_word(B), auto.root())
