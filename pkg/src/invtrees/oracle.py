"""Brute-force ground truth: avoider counts, capped extension counts and
Wilf-equivalence checks.

The oracle only ever looks at the raw patterns (never the closure, never
the succession rules).  The default ``dfs`` method runs a compiled pruned
DFS; ``filter`` generates every valid word and tests containment, and is
meant for small ``n`` self-checks.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from . import _kernel
from .closure import PatternSet
from .gentree import DEFAULT_BUDGET, BudgetExceeded
from .seqcore import RGS, Pattern, avoids_all, extension_ok

MAX_N = _kernel.MAX_LETTER - 1


@dataclass
class CountReport:
    counts: list[int]
    method: str
    elapsed: float = 0.0
    nodes: int = 0
    truncated: bool = False
    # counts[n] is |I_n| for inversion sets; |P_n| (word length n) for RGS
    first_index: int = 0
    notes: list[str] = field(default_factory=list)


def default_threads() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:  # pragma: no cover
        return os.cpu_count() or 1


def _seeds(patterns: Sequence[Pattern], rgs: bool, depth: int) -> list[list[tuple]]:
    """Avoiding words by length, 1..depth, enumerated directly."""
    levels = [[(1,)] if rgs else [(0,)]]
    for _ in range(depth - 1):
        nxt = []
        for w in levels[-1]:
            top = max(w) + 1 if rgs else len(w)
            for x in range(1 if rgs else 0, top + 1):
                if extension_ok(w, x, patterns):
                    nxt.append(w + (x,))
        levels.append(nxt)
    return levels


def _run_kernel(seeds, pats, plens, mode, cap, max_len, budget, threads) -> tuple[np.ndarray, int, bool]:
    total = np.zeros(max_len + 2, np.int64)
    nodes = 0
    truncated = False
    per_seed = max(1, budget // max(1, len(seeds)))

    def work(seed):
        counts = np.zeros(max_len + 2, np.int64)
        got = _kernel.count_subtree(np.asarray(seed, np.int64), pats, plens,
                                    mode, cap, max_len, per_seed, counts)
        return counts, got

    if threads > 1 and len(seeds) > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(work, seeds))
    else:
        results = [work(s) for s in seeds]
    # summed in seed order: the result does not depend on the worker count
    for counts, got in results:
        total += counts
        if got < 0:
            truncated = True
        else:
            nodes += got
    return total, nodes, truncated


def count_avoiders(B: PatternSet, N: int, method: str = "dfs", threads: int | None = None,
                   budget: int = DEFAULT_BUDGET) -> CountReport:
    """``|I_n(B)|`` for n = 0..N (inversion) or ``|P_n(B)|`` for n = 0..N (RGS)."""
    t0 = time.perf_counter()
    rgs = B.kind == RGS
    if method == "filter":
        counts = [sum(1 for _ in filter_avoiders(B, n)) for n in range(N + 1)]
        return CountReport(counts, "filter", time.perf_counter() - t0)
    if method != "dfs":
        raise ValueError(f"unknown method {method!r}")
    if N > MAX_N:
        raise ValueError(f"N must be <= {MAX_N}")
    threads = threads or default_threads()
    words = [p.word for p in B.raw]
    max_len = N if rgs else N + 1
    if max_len <= 0:
        return CountReport([1], "dfs", time.perf_counter() - t0)
    seed_len = min(max_len, 3)
    levels = _seeds(B.raw, rgs, seed_len)
    pats, plens = _kernel.pattern_arrays(words)
    total, nodes, truncated = _run_kernel(levels[-1], pats, plens,
                                          _kernel.MODE_RGS if rgs else _kernel.MODE_INV,
                                          0, max_len, budget, threads)
    by_len = [int(v) for v in total]
    for i, lvl in enumerate(levels):
        by_len[i + 1] = len(lvl)
    if rgs:
        counts = [1] + by_len[1:max_len + 1]
    else:
        counts = by_len[1:max_len + 1]
    rep = CountReport(counts, "dfs", time.perf_counter() - t0, nodes, truncated)
    if truncated:
        rep.notes.append("node budget exhausted: deepest counts are partial")
    return rep


def _valid_words(rgs: bool, length: int) -> Iterator[tuple]:
    if length == 0:
        yield ()
        return
    if not rgs:
        yield from product(*[range(i + 1) for i in range(length)])
        return

    def rec(w, top):
        if len(w) == length:
            yield w
            return
        for x in range(1, top + 2):
            yield from rec(w + (x,), max(top, x))

    yield from rec((1,), 1)


def filter_avoiders(B: PatternSet, n: int) -> Iterator[tuple]:
    """Generate-all-then-filter: every valid word of size ``n`` avoiding B."""
    rgs = B.kind == RGS
    length = n if rgs else n + 1
    for w in _valid_words(rgs, length):
        if avoids_all(w, B.raw):
            yield w


def capped_extension_counts(prefix: Sequence[int], cap: int, B: PatternSet, maxlen: int,
                            budget: int = DEFAULT_BUDGET) -> list[int]:
    """Entry k: words π' of length k over {0..cap} with prefix·π' avoiding B.

    Containment is checked on the whole concatenated word; the extension
    letters are bounded by ``cap`` only, not by their position.
    """
    prefix = tuple(prefix)
    if not avoids_all(prefix, B.raw):
        raise ValueError("prefix does not avoid the pattern set")
    if cap > _kernel.MAX_LETTER or max(prefix, default=0) > _kernel.MAX_LETTER:
        raise ValueError("letters too large")
    pats, plens = _kernel.pattern_arrays([p.word for p in B.raw])
    max_len = len(prefix) + maxlen
    counts = np.zeros(max_len + 2, np.int64)
    got = _kernel.count_subtree(np.asarray(prefix, np.int64), pats, plens,
                                _kernel.MODE_CAP, cap, max_len, budget, counts)
    if got < 0:
        raise BudgetExceeded("node budget exceeded",
                             [1] + [int(c) for c in counts[len(prefix) + 1: max_len + 1]])
    return [1] + [int(c) for c in counts[len(prefix) + 1: max_len + 1]]


def capped_extension_counts_slow(prefix: Sequence[int], cap: int, B: PatternSet,
                                 maxlen: int) -> list[int]:
    prefix = tuple(prefix)
    return [sum(1 for tail in product(range(cap + 1), repeat=k)
                if avoids_all(prefix + tail, B.raw)) for k in range(maxlen + 1)]


@dataclass
class WilfResult:
    equal: bool
    first_divergence: int | None
    left: list[int]
    right: list[int]

    def __bool__(self):
        return self.equal


def wilf_check(B1: PatternSet, B2: PatternSet, N: int, threads: int | None = None,
               budget: int = DEFAULT_BUDGET) -> WilfResult:
    if B1.kind != B2.kind:
        raise ValueError("pattern sets of different kinds")
    a = count_avoiders(B1, N, threads=threads, budget=budget)
    b = count_avoiders(B2, N, threads=threads, budget=budget)
    if a.truncated or b.truncated:
        raise BudgetExceeded("node budget exceeded during Wilf check")
    for n, (x, y) in enumerate(zip(a.counts, b.counts)):
        if x != y:
            return WilfResult(False, n, a.counts, b.counts)
    return WilfResult(True, None, a.counts, b.counts)
