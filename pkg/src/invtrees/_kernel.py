"""Compiled depth-first counter shared by the brute-force oracle.

Written in the numba subset of Python; falls back to the interpreter when
numba is not importable.  Letters are kept below 63 so a forbidden-letter
set fits a signed 64-bit mask.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

MODE_INV = 0
MODE_RGS = 1
MODE_CAP = 2
MAX_LETTER = 62


@njit(cache=True, nogil=True)
def _sign(a):
    if a > 0:
        return 1
    if a < 0:
        return -1
    return 0


@njit(cache=True, nogil=True)
def _new_mask(word, L, pats, plens, idx):
    """Letters x such that word[:L] + x has an occurrence whose
    second-to-last letter is word[L-1]."""
    mask = np.int64(0)
    last = word[L - 1]
    for q in range(pats.shape[0]):
        k = plens[q]
        r = k - 2
        if r > L - 1:
            continue
        p = pats[q]
        j = 0
        if r > 0:
            idx[0] = -1
        while True:
            full = False
            if r == 0:
                full = True
            else:
                idx[j] += 1
                if idx[j] > L - 2 - (r - 1 - j):
                    j -= 1
                    if j < 0:
                        break
                    continue
                v = word[idx[j]]
                ok = _sign(v - last) == _sign(p[j] - p[k - 2])
                if ok:
                    for l in range(j):
                        if _sign(word[idx[l]] - v) != _sign(p[l] - p[j]):
                            ok = False
                            break
                if not ok:
                    continue
                if j < r - 1:
                    j += 1
                    idx[j] = idx[j - 1]
                    continue
                full = True
            if full:
                lo = -1
                hi = MAX_LETTER + 1
                eq = -1
                for l in range(k - 1):
                    vl = last if l == k - 2 else word[idx[l]]
                    c = _sign(p[k - 1] - p[l])
                    if c == 0:
                        eq = vl
                    elif c < 0:
                        if vl < hi:
                            hi = vl
                    else:
                        if vl > lo:
                            lo = vl
                if eq >= 0:
                    if lo < eq and eq < hi:
                        mask |= np.int64(1) << eq
                else:
                    for x in range(lo + 1, hi):
                        mask |= np.int64(1) << x
            if r == 0:
                break
    return mask


@njit(cache=True, nogil=True)
def count_subtree(prefix, pats, plens, mode, cap, max_len, budget, counts):
    """Add to ``counts[len]`` the number of avoiding words of each length
    ``len(prefix) < len <= max_len`` that extend ``prefix``.

    Returns the number of nodes expanded, or -1 when ``budget`` ran out.
    """
    n0 = prefix.shape[0]
    size = max_len + 2
    word = np.zeros(size, np.int64)
    forb = np.zeros(size, np.int64)
    mx = np.zeros(size, np.int64)
    cand = np.zeros(size, np.int64)
    idx = np.zeros(8, np.int64)
    start = 1 if mode == MODE_RGS else 0
    for i in range(n0):
        word[i] = prefix[i]
        mx[i + 1] = max(mx[i], prefix[i])
        forb[i + 1] = forb[i] | _new_mask(word, i + 1, pats, plens, idx)
    if n0 >= max_len:
        return 0
    visited = 0
    L = n0
    cand[L] = start
    while L >= n0:
        if mode == MODE_INV:
            top = L
        elif mode == MODE_RGS:
            top = mx[L] + 1
        else:
            top = cap
        if L == max_len - 1:
            c = 0
            f = forb[L]
            for x in range(start, top + 1):
                if not (f >> x) & 1:
                    c += 1
            counts[L + 1] += c
            L -= 1
            continue
        x = cand[L]
        if x > top:
            L -= 1
            continue
        cand[L] = x + 1
        if (forb[L] >> x) & 1:
            continue
        word[L] = x
        mx[L + 1] = max(mx[L], x)
        forb[L + 1] = forb[L] | _new_mask(word, L + 1, pats, plens, idx)
        counts[L + 1] += 1
        visited += 1
        if visited > budget:
            return -1
        L += 1
        cand[L] = start
    return visited


def pattern_arrays(words) -> tuple[np.ndarray, np.ndarray]:
    kmax = max((len(w) for w in words), default=1)
    pats = np.zeros((len(words), kmax), np.int64)
    plens = np.zeros(len(words), np.int64)
    for i, w in enumerate(words):
        pats[i, : len(w)] = w
        plens[i] = len(w)
    return pats, plens
