"""Minimal inversion-sequence extensions of patterns, and pattern sets."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .seqcore import INVERSION, RGS, Pattern, SeqKind, Word, format_word, is_valid


def l_tau(p: Pattern) -> list[Pattern]:
    """All inversion sequences ``θ1 τ1 θ2 τ2 ... θm τm`` with each prefix
    through ``τj`` as short as possible.

    Pattern letters keep their literal values; the fillers range over every
    letter allowed at their position.
    """
    if p.kind != INVERSION:
        raise ValueError("l_tau is defined for inversion patterns only")
    stage: set[Word] = {()}
    length = 0
    for letter in p.word:
        fill = max(0, letter - length)
        nxt: set[Word] = set()
        for prefix in stage:
            ranges = [range(length + i + 1) for i in range(fill)]
            for filler in product(*ranges):
                nxt.add(prefix + filler + (letter,))
        stage = nxt
        length += fill + 1
    return [Pattern(w, INVERSION) for w in sorted(stage)]


@dataclass(frozen=True)
class PatternSet:
    kind: SeqKind
    raw: tuple[Pattern, ...]
    closure: tuple[Pattern, ...]
    horizon_t: int

    @property
    def label(self) -> str:
        return ",".join(str(p) for p in self.raw)

    def __str__(self):
        return f"{self.kind}{{{self.label}}}"

    @classmethod
    def unrestricted(cls, kind: SeqKind = INVERSION) -> "PatternSet":
        """No forbidden patterns: every valid sequence is counted."""
        return cls(kind, (), (), 0)


def build_pattern_set(patterns: Iterable[Pattern | str | Sequence[int]],
                      kind: SeqKind = INVERSION) -> PatternSet:
    if kind not in (INVERSION, RGS):
        raise ValueError("pattern sets are built for inv or rgs kinds")
    raw: list[Pattern] = []
    for p in patterns:
        if isinstance(p, str):
            p = Pattern.parse(p, kind)
        elif not isinstance(p, Pattern):
            p = Pattern(tuple(p), kind)
        if p.kind != kind:
            raise ValueError(f"pattern {p} has kind {p.kind}, expected {kind}")
        raw.append(p)
    if not raw:
        raise ValueError("empty pattern list")
    for p in raw:
        if len(p) == 1:
            # every sequence contains a one-letter pattern: the tree is empty
            raise ValueError(f"degenerate pattern {p}: no sequence avoids it")
    raw_t = tuple(dict.fromkeys(raw))
    if kind == INVERSION:
        seen: dict[Word, Pattern] = {}
        for p in raw_t:
            for q in l_tau(p):
                seen.setdefault(q.word, q)
        closure = tuple(seen.values())
    else:
        for p in raw_t:
            if not is_valid(p.word, RGS):
                raise ValueError(
                    f"RGS pattern {format_word(p.word)} is not itself a restricted growth word"
                )
        closure = raw_t
    horizon = max(len(p) for p in closure)
    return PatternSet(kind, raw_t, closure, horizon)


def parse_pattern_list(text: str, kind: SeqKind = INVERSION) -> PatternSet:
    """``"000,021"`` -> pattern set (patterns are compact digit strings)."""
    items = [tok.strip() for tok in text.replace(";", ",").split(",") if tok.strip()]
    return build_pattern_set([Pattern(tuple(int(c) for c in tok), kind) for tok in items], kind)
