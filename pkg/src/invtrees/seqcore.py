"""Words, validity predicates and order-isomorphic pattern containment.

Words are plain tuples of non-negative ints.  Inversion sequences start at
0 (``e_i <= i``); restricted growth sequences (RGS) start at 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Word = tuple[int, ...]

MAX_LETTER = 1 << 16
DEFAULT_MAX_LEN = 64


@dataclass(frozen=True)
class SeqKind:
    name: str
    cap: int | None = None

    def __post_init__(self):
        if self.name not in ("inv", "rgs", "plain"):
            raise ValueError(f"unknown sequence kind {self.name!r}")
        if self.name == "plain" and (self.cap is None or self.cap < 0):
            raise ValueError("PlainWord needs a cap >= 0")

    @property
    def base(self) -> int:
        """Smallest letter of the alphabet (1 for RGS, else 0)."""
        return 1 if self.name == "rgs" else 0

    def __str__(self):
        return self.name if self.cap is None else f"{self.name}({self.cap})"


INVERSION = SeqKind("inv")
RGS = SeqKind("rgs")


def PlainWord(cap: int) -> SeqKind:
    return SeqKind("plain", cap)


def kind_from_name(name: str) -> SeqKind:
    name = name.lower()
    if name in ("inv", "inversion"):
        return INVERSION
    if name in ("rgs", "restricted-growth", "restrictedgrowth"):
        return RGS
    raise ValueError(f"unknown kind {name!r} (expected inv or rgs)")


def parse_word(text: str, max_len: int = DEFAULT_MAX_LEN) -> Word:
    """Parse ``"0,1,0,2"`` or the compact single-digit form ``"0102"``."""
    text = text.strip()
    if not text:
        raise ValueError("empty word")
    if "," in text:
        letters = tuple(int(tok) for tok in text.split(","))
    elif text.isdigit():
        letters = tuple(int(ch) for ch in text)
    else:
        raise ValueError(f"cannot parse word {text!r}")
    check_word(letters, max_len)
    return letters


def check_word(w: Sequence[int], max_len: int = DEFAULT_MAX_LEN) -> None:
    if len(w) > max_len:
        raise ValueError(f"word longer than {max_len} letters")
    for x in w:
        if not 0 <= x < MAX_LETTER:
            raise ValueError(f"letter {x} out of range")


def format_word(w: Sequence[int], compact: bool = False) -> str:
    if compact and all(x <= 9 for x in w):
        return "".join(map(str, w))
    return ",".join(map(str, w))


def is_valid(w: Sequence[int], kind: SeqKind) -> bool:
    if kind.name == "inv":
        return all(0 <= x <= i for i, x in enumerate(w))
    if kind.name == "rgs":
        if not w or w[0] != 1:
            return False
        top = 0
        for x in w:
            if x < 1 or x > top + 1:
                return False
            top = max(top, x)
        return True
    return all(0 <= x <= kind.cap for x in w)


def normalize(w: Sequence[int], base: int = 0) -> Word:
    """Relabel letters order-preservingly onto ``base, base+1, ...``."""
    rank = {v: i + base for i, v in enumerate(sorted(set(w)))}
    return tuple(rank[x] for x in w)


@dataclass(frozen=True)
class Pattern:
    word: Word
    kind: SeqKind = INVERSION

    def __post_init__(self):
        if not self.word:
            raise ValueError("empty pattern")
        if normalize(self.word, self.kind.base) != tuple(self.word):
            raise ValueError(
                f"pattern {format_word(self.word)} is not normalized for kind {self.kind}"
            )

    @property
    def normalized(self) -> bool:
        return True

    def __len__(self):
        return len(self.word)

    def __str__(self):
        return format_word(self.word, compact=True)

    @classmethod
    def parse(cls, text: str, kind: SeqKind = INVERSION) -> "Pattern":
        return cls(parse_word(text), kind)


def _cmp(a: int, b: int) -> int:
    return (a > b) - (a < b)


def contains(w: Sequence[int], p: Pattern | Sequence[int]) -> bool:
    """True iff some subsequence of ``w`` is order-isomorphic to ``p``."""
    pw = p.word if isinstance(p, Pattern) else tuple(p)
    k = len(pw)
    if k > len(w):
        return False
    chosen: list[int] = []

    def match(j: int, start: int) -> bool:
        if j == k:
            return True
        for pos in range(start, len(w) - (k - j) + 1):
            x = w[pos]
            if all(_cmp(w[chosen[l]], x) == _cmp(pw[l], pw[j]) for l in range(j)):
                chosen.append(pos)
                if match(j + 1, pos + 1):
                    return True
                chosen.pop()
        return False

    return match(0, 0)


def avoids_all(w: Sequence[int], patterns: Iterable[Pattern]) -> bool:
    return not any(contains(w, p) for p in patterns)


def ends_with_occurrence(w: Sequence[int], x: int, p: Pattern | Sequence[int]) -> bool:
    """True iff ``w + (x,)`` has an occurrence of ``p`` using ``x`` as its last letter."""
    pw = p.word if isinstance(p, Pattern) else tuple(p)
    k = len(pw)
    if k - 1 > len(w):
        return False
    last = pw[-1]
    # letters usable for pattern slot l must already compare to x correctly
    want = [_cmp(pw[l], last) for l in range(k - 1)]
    chosen: list[int] = []

    def match(j: int, start: int) -> bool:
        if j == k - 1:
            return True
        for pos in range(start, len(w) - (k - 1 - j) + 1):
            y = w[pos]
            if _cmp(y, x) != want[j]:
                continue
            if all(_cmp(w[chosen[l]], y) == _cmp(pw[l], pw[j]) for l in range(j)):
                chosen.append(pos)
                if match(j + 1, pos + 1):
                    return True
                chosen.pop()
        return False

    return match(0, 0)


def extension_ok(w: Sequence[int], x: int, patterns: Iterable[Pattern]) -> bool:
    """Assuming ``w`` avoids every pattern, does ``w + (x,)`` still avoid them?"""
    return not any(ends_with_occurrence(w, x, p) for p in patterns)
