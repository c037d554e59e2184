"""Truncated Laurent series with exact rational coefficients, plus the
catalog of closed-form generating functions and counting formulas.

A ``Series`` stores coefficients for exponents ``val .. prec-1``; anything
at or above ``prec`` is unknown.  Every operation propagates ``prec`` so a
result never claims more terms than its inputs support.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt
from typing import Callable, Sequence


class SeriesError(ArithmeticError):
    pass


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Series:
    __slots__ = ("val", "coeffs", "prec")

    def __init__(self, coeffs: Sequence, val: int = 0, prec: int | None = None):
        cs = [_frac(c) for c in coeffs]
        if prec is None:
            prec = val + len(cs)
        cs = cs[: max(0, prec - val)]
        cs += [Fraction(0)] * (prec - val - len(cs))
        self.val = val
        self.coeffs = cs
        self.prec = prec
        self._strip()

    def _strip(self):
        k = 0
        while k < len(self.coeffs) and self.coeffs[k] == 0:
            k += 1
        if k:
            self.coeffs = self.coeffs[k:]
            self.val += k
        if not self.coeffs:
            self.val = self.prec

    # construction -------------------------------------------------------
    @classmethod
    def poly(cls, coeffs: Sequence, prec: int) -> "Series":
        """Polynomial ``sum coeffs[i] x^i`` known exactly, truncated at ``prec``."""
        return cls(coeffs, 0, prec)

    @classmethod
    def monomial(cls, k: int, prec: int, c=1) -> "Series":
        if k >= prec:
            return cls([], prec, prec)
        return cls([c], k, prec)

    @classmethod
    def const(cls, c, prec: int) -> "Series":
        return cls.monomial(0, prec, c)

    # access -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        if k >= self.prec:
            raise SeriesError(f"coefficient x^{k} beyond precision {self.prec}")
        if k < self.val:
            return Fraction(0)
        return self.coeffs[k - self.val]

    def terms(self, start: int, stop: int) -> list[Fraction]:
        return [self[k] for k in range(start, stop)]

    def int_terms(self, start: int, stop: int) -> list[int]:
        out = []
        for k in range(start, stop):
            c = self[k]
            if c.denominator != 1:
                raise SeriesError(f"non-integral coefficient {c} at x^{k}")
            out.append(c.numerator)
        return out

    def truncate(self, prec: int) -> "Series":
        prec = min(prec, self.prec)
        return Series(self.coeffs, self.val, prec) if self.coeffs else Series([], prec, prec)

    def __repr__(self):
        shown = " + ".join(f"{c}x^{self.val + i}" for i, c in enumerate(self.coeffs[:8]) if c)
        return f"Series({shown or '0'} + O(x^{self.prec}))"

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        p = min(self.prec, other.prec)
        lo = min(self.val, other.val)
        return all(self[k] == other[k] for k in range(lo, p))

    __hash__ = None

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        # a constant is exact; give it enough room not to limit precision
        return Series.const(other, abs(self.prec) + abs(self.val) + 1)

    def __add__(self, other):
        other = self._coerce(other)
        prec = min(self.prec, other.prec)
        lo = min(self.val, other.val, prec)
        return Series([self[k] + other[k] for k in range(lo, prec)], lo, prec)

    __radd__ = __add__

    def __neg__(self):
        return Series([-c for c in self.coeffs], self.val, self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Series):
            c = _frac(other)
            return Series([c * a for a in self.coeffs], self.val, self.prec)
        a, b = self, other
        if a.is_zero() or b.is_zero():
            prec = min(a.val + b.prec, b.val + a.prec)
            return Series([], prec, prec)
        val = a.val + b.val
        prec = min(a.val + b.prec, b.val + a.prec)
        n = prec - val
        ac, bc = a.coeffs, b.coeffs
        out = []
        for k in range(n):
            s = Fraction(0)
            for i in range(max(0, k - len(bc) + 1), min(k, len(ac) - 1) + 1):
                s += ac[i] * bc[k - i]
            out.append(s)
        return Series(out, val, prec)

    __rmul__ = __mul__

    def inverse(self) -> "Series":
        if self.is_zero():
            raise SeriesError("division by a series with no nonzero leading term")
        c0 = self.coeffs[0]
        n = self.prec - self.val
        bc = self.coeffs
        inv = [1 / c0]
        for k in range(1, n):
            s = Fraction(0)
            for i in range(1, min(k, len(bc) - 1) + 1):
                s += bc[i] * inv[k - i]
            inv.append(-s / c0)
        return Series(inv, -self.val, -self.val + n)

    def __truediv__(self, other):
        if not isinstance(other, Series):
            c = _frac(other)
            if c == 0:
                raise SeriesError("division by zero")
            return self * (1 / c)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            raise TypeError("integer exponents only")
        if e < 0:
            return self.inverse() ** (-e)
        result = Series([1], 0, max(self.prec - self.val, 1))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, k: int) -> "Series":
        """Multiply by ``x**k`` (k may be negative)."""
        return Series(self.coeffs, self.val + k, self.prec + k)

    def sqrt(self) -> "Series":
        if self.is_zero():
            raise SeriesError("sqrt of zero series")
        if self.val % 2:
            raise SeriesError("sqrt needs an even valuation")
        c0 = self.coeffs[0]
        r0 = _rational_sqrt(c0)
        if r0 is None:
            raise SeriesError(f"leading coefficient {c0} is not a rational square")
        n = self.prec - self.val
        cs = self.coeffs
        out = [r0]
        for k in range(1, n):
            s = cs[k] if k < len(cs) else Fraction(0)
            for i in range(1, k):
                s -= out[i] * out[k - i]
            out.append(s / (2 * r0))
        return Series(out, self.val // 2, self.val // 2 + n)


def _rational_sqrt(c: Fraction) -> Fraction | None:
    if c < 0:
        return None
    p, q = c.numerator, c.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def sqrt(s: Series) -> Series:
    return s.sqrt()


# ---------------------------------------------------------------------------
# catalog of generating functions


@dataclass(frozen=True)
class FormulaId:
    name: str
    param: int | None = None

    def __str__(self):
        return self.name if self.param is None else f"{self.name}({self.param})"

    @classmethod
    def parse(cls, text: str) -> "FormulaId":
        text = text.strip()
        for sep in ("(", ":"):
            if sep in text:
                name, arg = text.split(sep, 1)
                return cls(name, int(arg.rstrip(")")))
        return cls(text)


def _x(prec):
    return Series.monomial(1, prec)


def _p(cs, prec):
    return Series.poly(cs, prec)


def _g_thAA2(P, _):
    rad = (_p([1, 1], P) * _p([1, -3], P)).sqrt()
    return _p([1, -3, 1, 3], P) / (rad.shift(2) * 2) - (_p([1, -1], P) ** 2).shift(-2) / 2


def _g_thCC3(P, _):
    rad = _p([1, -4], P).sqrt()
    return (_p([1, -3], P) ** 2) / (rad.shift(2) * 2) \
        - (_p([1, -3], P) * _p([1, -1], P)).shift(-2) / 2


def _g_thDD1(P, _):
    x = _x(P)
    one_x = _p([1, -1], P)
    first = (1 - _p([1, -4], P).sqrt()) / (x * one_x * 2)
    second = _p([1, -2, 2], P) * _p([-1, 3, -2, 1], P) / (one_x ** 4 * _p([1, -2], P))
    return first + second


def _g_thBB2(P, _):
    num = _p([1, -3, 3, 1, -3, -1, 1], P).shift(1)
    den = _p([1, -1], P) ** 3 * _p([1, -1, -1], P) ** 2
    return num / den


def _need(m, lo, name):
    if m is None or m < lo:
        raise ValueError(f"{name} needs an integer parameter >= {lo}")


def _g_ext_m0_below(P, m):
    _need(m, 1, "ext_m0_below")
    return (_p([1, 1], P) ** (m - 1)).shift(1)


def _g_ext_m0_upto(P, m):
    _need(m, 1, "ext_m0_upto")
    return (_p([1, 1], P) ** (m - 1)).shift(1) / _p([1, -1], P)


def _g_ext_m_below(P, m):
    _need(m, 1, "ext_m_below")
    base = _p([1, 1], P) ** (m - 2)
    return base.shift(3) * (m + 1) - _p([-1, -2, 1], P).shift(1) * base


def _g_ext_m_upto(P, m):
    _need(m, 1, "ext_m_upto")
    inner = _p([1, 1, m - 1, -(m - 1)], P)
    return (inner * _p([1, 1], P) ** (m - 2)).shift(1) / _p([1, -1], P) ** 2


def _g_rgs12313(P, _):
    one_x = _p([1, -1], P)
    return 1 / one_x + _x(P) / (one_x * 2) * (1 / _p([1, -4], P).sqrt() - 1)


def _g_rgs_triple(P, _):
    rad = _p([1, -2, -3], P).sqrt()
    return 1 + _x(P) * (_p([3, -9], P) + rad) / (_p([2, -7], P) * _p([1, -1], P) * 2)


def _g_rgs_ell1(P, ell):
    _need(ell, 2, "rgs_ell1")
    prod = Series.const(1, P)
    prods = [prod]
    for j in range(1, ell + 1):
        prod = prod * _p([1, -j], P)
        prods.append(prod)
    total = _p([1, -(ell - 1)], P).shift(ell - 1) / prods[ell]
    for i in range(1, ell - 1):
        total = total + Series.monomial(i, P) / prods[i]
    return total


def _g_ex21(P, _):
    return _p([0, 1, 2, 2, 1], P)


def _g_ex22(P, _):
    return _p([0, 1, 1], P) / _p([1, -1, -1], P)


def _g_motzkin(P, _):
    return (_p([1, -1], P) - _p([1, -2, -3], P).sqrt()).shift(-2) / 2


def _g_catalan(P, _):
    return (1 - _p([1, -4], P).sqrt()).shift(-1) / 2


@dataclass(frozen=True)
class CatalogEntry:
    build: Callable
    # Laurent terms the expression passes through (extra working precision)
    slack: int = 0
    # the series counts x^{n+1} (inversion convention) or x^n (RGS convention)
    count_shift: int = 1
    description: str = ""


SERIES_CATALOG: dict[str, CatalogEntry] = {
    "thAA2": CatalogEntry(_g_thAA2, 2, 1, "I_n(000,021)"),
    "thCC3": CatalogEntry(_g_thCC3, 2, 1, "I_n(100,021) = I_n(110,021)"),
    "thDD1": CatalogEntry(_g_thDD1, 1, 1, "I_n(102,021)"),
    "thBB2": CatalogEntry(_g_thBB2, 0, 1, "I_n(100,012)"),
    "ext_m0_below": CatalogEntry(_g_ext_m0_below, 0, 1, "0^m m 0 pi', pi' over {0..m-1}"),
    "ext_m0_upto": CatalogEntry(_g_ext_m0_upto, 0, 1, "0^m m 0 pi', pi' over {0..m}"),
    "ext_m_below": CatalogEntry(_g_ext_m_below, 0, 1, "0^m m pi', pi' over {0..m-1}"),
    "ext_m_upto": CatalogEntry(_g_ext_m_upto, 0, 1, "0^m m pi', pi' over {0..m}"),
    "rgs12313_12323": CatalogEntry(_g_rgs12313, 0, 0, "P_n(12313,12323)"),
    "rgs_triple": CatalogEntry(_g_rgs_triple, 0, 0, "P_n(12313,12323,12333)"),
    "rgs_ell1": CatalogEntry(_g_rgs_ell1, 0, 0, "P_n(12..l1), n >= 1"),
    "ex21": CatalogEntry(_g_ex21, 0, 1, "I_n(000,001,012)"),
    "ex22": CatalogEntry(_g_ex22, 0, 1, "I_n(000,001)"),
    "motzkin": CatalogEntry(_g_motzkin, 2, 0, "Motzkin numbers"),
    "catalan": CatalogEntry(_g_catalan, 1, 0, "Catalan numbers"),
}


def catalog_series(fid: FormulaId | str, N: int) -> Series:
    """The named generating function, exact through ``x**N``."""
    if isinstance(fid, str):
        fid = FormulaId.parse(fid)
    if N < 0:
        raise ValueError("N must be >= 0")
    entry = SERIES_CATALOG.get(fid.name)
    if entry is None:
        raise KeyError(f"unknown formula {fid.name!r}")
    s = entry.build(N + 1 + entry.slack, fid.param)
    if s.prec < N + 1:
        raise SeriesError(f"{fid}: only {s.prec} terms survived, wanted {N + 1}")
    if s.val < 0:
        raise SeriesError(f"{fid}: residual negative-valuation term x^{s.val}")
    return s.truncate(N + 1)


# ---------------------------------------------------------------------------
# explicit counting formulas


def fib(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def trinomial(n: int) -> int:
    """``sum_k (-1)^(n-k) C(n,k) C(2k,k)`` (central trinomial coefficients)."""
    return sum((-1) ** (n - k) * comb(n, k) * comb(2 * k, k) for k in range(n + 1))


def _as_int(v: Fraction, name: str, n: int) -> int:
    if v.denominator != 1:
        raise SeriesError(f"{name}: non-integral value {v} at n={n}")
    return v.numerator


def _f_thAA2(n):
    if n < 1:
        return None
    a = trinomial
    return Fraction(3 * a(n - 1) + a(n) - 3 * a(n + 1) + a(n + 2), 2)


def _f_thCC3(n):
    return Fraction(n * n + n + 6, 2 * (n + 3) * (n + 2)) * comb(2 * n + 2, n + 1)


def _f_thDD1(n):
    cat = sum(Fraction(comb(2 * k, k), k + 1) for k in range(n + 1))
    return cat - 1 - Fraction(n ** 3, 6) - Fraction(11 * n, 6) + 2 ** n


def _f_thBB2(n):
    # the printed "15 Fin_{n+1}" is read as 15 Fib_{n+1}
    return Fraction((n + 7) * fib(n) + 15 * fib(n + 1) + n * fib(n + 2), 5) \
        - 1 - comb(n + 2, 2)


def _f_ex22(n):
    return Fraction(fib(n + 2))


FORMULAS: dict[str, Callable[[int], Fraction | None]] = {
    "thAA2": _f_thAA2,
    "thCC3": _f_thCC3,
    "thDD1": _f_thDD1,
    "thBB2": _f_thBB2,
    "ex22": _f_ex22,
}


def formula_terms(fid: FormulaId | str, N: int) -> list[int | None]:
    """Values for n = 0..N; ``None`` where the formula is undefined."""
    name = fid.name if isinstance(fid, FormulaId) else fid
    f = FORMULAS.get(name)
    if f is None:
        raise KeyError(f"unknown formula {name!r}")
    out: list[int | None] = []
    for n in range(N + 1):
        v = f(n)
        out.append(None if v is None else _as_int(v, name, n))
    return out


def detect_offset(formula: Sequence[int | None], counts: Sequence[int],
                  shifts: Sequence[int] = (0, 1), min_overlap: int = 3) -> int | None:
    """The unique ``s`` with ``formula[n + s] == counts[n]`` on the overlap, else None."""
    good = []
    for s in shifts:
        pairs = [(formula[n + s], c) for n, c in enumerate(counts)
                 if 0 <= n + s < len(formula) and formula[n + s] is not None]
        if len(pairs) >= min_overlap and all(f == c for f, c in pairs):
            good.append(s)
    return good[0] if len(good) == 1 else None
