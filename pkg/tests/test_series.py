from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invtrees.series import (FormulaId, Series, SeriesError, catalog_series, detect_offset,
                             fib, formula_terms, sqrt, trinomial)


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def motzkin(N):
    m = [1, 1]
    for n in range(2, N + 1):
        m.append(((2 * n + 1) * m[-1] + (3 * n - 3) * m[-2]) // (n + 2))
    return m[:N + 1]


def test_sqrt_one_minus_four_x():
    s = sqrt(Series.poly([1, -4], 12))
    assert s.int_terms(0, 12) == [1] + [-2 * catalan(n - 1) for n in range(1, 12)]


def test_laurent_valuation():
    x = Series.monomial(1, 10)
    s = (1 + x).shift(-2)
    assert s.val == -2 and s[-2] == 1 and s[-1] == 1 and s[0] == 0
    assert (s * x * x) == 1 + x


def test_errors():
    with pytest.raises(SeriesError):
        Series.poly([0, 1], 5).sqrt()
    with pytest.raises(SeriesError):
        Series.poly([2, 1], 5).sqrt()
    with pytest.raises(SeriesError):
        Series([], 5, 5).inverse()
    with pytest.raises(SeriesError):
        Series.poly([1], 3)[3]
    with pytest.raises(SeriesError):
        Series.poly([1, Fraction(1, 2)], 3).int_terms(0, 2)


nonzero = st.integers(-5, 5).filter(bool)
coeffs = st.lists(st.integers(-6, 6), min_size=1, max_size=8)


@settings(max_examples=60, deadline=None)
@given(nonzero, coeffs, st.integers(0, 3))
def test_inverse_identity(c0, rest, val):
    s = Series([c0] + rest, val, val + 10)
    one = s * s.inverse()
    assert one.val == 0 and one.terms(0, 10) == [1] + [0] * 9


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), coeffs, st.integers(0, 2))
def test_sqrt_squares_back(r0, rest, val):
    s = Series([r0 * r0] + rest, 2 * val, 2 * val + 9)
    r = s.sqrt()
    assert r * r == s
    assert r[val] == r0


@settings(max_examples=60, deadline=None)
@given(coeffs, nonzero, coeffs)
def test_division_identity(a, b0, b):
    A = Series.poly(a, 9)
    Bs = Series.poly([b0] + b, 9)
    assert (A / Bs) * Bs == A


@settings(max_examples=40, deadline=None)
@given(coeffs, coeffs, coeffs)
def test_ring_laws(a, b, c):
    A, B, C = (Series.poly(v, 8) for v in (a, b, c))
    assert A * (B + C) == A * B + A * C
    assert (A - B) + B == A


def test_catalog_small_series():
    assert catalog_series("catalan", 10).int_terms(0, 11) == [catalan(n) for n in range(11)]
    assert catalog_series("motzkin", 10).int_terms(0, 11) == motzkin(10)
    assert catalog_series("ex21", 6).int_terms(0, 7) == [0, 1, 2, 2, 1, 0, 0]
    assert catalog_series("ex22", 10).int_terms(1, 11) == [fib(n + 2) for n in range(10)]


def test_parametric_ids():
    assert FormulaId.parse("rgs_ell1(3)") == FormulaId("rgs_ell1", 3)
    assert FormulaId.parse("ext_m_upto:2") == FormulaId("ext_m_upto", 2)
    assert str(FormulaId("rgs_ell1", 4)) == "rgs_ell1(4)"
    # 12..l1 with l = 2 forbids 121: only the words 1..1 2..2
    assert catalog_series("rgs_ell1(2)", 8).int_terms(1, 9) == [2 ** (n - 1) for n in range(1, 9)]
    with pytest.raises(ValueError):
        catalog_series("rgs_ell1", 5)
    with pytest.raises(KeyError):
        catalog_series("nope", 5)


def test_extension_series_small_cases():
    # m = 1: after 010 a further 0 would complete 100
    assert catalog_series("ext_m0_below(1)", 6).int_terms(1, 7) == [1, 0, 0, 0, 0, 0]
    assert catalog_series("ext_m0_upto(2)", 6).int_terms(1, 7) == [1, 2, 2, 2, 2, 2]


def test_helpers():
    assert [fib(n) for n in range(10)] == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34]
    assert [trinomial(n) for n in range(8)] == [1, 1, 3, 7, 19, 51, 141, 393]


def test_formulas_are_integral():
    for name in ("thAA2", "thCC3", "thDD1", "thBB2", "ex22"):
        vals = formula_terms(name, 20)
        assert all(v is None or isinstance(v, int) for v in vals)
    assert formula_terms("thAA2", 3)[0] is None


def test_formula_against_series():
    # both closed forms of each class describe the same numbers
    cc = catalog_series("thCC3", 16).int_terms(1, 17)
    assert formula_terms("thCC3", 15) == cc
    bb = catalog_series("thBB2", 16).int_terms(1, 17)
    assert formula_terms("thBB2", 16)[1:] == bb[:16]


def test_detect_offset():
    counts = [1, 2, 5, 14, 42]
    assert detect_offset([1, 2, 5, 14, 42, 132], counts) == 0
    assert detect_offset([None, 1, 2, 5, 14, 42], counts) == 1
    assert detect_offset([7, 7, 7, 7], counts) is None
    assert detect_offset([1, 1, 1, 1, 1], [1, 1, 1]) is None
