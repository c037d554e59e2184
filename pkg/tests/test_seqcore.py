from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invtrees.closure import parse_pattern_list
from invtrees.gentree import iter_level
from invtrees.registry import PATTERN_SETS
from invtrees.seqcore import (INVERSION, RGS, Pattern, PlainWord, avoids_all, contains,
                              ends_with_occurrence, extension_ok, format_word, is_valid,
                              kind_from_name, normalize, parse_word)


def test_validity_examples():
    assert is_valid(parse_word("010213211"), INVERSION)
    assert not is_valid(parse_word("021"), INVERSION)
    assert not is_valid(parse_word("1312"), RGS)
    assert is_valid((1, 2, 1, 3), RGS)
    assert is_valid((5, 0, 3), PlainWord(5))
    assert not is_valid((6,), PlainWord(5))


def test_containment_examples():
    e = parse_word("010213211")
    assert not contains(e, Pattern.parse("201"))
    assert contains(e, Pattern.parse("120"))
    assert contains(e, Pattern.parse("0000"))
    assert not contains((0, 1), Pattern.parse("012"))


def test_equalities_are_preserved():
    assert not contains((0, 1, 1), Pattern.parse("021"))
    assert contains((0, 0, 0), Pattern.parse("000"))
    assert not contains((0, 1, 2), Pattern.parse("000"))


def test_word_io():
    assert parse_word("0,1,0,2") == (0, 1, 0, 2)
    assert parse_word("0102") == (0, 1, 0, 2)
    assert parse_word("0, 10, 3") == (0, 10, 3)
    assert format_word((0, 1, 12)) == "0,1,12"
    assert format_word((0, 1, 2), compact=True) == "012"
    with pytest.raises(ValueError):
        parse_word("0,-1")
    with pytest.raises(ValueError):
        parse_word(",".join(["0"] * 65))
    with pytest.raises(ValueError):
        parse_word(f"0,{1 << 16}")


def test_pattern_must_be_normalized():
    with pytest.raises(ValueError):
        Pattern((0, 2), INVERSION)
    with pytest.raises(ValueError):
        Pattern((0, 1), RGS)
    assert Pattern((1, 2, 1), RGS).normalized
    assert normalize((5, 3, 5, 9)) == (1, 0, 1, 2)
    assert normalize((5, 3, 5, 9), base=1) == (2, 1, 2, 3)


def test_kind_names():
    assert kind_from_name("inv") == INVERSION
    assert kind_from_name("rgs") == RGS
    with pytest.raises(ValueError):
        kind_from_name("perm")


def test_extension_examples():
    B = parse_pattern_list("000")
    assert not extension_ok((0, 0), 0, B.raw)
    B = parse_pattern_list("000,001,012")
    assert extension_ok((0,), 1, B.raw)


@pytest.mark.parametrize("pats,kind", PATTERN_SETS, ids=[p for p, _ in PATTERN_SETS])
def test_extension_matches_recomputation(pats, kind):
    """Every avoiding word up to length 7, every next letter (length 8)."""
    B = parse_pattern_list(pats, kind)
    for level in range(7):
        for w in iter_level(B, level):
            top = max(w) + 1 if kind == RGS else len(w)
            for x in range(1 if kind == RGS else 0, top + 1):
                assert extension_ok(w, x, B.raw) == avoids_all(w + (x,), B.raw)


def test_anchored_occurrence():
    p = Pattern.parse("021")
    assert ends_with_occurrence((0, 2), 1, p)
    assert not ends_with_occurrence((0, 2, 1), 0, p)


words = st.lists(st.integers(0, 6), min_size=0, max_size=9).map(tuple)
patterns = st.sampled_from(["000", "001", "012", "021", "100", "201", "210", "1010", "0102"])


@settings(max_examples=300, deadline=None)
@given(words, patterns, st.integers(0, 7))
def test_containment_is_monotone(w, p, x):
    pat = Pattern.parse(p)
    if contains(w, pat):
        assert contains(w + (x,), pat)


@settings(max_examples=300, deadline=None)
@given(words, patterns, st.integers(1, 5), st.integers(0, 20))
def test_containment_invariant_under_relabelling(w, p, scale, offset):
    pat = Pattern.parse(p)
    relabelled = tuple(scale * x + offset for x in w)
    assert contains(w, pat) == contains(relabelled, pat)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 4), max_size=7).map(tuple), patterns)
def test_containment_agrees_with_subsequence_search(w, p):
    from itertools import combinations

    pat = Pattern.parse(p)
    k = len(pat)
    brute = any(normalize(tuple(w[i] for i in idx)) == pat.word
                for idx in combinations(range(len(w)), k))
    assert contains(w, pat) == brute


def test_small_words_exhaustive_against_brute_force():
    from itertools import combinations

    pat = Pattern.parse("101")
    for w in product(range(3), repeat=5):
        brute = any(normalize(tuple(w[i] for i in idx)) == pat.word
                    for idx in combinations(range(5), 3))
        assert contains(w, pat) == brute
