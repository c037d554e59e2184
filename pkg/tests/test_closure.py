import pytest

from conftest import CLOSURE_EQUIVALENT, closure_disagreements
from invtrees.closure import PatternSet, build_pattern_set, l_tau, parse_pattern_list
from invtrees.registry import PATTERN_SETS
from invtrees.seqcore import INVERSION, RGS, Pattern, avoids_all, contains


def words(ps):
    return sorted(str(p) for p in ps)


@pytest.mark.parametrize("pat,expected", [
    ("021", ["0021", "0121"]),
    ("001", ["001"]),
    ("000", ["000"]),
    ("100", ["0100"]),
    ("201", ["00201", "01201"]),
    ("0102", ["0102"]),
])
def test_l_tau_examples(pat, expected):
    assert words(l_tau(Pattern.parse(pat))) == expected


def test_closure_words_are_inversion_sequences():
    for pat in ["021", "201", "210", "120", "1010", "2010"]:
        p = Pattern.parse(pat)
        for q in l_tau(p):
            assert len(q) <= len(p) + max(p.word)
            assert contains(q.word, p)


def test_horizon_is_longest_closure_pattern():
    assert parse_pattern_list("000,001,012").horizon_t == 3
    assert parse_pattern_list("100,021").horizon_t == 4
    assert parse_pattern_list("201").horizon_t == 5
    assert parse_pattern_list("12313,12323", RGS).horizon_t == 5


def test_rgs_sets_keep_their_patterns():
    B = parse_pattern_list("1212", RGS)
    assert B.closure == B.raw


@pytest.mark.parametrize("text,kind", [("", INVERSION), ("0", INVERSION), ("1", RGS),
                                       ("1312", RGS), ("02", INVERSION)])
def test_bad_pattern_lists(text, kind):
    with pytest.raises(ValueError):
        parse_pattern_list(text, kind)


def test_duplicates_are_dropped():
    B = build_pattern_set(["021", "021", Pattern.parse("000")])
    assert words(B.raw) == ["000", "021"]


def test_unrestricted_set_is_empty():
    B = PatternSet.unrestricted()
    assert B.raw == () and B.horizon_t == 0


def test_literal_closure_counterexample():
    B = parse_pattern_list("100")
    w = (0, 0, 2, 1, 1)
    assert not avoids_all(w, B.raw)
    assert avoids_all(w, B.closure)


@pytest.mark.parametrize("pats", sorted(CLOSURE_EQUIVALENT))
def test_closure_equivalent_sets(pats):
    assert closure_disagreements(parse_pattern_list(pats), 7) == []


@pytest.mark.parametrize("pats", [p for p, k in PATTERN_SETS
                                  if k == INVERSION and p not in CLOSURE_EQUIVALENT])
def test_closure_not_equivalent_sets(pats):
    assert closure_disagreements(parse_pattern_list(pats), 7)
