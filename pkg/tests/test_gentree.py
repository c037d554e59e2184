import pytest

from invtrees.closure import parse_pattern_list
from invtrees.gentree import (Automaton, BudgetExceeded, children, iter_level, level_sizes,
                              root_word, subtree_level_counts)
from invtrees.oracle import count_avoiders, filter_avoiders
from invtrees.registry import PATTERN_SETS
from invtrees.seqcore import RGS, avoids_all


def test_finite_tree_children():
    B = parse_pattern_list("000,001,012")
    assert children((0,), B) == [(0, 0), (0, 1)]
    assert children((0, 1), B) == [(0, 1, 0), (0, 1, 1)]
    assert children((0, 0), B) == []
    assert level_sizes(B, 5) == [1, 2, 2, 1, 0, 0]


def test_roots():
    assert root_word(parse_pattern_list("021")) == (0,)
    assert root_word(parse_pattern_list("1212", RGS)) == (1,)


def test_schroeder_levels():
    assert level_sizes(parse_pattern_list("021"), 6) == [1, 2, 6, 22, 90, 394, 1806]


def test_rgs_levels_are_shifted_by_one():
    # level k of the RGS tree holds the words of length k + 1
    assert level_sizes(parse_pattern_list("1122", RGS), 6) == [1, 2, 5, 14, 42, 133, 441]


def test_subtree_counts():
    B = parse_pattern_list("100")
    assert subtree_level_counts((0, 0), B, 3) == [1, 3, 12, 57]
    with pytest.raises(ValueError):
        subtree_level_counts((0, 1, 0, 0), B, 2)


def test_budget():
    with pytest.raises(BudgetExceeded) as info:
        level_sizes(parse_pattern_list("021"), 8, budget=100)
    assert info.value.partial[0] == 1


@pytest.mark.parametrize("pats,kind", PATTERN_SETS, ids=[p for p, _ in PATTERN_SETS])
def test_levels_match_filter(pats, kind):
    B = parse_pattern_list(pats, kind)
    N = 6
    sizes = level_sizes(B, N)
    brute = count_avoiders(B, N + (1 if kind == RGS else 0), method="filter").counts
    if kind == RGS:
        brute = brute[1:]
    assert sizes == brute


@pytest.mark.parametrize("pats,kind", PATTERN_SETS, ids=[p for p, _ in PATTERN_SETS])
def test_level_words_are_the_avoiders_in_order(pats, kind):
    B = parse_pattern_list(pats, kind)
    for level in range(5):
        got = list(iter_level(B, level))
        n = level + 1 if kind == RGS else level
        assert got == sorted(filter_avoiders(B, n))


def test_child_count_is_bounded():
    B = parse_pattern_list("201")
    for level in range(6):
        for w in iter_level(B, level):
            assert len(children(w, B)) <= len(w) + 1


def test_automaton_agrees_with_direct_children():
    B = parse_pattern_list("120,210")
    auto = Automaton(B)
    for level in range(5):
        for w in iter_level(B, level):
            st = auto.state_of(w)
            assert [w + (x,) for x, _ in auto.child_states(st)] == children(w, B)
            assert all(avoids_all(c, B.raw) for c in children(w, B))
