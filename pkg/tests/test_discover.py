import json

import pytest

from invtrees.closure import parse_pattern_list
from invtrees.discover import (REGULAR, TRUNCATED, describe, discover, export_rules,
                               import_rules, replay_check)
from invtrees.gentree import level_sizes
from invtrees.seqcore import RGS


def test_finite_class_is_regular():
    table, rules = discover(parse_pattern_list("000,001,012"), 5)
    assert rules.status == REGULAR
    assert describe(table, rules) == ["0 -> 00, 01", "00 -> eps", "01 -> 00, 011", "011 -> 00"]
    assert rules.level_counts(4) == [1, 2, 2, 1, 0]


def test_fibonacci_class_families():
    table, rules = discover(parse_pattern_list("000,001"), 5)
    assert rules.status == TRUNCATED
    lines = describe(table, rules)
    assert lines[:4] == ["0 -> 00, 01", "00 -> eps", "01 -> 00, 011, 012", "011 -> 00"]
    assert "012 -> 00, 011, 0122, 0123" in lines
    assert "0122 -> 00, 011" in lines


def test_rgs_discovery():
    table, rules = discover(parse_pattern_list("1212", RGS), 4)
    assert describe(table, rules)[:2] == ["1 -> 1, 12", "12 -> 1, 12, 123"]
    assert len(table) == 5


def test_rule_counts_match_tree_below_truncation():
    B = parse_pattern_list("100")
    table, rules = discover(B, 5, depth=6)
    assert rules.level_counts(5) == level_sizes(B, 5)
    with pytest.raises(KeyError):
        rules.level_counts(7)


@pytest.mark.parametrize("pats,kind,D", [("000,001,012", None, 5), ("021", None, 4),
                                         ("1122", RGS, 4)])
def test_replay_finds_no_problems(pats, kind, D):
    B = parse_pattern_list(pats, kind) if kind else parse_pattern_list(pats)
    table, rules = discover(B, D)
    assert replay_check(table, rules, B) == []


def test_replay_catches_a_bad_rule():
    B = parse_pattern_list("000,001")
    table, rules = discover(B, 4)
    rules.rules[2] = list(reversed(rules.rules[2]))
    assert replay_check(table, rules, B)


def test_json_round_trip():
    table, rules = discover(parse_pattern_list("021"), 4)
    text = export_rules(table, rules)
    doc = json.loads(text)
    assert list(doc) == ["status", "depth", "classes", "rules"]
    assert doc["classes"][0] == {"id": 0, "rep": "0", "level": 0}
    table2, rules2 = import_rules(text)
    assert table2.classes == table.classes
    assert rules2 == rules


@pytest.mark.parametrize("doc", [
    '{"status": "maybe", "depth": 1, "classes": [], "rules": []}',
    '{"status": "regular", "depth": 1, "classes": [{"id": 1, "rep": "0", "level": 0}], "rules": []}',
    '{"status": "regular", "depth": 1, "classes": [{"id": 0, "rep": "0", "level": 0}],'
    ' "rules": [{"id": 0, "children": [3]}]}',
    '{"status": "regular"}',
])
def test_import_rejects_bad_documents(doc):
    with pytest.raises(ValueError):
        import_rules(doc)


def test_discovery_is_deterministic():
    B = parse_pattern_list("201")
    a = export_rules(*discover(B, 4))
    b = export_rules(*discover(B, 4))
    assert a == b


def test_negative_depth():
    with pytest.raises(ValueError):
        discover(parse_pattern_list("021"), -1)
