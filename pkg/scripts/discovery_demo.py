"""Discover classes level by level and compare the rule counts with the tree."""

import argparse
from dataclasses import dataclass

from invtrees.closure import parse_pattern_list
from invtrees.discover import describe, discover, replay_check
from invtrees.gentree import level_sizes
from invtrees.seqcore import kind_from_name


@dataclass
class Config:
    patterns: str = "000,001"
    kind: str = "inv"
    levels: int = 5
    show: int = 20


def run(cfg: Config) -> None:
    B = parse_pattern_list(cfg.patterns, kind_from_name(cfg.kind))
    table, rules = discover(B, cfg.levels)
    print(f"{B}: {rules.status}, {len(table)} classes after {rules.depth} levels")
    lines = describe(table, rules)
    for line in lines[:cfg.show]:
        print("  " + line)
    if len(lines) > cfg.show:
        print(f"  ... {len(lines) - cfg.show} more")
    print("rule counts:", rules.level_counts(cfg.levels))
    print("tree counts:", level_sizes(B, cfg.levels))
    problems = replay_check(table, rules, B)
    print("replay:", "clean" if not problems else problems[:5])


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("patterns", nargs="?", default=Config.patterns)
    ap.add_argument("--kind", default=Config.kind)
    ap.add_argument("--levels", type=int, default=Config.levels)
    a = ap.parse_args()
    run(Config(a.patterns, a.kind, a.levels))
