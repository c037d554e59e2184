"""Compare class partitions at shape depth 2t and 2t+2 for every catalog set."""

import argparse
import time
from dataclasses import dataclass

from invtrees.closure import parse_pattern_list
from invtrees.isocheck import depth_audit
from invtrees.registry import PATTERN_SETS


@dataclass
class Config:
    max_level: int = 6
    extra: int = 2
    only: str | None = None


def run(cfg: Config) -> int:
    bad = 0
    print("patterns             t   nodes  classes  classes+  mismatches  seconds")
    for pats, kind in PATTERN_SETS:
        if cfg.only and pats != cfg.only:
            continue
        B = parse_pattern_list(pats, kind)
        t0 = time.perf_counter()
        res = depth_audit(B, cfg.max_level, extra=cfg.extra)
        dt = time.perf_counter() - t0
        bad += not res.ok
        print(f"{pats:20s} {B.horizon_t:2d} {res.nodes:7d} {res.classes_low:8d} "
              f"{res.classes_high:9d} {len(res.mismatches):11d} {dt:8.1f}")
    return 1 if bad else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-level", type=int, default=Config.max_level)
    ap.add_argument("--extra", type=int, default=Config.extra)
    ap.add_argument("--only", help="a single pattern list, e.g. 100,021")
    a = ap.parse_args()
    raise SystemExit(run(Config(a.max_level, a.extra, a.only)))
