"""Run ``verify`` over every catalog class and print a one-line summary each."""

import argparse
import io
import time
from contextlib import redirect_stdout
from dataclasses import dataclass

from invtrees.cli import main
from invtrees.registry import CLASSES


@dataclass
class Config:
    n: int = 11
    terms_n: int = 24
    ell_values: tuple[int, ...] = (2, 3, 4)


def runs(cfg: Config):
    for name, cls in CLASSES.items():
        if cls.param:
            for ell in cfg.ell_values:
                yield f"{name}(ell={ell})", ["verify", "--class", name, "--n", str(cfg.n),
                                             "--ell", str(ell)]
            continue
        yield name, ["verify", "--class", name, "--n", str(cfg.n)]
        if len(cls.terms) > cfg.n + 1:
            n = min(cfg.terms_n, len(cls.terms) - 1)
            yield f"{name}(terms)", ["verify", "--class", name, "--n", str(n),
                                     "--engines", "rules,terms"]


def main_(cfg: Config) -> int:
    failures = 0
    for label, argv in runs(cfg):
        buf = io.StringIO()
        t0 = time.perf_counter()
        with redirect_stdout(buf):
            code = main(argv)
        dt = time.perf_counter() - t0
        tail = buf.getvalue().strip().splitlines()[-1] if buf.getvalue().strip() else ""
        print(f"{label:24s} exit={code}  {dt:6.2f}s  {tail}")
        failures += code != 0
    return 1 if failures else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=Config.n)
    ap.add_argument("--terms-n", type=int, default=Config.terms_n)
    args = ap.parse_args()
    raise SystemExit(main_(Config(n=args.n, terms_n=args.terms_n)))
