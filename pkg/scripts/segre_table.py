"""Print the Segre classes s_l(F_k) for every level up to a depth.

    python3 scripts/segre_table.py --n 2 --depth 2
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from jettower.segre import build_table


@dataclass
class Config:
    n: int = 2
    depth: int = 2


def main(cfg: Config) -> None:
    table = build_table(cfg.n, cfg.depth)
    for k, row in enumerate(table.rows):
        print(f"level {k}")
        for ell, s in enumerate(row):
            print(f"  s_{ell}(F_{k}) = {s.to_text()}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--depth", type=int, default=2)
    main(Config(**vars(ap.parse_args())))
