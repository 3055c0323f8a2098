"""Scan the level n+1 bigness test over a grid of (r, d).

For each n the exact Morse difference is computed once; the grid only
evaluates it. Prints one row per d with the smallest grid r giving a
positive verdict, plus the dominant term.

    python3 scripts/final_argument_scan.py --n 1 2 --x 1 --chi 2
"""

from __future__ import annotations

import argparse
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from jettower.positivity import final_bundles, morse_difference


@dataclass
class ScanConfig:
    n: list = field(default_factory=lambda: [1, 2])
    x: Fraction = Fraction(1)
    chi: Fraction = Fraction(2)
    d_values: list = field(default_factory=lambda: [1, 10, 10**2, 10**3, 10**6])
    r_exponents: list = field(default_factory=lambda: list(range(0, 25)))


def scan_one(n: int, cfg: ScanConfig) -> list[str]:
    ctx, A, B = final_bundles(n, cfg.x)
    diff = morse_difference(A, B, ctx).substitute_eps(n)
    lines = [f"n={n}  dominant: {diff.dominant_term().to_text()}"]
    for d in cfg.d_values:
        first = next(
            (e for e in cfg.r_exponents
             if diff.evaluate({"r": 10**e, "d": d, "chi": cfg.chi}) > 0),
            None,
        )
        where = "none in grid" if first is None else f"r = 1e{first}"
        lines.append(f"  d={d:<10} first positive at {where}")
    return lines


def main(cfg: ScanConfig) -> None:
    with ProcessPoolExecutor() as pool:
        for lines in pool.map(scan_one, cfg.n, [cfg] * len(cfg.n)):
            print("\n".join(lines))


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--x", type=Fraction, default=Fraction(1))
    ap.add_argument("--chi", type=Fraction, default=Fraction(2))
    main(ScanConfig(**vars(ap.parse_args())))
