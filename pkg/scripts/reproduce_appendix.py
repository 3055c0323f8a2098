"""Recompute every appendix case and print the MATCH/MISMATCH reports.

    python3 scripts/reproduce_appendix.py [--cases x1 x3] [--json out.json]
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass, field

from jettower.appendix import CASES, run_appendix


@dataclass
class Config:
    cases: list = field(default_factory=lambda: list(CASES))
    json_path: str | None = None


def run(cfg: Config) -> int:
    reports = {}
    for case in cfg.cases:
        t0 = time.perf_counter()
        rep = run_appendix(case)
        print(rep.to_text())
        print(f"  ({time.perf_counter() - t0:.2f}s)\n")
        reports[case] = rep.to_json()
    if cfg.json_path:
        with open(cfg.json_path, "w") as fh:
            json.dump(reports, fh, indent=2, sort_keys=True)
    return 0 if all(r["ok"] for r in reports.values()) else 4


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--cases", nargs="+", choices=CASES, default=list(CASES))
    ap.add_argument("--json", dest="json_path")
    raise SystemExit(run(Config(**vars(ap.parse_args()))))
