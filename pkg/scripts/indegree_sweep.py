#!/usr/bin/env python3
"""Check the general in-degree bound on every small graph.

Enumerates all edge subsets of K_n with at most ``max_edges`` edges and every
feasible in-degree target, and writes one CSV row per (graph, target).

    python3 scripts/indegree_sweep.py --vertices 5 --max-edges 8 --out sweep.csv
"""

import argparse
import csv
import sys
import time
from dataclasses import dataclass

from capcount.bounds import indegree_sweep


@dataclass
class SweepConfig:
    vertices: int = 5
    max_edges: int = 8
    out: str | None = None


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--vertices", type=int, default=SweepConfig.vertices)
    ap.add_argument("--max-edges", type=int, default=SweepConfig.max_edges)
    ap.add_argument("--out", help="CSV destination (default: summary only)")
    cfg = SweepConfig(**vars(ap.parse_args(argv)))

    start = time.perf_counter()
    rows, violations, tightest = 0, 0, None
    sink = open(cfg.out, "w", newline="") if cfg.out else None
    writer = csv.writer(sink) if sink else None
    if writer:
        writer.writerow(["edges", "r", "count", "bound", "ratio"])
    try:
        for rec in indegree_sweep(cfg.vertices, cfg.max_edges):
            rows += 1
            violations += rec.violated
            ratio = rec.count / rec.bound if rec.bound > 0 else float("inf")
            if tightest is None or ratio < tightest[0]:
                tightest = (ratio, rec)
            if writer:
                edges = " ".join(f"{u}-{v}" for u, v in rec.edges)
                writer.writerow([edges, ",".join(map(str, rec.r)), rec.count, f"{rec.bound:.9g}", f"{ratio:.9g}"])
    finally:
        if sink:
            sink.close()

    elapsed = time.perf_counter() - start
    print(f"pairs checked   {rows}")
    print(f"violations      {violations}")
    ratio, rec = tightest
    print(f"tightest ratio  {ratio:.9g} at edges={rec.edges} r={rec.r}")
    print(f"elapsed         {elapsed:.1f}s")
    return 1 if violations else 0


if __name__ == "__main__":
    sys.exit(main())
