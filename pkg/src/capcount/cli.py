"""capcount command line.

Every subcommand takes exactly one graph source: ``--input PATH`` (edge list)
or ``--gen SPEC`` (see :mod:`capcount.generators`).  Exit status: 0 on
success, 1 if a lower bound exceeds its exact count, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import bounds as B
from .capacity import capacity_of
from .counting import count_eulerian, count_orientations, count_perfect_matchings
from .generators import default_bipartition, generate
from .polycore import (
    MultiGraph,
    format_edge_list,
    graph_polynomial,
    gurvits_polynomial,
    read_edge_list,
)
from .stability import DEFAULT_TRIALS, stability_test

SEED_ENV = "CAPCOUNT_SEED"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    input: str | None = None
    gen: str | None = None
    r: str | None = None
    alpha: str | None = None
    bipartition: str | None = None
    task: str | None = None
    tol: float = 1e-9
    max_iter: int = 10_000
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    output: str | None = None
    format: str = "table"
    which: str = "graph"
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.subcommand != "gen" and (self.input is None) == (self.gen is None):
            raise UsageError("give exactly one of --input or --gen")


def fmt_float(x) -> str:
    return f"{x:.9g}"


def load_graph(cfg: RunConfig) -> tuple:
    if cfg.gen is not None:
        return generate(cfg.gen, cfg.seed), cfg.gen
    return read_edge_list(cfg.input), Path(cfg.input).stem


def _ints(text: str) -> list:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def parse_vector(text: str, G: MultiGraph, rational: bool = False) -> list:
    """Comma list, ``indeg-half``, or ``matching:K`` (1 on the first K vertices, d-1 after)."""
    degrees = G.degrees()
    text = text.strip()
    if text == "indeg-half":
        if rational:
            return [Fraction(d, 2) for d in degrees]
        if any(d % 2 for d in degrees):
            raise UsageError("indeg-half needs every degree even")
        return [d // 2 for d in degrees]
    if text.startswith("matching:"):
        k = int(text.split(":", 1)[1])
        return [1 if v < k else degrees[v] - 1 for v in range(G.vertex_count)]
    if not rational:
        vec = _ints(text)
    else:
        try:
            vec = [Fraction(t.strip()) for t in text.split(",") if t.strip()]
        except ValueError:
            raise UsageError(f"cannot parse vector {text!r}") from None
    if len(vec) != G.vertex_count:
        raise UsageError(f"vector has {len(vec)} entries, graph has {G.vertex_count} vertices")
    return vec


def resolve_bipartition(cfg: RunConfig, G: MultiGraph):
    if cfg.bipartition:
        A = tuple(_ints(cfg.bipartition))
        return A, tuple(v for v in range(G.vertex_count) if v not in set(A))
    if cfg.gen:
        parts = default_bipartition(cfg.gen, G)
        if parts is not None:
            return parts
    parts = G.bipartition()
    if parts is None:
        raise UsageError("graph is not bipartite")
    return parts


def render(rows: list, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(rows[0].keys())
        for row in rows:
            w.writerow(row.values())
        return buf.getvalue()
    width = max(len(k) for row in rows for k in row)
    blocks = ["\n".join(f"{k:<{width}}  {v}" for k, v in row.items()) for row in rows]
    return "\n\n".join(blocks) + "\n"


def _bound_report(cfg: RunConfig, G, gid, strict):
    task = cfg.task or B.GENERAL
    if task == B.MATCHING:
        A, Bs = resolve_bipartition(cfg, G)
        return B.verify(G, task, A=A, B=Bs, graph_id=gid, strict=strict)
    if task == B.GENERAL:
        if cfg.r is None:
            raise UsageError("--task general needs --r")
        return B.verify(G, task, r=parse_vector(cfg.r, G), graph_id=gid, strict=strict)
    return B.verify(G, task, graph_id=gid, strict=strict)


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    status = 0
    if cfg.subcommand == "gen":
        if cfg.gen is None:
            raise UsageError("gen needs --gen SPEC")
        text = format_edge_list(generate(cfg.gen, cfg.seed))
    else:
        G, gid = load_graph(cfg)
        rows, text = None, None
        sc = cfg.subcommand
        if sc == "count-orientations":
            if cfg.r is None:
                raise UsageError("count-orientations needs --r")
            r = parse_vector(cfg.r, G)
            res = count_orientations(G, r)
            rows = [{"graph_id": gid, "r": ",".join(map(str, r)), "count": res.count, "method": res.method}]
        elif sc == "count-eulerian":
            res = count_eulerian(G)
            rows = [{"graph_id": gid, "count": res.count, "method": res.method}]
        elif sc == "count-matchings":
            A, Bs = resolve_bipartition(cfg, G)
            res = count_perfect_matchings(G, A, Bs)
            rows = [{"graph_id": gid, "count": res.count, "method": res.method}]
        elif sc == "capacity":
            if cfg.alpha is None:
                raise UsageError("capacity needs --alpha")
            alpha = parse_vector(cfg.alpha, G, rational=True)
            res = capacity_of(graph_polynomial(G), alpha, tol=cfg.tol, max_iter=cfg.max_iter)
            rows = [{
                "graph_id": gid,
                "value": fmt_float(res.value),
                "flag": res.flag,
                "iterations": res.iterations,
                "gradient_norm": fmt_float(res.gradient_norm_final),
            }]
        elif sc in ("bound", "verify"):
            report = _bound_report(cfg, G, gid, strict=False)
            if sc == "verify":
                if cfg.format == "csv":
                    text = B.reports_to_csv([report])
                else:
                    rows = [dict(zip(B.CSV_FIELDS, report.csv_row()))]
                    rows[0]["result"] = "PASS" if report.passed else "FAIL"
                status = 0 if report.passed else 1
            else:
                row = dict(zip(B.CSV_FIELDS, report.csv_row()))
                for k in ("count", "slack_ratio"):
                    row.pop(k)
                rows = [row]
        elif sc == "stability-test":
            P = graph_polynomial(G) if cfg.which == "graph" else gurvits_polynomial(G, *resolve_bipartition(cfg, G))
            v = stability_test(P, cfg.trials, cfg.seed)
            rows = [{"graph_id": gid, "polynomial": cfg.which, "verdict": v.verdict, "trials": v.trials,
                     "witness": "" if v.witness is None else repr(v.witness)}]
        else:
            raise UsageError(f"unknown subcommand {sc!r}")
        if text is None:
            text = render(rows, cfg.format)
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        out.write(text)
    return status


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="capcount", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def common(p, graph=True):
        if graph:
            p.add_argument("--input", help="edge-list file")
        p.add_argument("--gen", help="generator spec, e.g. cycle:4")
        p.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or 0")
        p.add_argument("--output", help="write here instead of stdout")
        p.add_argument("--format", choices=("table", "csv"), default="table")
        return p

    common(sub.add_parser("gen", help="write a generated graph as an edge list"), graph=False)
    common(sub.add_parser("count-orientations")).add_argument("--r", required=True)
    common(sub.add_parser("count-eulerian"))
    common(sub.add_parser("count-matchings")).add_argument("--bipartition", help="vertices of class A")
    p = common(sub.add_parser("capacity"))
    p.add_argument("--alpha", required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--max-iter", type=int, default=10_000)
    for name in ("bound", "verify"):
        p = common(sub.add_parser(name))
        p.add_argument("--task", choices=(B.MATCHING, B.EULERIAN, B.GENERAL), required=True)
        p.add_argument("--r")
        p.add_argument("--bipartition")
    p = common(sub.add_parser("stability-test"))
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--which", choices=("graph", "gurvits"), default="graph")
    p.add_argument("--bipartition")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    seed = ns.seed
    if seed is None:
        seed = int(os.environ.get(SEED_ENV, "0"))
    known = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__ and v is not None}
    known["seed"] = seed
    return RunConfig(**known)


def main(argv=None) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        return run(cfg)
    except (UsageError, ValueError, OSError) as exc:
        print(f"capcount: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
