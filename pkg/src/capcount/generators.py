"""Named graph families used by the CLI and the experiment scripts.

Spec strings look like ``cycle:4``, ``complete_bipartite:3``, ``complete:5``,
``random_regular_bipartite:3:2:7`` (n, d, seed) or ``random_even_graph:5:1``
(n, seed).  Commas work as separators too.
"""

from __future__ import annotations

import itertools
import re

import numpy as np

from .polycore import MultiGraph


def complete_bipartite(d: int) -> MultiGraph:
    """K_{d,d}; vertices 0..d-1 form one class."""
    if d < 1:
        raise ValueError("complete_bipartite needs d >= 1")
    return MultiGraph(2 * d, tuple((a, d + b) for a in range(d) for b in range(d)))


def cycle(n: int) -> MultiGraph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return MultiGraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def complete(n: int) -> MultiGraph:
    if n < 1:
        raise ValueError("complete needs n >= 1")
    return MultiGraph(n, tuple(itertools.combinations(range(n), 2)))


def random_regular_bipartite(n: int, d: int, seed: int = 0) -> MultiGraph:
    """Union of d uniformly random perfect matchings between {0..n-1} and {n..2n-1}.

    Parallel edges are kept.
    """
    if n < 1 or d < 1:
        raise ValueError("random_regular_bipartite needs n >= 1 and d >= 1")
    rng = np.random.default_rng(seed)
    edges = []
    for _ in range(d):
        perm = rng.permutation(n)
        edges.extend((a, n + int(perm[a])) for a in range(n))
    return MultiGraph(2 * n, tuple(edges))


def random_even_graph(n: int, seed: int = 0) -> MultiGraph:
    """Simple graph on n vertices with every degree even.

    Each edge of K_n is kept with probability 1/2, then odd-degree vertices are
    paired off in order and the edge between each pair is toggled.
    """
    if n < 1:
        raise ValueError("random_even_graph needs n >= 1")
    rng = np.random.default_rng(seed)
    present = {e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5}
    deg = [0] * n
    for u, v in present:
        deg[u] += 1
        deg[v] += 1
    odd = [v for v in range(n) if deg[v] % 2]
    for u, v in zip(odd[::2], odd[1::2]):
        present ^= {(u, v)}
    return MultiGraph(n, tuple(sorted(present)))


GENERATORS = {
    "complete_bipartite": (complete_bipartite, 1),
    "cycle": (cycle, 1),
    "complete": (complete, 1),
    "random_regular_bipartite": (random_regular_bipartite, 3),
    "random_even_graph": (random_even_graph, 2),
}


def parse_spec(spec: str, default_seed: int = 0):
    name, *rest = [p for p in re.split(r"[:,\s]+", spec.strip()) if p]
    if name not in GENERATORS:
        raise ValueError(f"unknown generator {name!r}; choose from {sorted(GENERATORS)}")
    func, arity = GENERATORS[name]
    try:
        args = [int(a) for a in rest]
    except ValueError:
        raise ValueError(f"generator arguments must be integers: {spec!r}") from None
    if name.startswith("random") and len(args) == arity - 1:
        args.append(default_seed)
    if len(args) != arity:
        raise ValueError(f"{name} takes {arity} integer argument(s), got {len(args)}")
    return name, func, args


def generate(spec: str, default_seed: int = 0) -> MultiGraph:
    _, func, args = parse_spec(spec, default_seed)
    return func(*args)


def default_bipartition(spec: str, G: MultiGraph):
    """Known classes for the bipartite families, else None."""
    name, _, args = parse_spec(spec)
    if name in ("complete_bipartite", "random_regular_bipartite"):
        n = args[0]
        return tuple(range(n)), tuple(range(n, 2 * n))
    return None
