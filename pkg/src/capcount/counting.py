"""Exact counters for orientations with prescribed in-degrees and perfect matchings.

Every quantity has two independent routes (polynomial expansion vs.
enumeration, Ryser vs. permutation sum) so the counts can cross-check.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .polycore import MultiGraph, check_bipartition, coefficient, graph_polynomial

BRUTE_FORCE = "brute-force"
TRUNCATED_EXPANSION = "truncated-expansion"
RYSER = "ryser"
PERMUTATION_SUM = "permutation-sum"

MAX_BRUTE_FORCE_EDGES = 24


@dataclass(frozen=True)
class CountResult:
    count: int
    method: str

    def __int__(self):
        return self.count


def is_feasible_target(G: MultiGraph, r: Sequence[int]) -> bool:
    if len(r) != G.vertex_count:
        raise ValueError(f"target has length {len(r)}, graph has {G.vertex_count} vertices")
    d = G.degrees()
    return sum(r) == G.edge_count and all(0 <= a <= b for a, b in zip(r, d))


def count_orientations(G: MultiGraph, r: Sequence[int]) -> CountResult:
    """Coefficient of prod x_v^{r_v} in P_G, by expansion truncated at r."""
    if not is_feasible_target(G, r):
        return CountResult(0, TRUNCATED_EXPANSION)
    P = graph_polynomial(G, cap=tuple(r))
    return CountResult(int(coefficient(P, r)), TRUNCATED_EXPANSION)


def _orientation_census(G: MultiGraph) -> Counter:
    if G.edge_count > MAX_BRUTE_FORCE_EDGES:
        raise ValueError(f"brute force is limited to {MAX_BRUTE_FORCE_EDGES} edges, got {G.edge_count}")
    census = Counter()
    for heads in itertools.product((0, 1), repeat=G.edge_count):
        indeg = [0] * G.vertex_count
        for (u, v), h in zip(G.edges, heads):
            indeg[v if h else u] += 1
        census[tuple(indeg)] += 1
    return census


def orientation_census(G: MultiGraph) -> dict:
    """In-degree sequence -> number of orientations, by enumerating all 2^e(G)."""
    return dict(_orientation_census(G))


def count_orientations_bruteforce(G: MultiGraph, r: Sequence[int]) -> CountResult:
    if len(r) != G.vertex_count:
        raise ValueError(f"target has length {len(r)}, graph has {G.vertex_count} vertices")
    return CountResult(_orientation_census(G).get(tuple(r), 0), BRUTE_FORCE)


def count_eulerian(G: MultiGraph) -> CountResult:
    d = G.degrees()
    odd = [v for v, k in enumerate(d) if k % 2]
    if odd:
        raise ValueError(f"odd degree at vertices {odd}; no Eulerian orientation exists")
    return count_orientations(G, [k // 2 for k in d])


def biadjacency(G: MultiGraph, A: Sequence[int], B: Sequence[int]) -> list:
    """Multiplicity matrix with rows indexed by A and columns by B."""
    check_bipartition(G, A, B)
    row = {a: i for i, a in enumerate(A)}
    col = {b: j for j, b in enumerate(B)}
    M = [[0] * len(B) for _ in A]
    for u, v in G.edges:
        if u in row:
            M[row[u]][col[v]] += 1
        else:
            M[row[v]][col[u]] += 1
    return M


def permanent_ryser(M: Sequence[Sequence[int]]) -> int:
    """Ryser inclusion-exclusion over column subsets, visited in Gray-code order."""
    n = len(M)
    if n == 0:
        return 1
    if any(len(row) != n for row in M):
        raise ValueError("permanent needs a square matrix")
    rowsum = [0] * n
    in_set = [False] * n
    total = 0
    size = 0
    for k in range(1, 2 ** n):
        j = (k & -k).bit_length() - 1  # column flipped by the Gray code
        sign = 1 if not in_set[j] else -1
        in_set[j] = not in_set[j]
        size += sign
        for i in range(n):
            rowsum[i] += sign * M[i][j]
        prod = 1
        for s in rowsum:
            prod *= s
            if not prod:
                break
        total += -prod if (n - size) % 2 else prod
    return total


def permanent_bruteforce(M: Sequence[Sequence[int]]) -> int:
    n = len(M)
    total = 0
    for perm in itertools.permutations(range(n)):
        prod = 1
        for i, j in enumerate(perm):
            prod *= M[i][j]
            if not prod:
                break
        total += prod
    return total


def count_perfect_matchings(G: MultiGraph, A: Sequence[int], B: Sequence[int], method: str = RYSER) -> CountResult:
    M = biadjacency(G, A, B)
    if len(A) != len(B):
        return CountResult(0, method)
    if method == RYSER:
        return CountResult(permanent_ryser(M), RYSER)
    if method == PERMUTATION_SUM:
        return CountResult(permanent_bruteforce(M), PERMUTATION_SUM)
    raise ValueError(f"unknown method {method!r}")


def regular_degree(G: MultiGraph) -> int | None:
    d = set(G.degrees())
    return d.pop() if len(d) == 1 else None


def matching_target(G: MultiGraph, A: Sequence[int]) -> list:
    """In-degree 1 on A and d-1 elsewhere, for a d-regular graph."""
    d = regular_degree(G)
    if d is None:
        raise ValueError("graph is not regular")
    A = set(A)
    return [1 if v in A else d - 1 for v in range(G.vertex_count)]


def matching_orientation_bijection_check(G: MultiGraph, A: Sequence[int], B: Sequence[int]) -> bool:
    """pm(G) equals the number of orientations with in-degree 1 on A, d-1 on B."""
    check_bipartition(G, A, B)
    if regular_degree(G) is None:
        raise ValueError("graph is not regular")
    pm = count_perfect_matchings(G, A, B).count
    return pm == count_orientations(G, matching_target(G, A)).count
