"""Coefficient lower bounds for stable polynomials and their graph specialisations.

The per-variable loss factor is g(d, r) = C(d, r) (r/d)^r ((d-r)/d)^(d-r)
with 0^0 = 1.  All graph bounds compare an exact count against a product
of these factors times a (numerical) capacity.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .capacity import CapacityResult, capacity_of
from .counting import (
    count_eulerian,
    count_orientations,
    count_perfect_matchings,
    matching_target,
    regular_degree,
)
from .polycore import MultiGraph, check_bipartition, graph_polynomial, log_coefficient
from .stability import is_real_rooted

BOUND_RTOL = 1e-7
# Real-rootedness is only a precondition here.  Float coefficients of a
# polynomial with a k-fold root carry rounding that splits the root by about
# eps^(1/k), so float input is checked leniently; rationals are decided exactly.
PRECONDITION_TOL = 1e-5

MATCHING = "matching"
EULERIAN = "eulerian"
GENERAL = "general"

CSV_FIELDS = (
    "graph_id",
    "task",
    "count",
    "thm4_bound",
    "specialized_bound",
    "lasvergnas_bound",
    "slack_ratio",
    "capacity_value",
    "capacity_flag",
)


def g_factor_exact(d: int, r: int) -> Fraction:
    if d < 0 or not 0 <= r <= max(d, 0):
        raise ValueError(f"need 0 <= r <= d, got d={d}, r={r}")
    if d == 0:
        return Fraction(1)
    # Python's 0 ** 0 == 1 gives the right convention at r = 0 and r = d
    return Fraction(math.comb(d, r) * r ** r * (d - r) ** (d - r), d ** d)


def g_factor(d: int, r: int) -> float:
    """C(d,r) (r/d)^r ((d-r)/d)^(d-r)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return float(g_factor_exact(d, r))


def degree_factor(degrees: Sequence[int], r: Sequence[int]) -> float:
    """prod_v g(d_v, r_v); 0 if some r_v is out of range.  Isolated vertices contribute 1."""
    total = Fraction(1)
    for d, k in zip(degrees, r):
        if not 0 <= k <= d:
            return 0.0
        total *= g_factor_exact(d, k)
    return float(total)


def capacity_bound(G: MultiGraph, r: Sequence[int], cap: CapacityResult) -> float:
    """prod_v g(d_v, r_v) * cap_r(P_G)."""
    if len(r) != G.vertex_count:
        raise ValueError("target length does not match vertex count")
    return degree_factor(G.degrees(), r) * cap.value


def matching_lower_bound(n: int, d: int) -> float:
    """((d-1)^(d-1) / d^(d-2))^n for d-regular bipartite graphs on 2n vertices."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    return float(Fraction((d - 1) ** (d - 1)) / Fraction(d) ** (d - 2)) ** n


def _check_even(degrees):
    odd = [v for v, d in enumerate(degrees) if d % 2]
    if odd:
        raise ValueError(f"odd degree at vertices {odd}")


def eulerian_lower_bound_exact(degrees: Sequence[int]) -> Fraction:
    _check_even(degrees)
    out = Fraction(1)
    for d in degrees:
        out *= Fraction(math.comb(d, d // 2), 2 ** (d // 2))
    return out


def eulerian_lower_bound(degrees: Sequence[int]) -> float:
    """prod_v C(d_v, d_v/2) / 2^(d_v/2)."""
    return float(eulerian_lower_bound_exact(degrees))


def lasvergnas_bound(degrees: Sequence[int]) -> float:
    """Eulerian bound improved by 2^D / C(D, D/2) at the largest degree D."""
    base = eulerian_lower_bound_exact(degrees)
    top = max(degrees, default=0)
    return float(base * Fraction(2 ** top, math.comb(top, top // 2)))


# ---------------------------------------------------------------------------
# univariate facts


def _logsumexp_terms(logs, ks, s):
    z = logs + ks * s
    zmax = z.max()
    w = np.exp(z - zmax)
    return zmax, w


def real_rooted_coefficient_bound(p: Sequence, r: int, tol: float = 1e-12) -> float:
    """g(d, r) * inf_{t>0} p(t)/t^r for real-rooted p with non-negative coefficients.

    ``p`` is an ascending coefficient list.  The infimum sits where
    t p'(t)/p(t) = r; that ratio increases from the lowest to the highest
    support degree, so it is found by bisection in log t.
    """
    a = list(p)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    if any(c < 0 for c in a):
        raise ValueError("coefficients must be non-negative")
    if not any(a):
        raise ValueError("zero polynomial")
    if not is_real_rooted(a, PRECONDITION_TOL):
        raise ValueError("polynomial is not real-rooted")
    d = len(a) - 1
    if r < 0:
        raise ValueError("r must be non-negative")
    support = [k for k, c in enumerate(a) if c != 0]
    lo_deg, hi_deg = support[0], support[-1]
    if r < lo_deg or r > hi_deg:
        return 0.0
    g = g_factor(d, r) if d >= 1 else 1.0
    if r == lo_deg:
        return g * float(a[lo_deg])
    if r == hi_deg:
        return g * float(a[hi_deg])
    ks = np.array(support, dtype=float)
    logs = np.array([log_coefficient(a[k]) for k in support])

    def ratio(s):
        _, w = _logsumexp_terms(logs, ks, s)
        return float(ks @ w / w.sum())

    lo, hi = -1.0, 1.0
    while ratio(lo) > r:
        lo *= 2.0
    while ratio(hi) < r:
        hi *= 2.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if ratio(mid) < r:
            lo = mid
        else:
            hi = mid
    s = 0.5 * (lo + hi)
    zmax, w = _logsumexp_terms(logs, ks, s)
    return g * math.exp(zmax + math.log(w.sum()) - r * s)


HOEFFDING_TOL = 1e-12


def hoeffding_check(p: Sequence[float], b: int, c: int, check_real_rooted: bool = True) -> bool:
    """sum_{k=b}^{c} p_k >= the same window of Binomial(d, s), where d*s is the mean of p."""
    if check_real_rooted and not is_real_rooted(list(p), PRECONDITION_TOL):
        raise ValueError("generating polynomial is not real-rooted")
    p = [float(x) for x in p]
    if any(x < 0 for x in p):
        raise ValueError("probabilities must be non-negative")
    if abs(sum(p) - 1.0) > 1e-12:
        raise ValueError("probabilities must sum to 1")
    d = len(p) - 1
    mean = sum(k * x for k, x in enumerate(p))
    if not (b <= mean + 1e-12 and mean <= c + 1e-12):
        raise ValueError(f"window [{b}, {c}] must contain the mean {mean}")
    s = mean / d if d else 0.0
    lhs = sum(p[b:c + 1])
    rhs = sum(math.comb(d, k) * s ** k * (1 - s) ** (d - k) for k in range(max(b, 0), min(c, d) + 1))
    return lhs >= rhs - HOEFFDING_TOL


def f_dr(x: Sequence[float], r: int) -> float:
    """Probability that exactly r of d independent events with probabilities x occur.

    Coefficient of z^r in prod_i (1 - x_i + x_i z).
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError("x must be a vector")
    if np.any(x < 0) or np.any(x > 1):
        raise ValueError("entries of x must lie in [0, 1]")
    d = x.size
    if not 0 <= r <= d:
        raise ValueError(f"r={r} outside 0..{d}")
    return float(f_dr_batch(x[None, :], r)[0])


def f_dr_batch(X: np.ndarray, r: int) -> np.ndarray:
    """Row-wise f_dr for an (N, d) array."""
    N, d = X.shape
    coef = np.zeros((N, d + 1))
    coef[:, 0] = 1.0
    for i in range(d):
        xi = X[:, i:i + 1]
        coef[:, 1:] = coef[:, 1:] * (1 - xi) + coef[:, :-1] * xi
        coef[:, 0] *= 1 - X[:, i]
    return coef[:, r]


def sample_capped_simplex(rng: np.random.Generator, d: int, r: float, size: int) -> np.ndarray:
    """Points of {x in [0,1]^d : sum x = r}: Euclidean projection of uniform cube points,
    found by bisection on the shift tau in clip(u + tau, 0, 1)."""
    U = rng.uniform(0.0, 1.0, (size, d))
    lo = np.full((size, 1), -1.0)
    hi = np.full((size, 1), 1.0)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        s = np.clip(U + mid, 0.0, 1.0).sum(axis=1, keepdims=True)
        low = s < r
        lo = np.where(low, mid, lo)
        hi = np.where(low, hi, mid)
    X = np.clip(U + 0.5 * (lo + hi), 0.0, 1.0)
    # remove the residual of the bisection on a free coordinate
    resid = r - X.sum(axis=1)
    for k in range(size):
        free = np.flatnonzero((X[k] > 0) & (X[k] < 1))
        if free.size:
            X[k, free] = np.clip(X[k, free] + resid[k] / free.size, 0.0, 1.0)
    return X


# ---------------------------------------------------------------------------
# graph reports


@dataclass(frozen=True)
class BoundReport:
    graph_id: str
    task: str
    exact_count: int
    thm4_bound: float
    specialized_bound: float | None = None
    lasvergnas_bound: float | None = None
    capacity: CapacityResult | None = None

    @property
    def bounds(self) -> list:
        return [b for b in (self.thm4_bound, self.specialized_bound, self.lasvergnas_bound) if b is not None]

    @property
    def slack_ratio(self) -> float:
        best = max(self.bounds)
        return math.inf if best <= 0 else self.exact_count / best

    @property
    def passed(self) -> bool:
        return all(self.exact_count >= b - BOUND_RTOL * max(1.0, abs(b)) for b in self.bounds)

    def csv_row(self) -> list:
        def num(x):
            return "" if x is None else f"{x:.9g}"

        cap = self.capacity
        return [
            self.graph_id,
            self.task,
            str(self.exact_count),
            num(self.thm4_bound),
            num(self.specialized_bound),
            num(self.lasvergnas_bound),
            num(self.slack_ratio),
            num(cap.value if cap else None),
            cap.flag if cap else "",
        ]


def reports_to_csv(reports: Sequence[BoundReport], header: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(CSV_FIELDS)
    for rep in reports:
        w.writerow(rep.csv_row())
    return buf.getvalue()


def parse_report_csv(text: str) -> list:
    """CSV rows back to dicts with ints/floats; empty cells become None."""
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        rec = {}
        for k, v in row.items():
            if k in ("graph_id", "task", "capacity_flag"):
                rec[k] = v
            elif k == "count":
                rec[k] = int(v)
            else:
                rec[k] = None if v == "" else float(v)
        out.append(rec)
    return out


class BoundViolation(AssertionError):
    pass


def verify(
    G: MultiGraph,
    task: str,
    r: Sequence[int] | None = None,
    A: Sequence[int] | None = None,
    B: Sequence[int] | None = None,
    graph_id: str = "G",
    strict: bool = True,
) -> BoundReport:
    """Exact count vs. every applicable lower bound for ``task``.

    matching: d-regular bipartite G with classes A, B; eulerian: all degrees
    even; general: any target r.  Raises :class:`BoundViolation` when a bound
    exceeds the count (``strict``), which should never happen.
    """
    degrees = G.degrees()
    specialized = lasvergnas = None
    if task == MATCHING:
        if A is None:
            parts = G.bipartition()
            if parts is None:
                raise ValueError("graph is not bipartite")
            A, B = parts
        if B is None:
            B = [v for v in range(G.vertex_count) if v not in set(A)]
        check_bipartition(G, A, B)
        d = regular_degree(G)
        if d is None or len(A) != len(B) or d == 0:
            raise ValueError("matching task needs a d-regular bipartite graph with d >= 1")
        count = count_perfect_matchings(G, A, B).count
        r = matching_target(G, A)
        specialized = matching_lower_bound(len(A), d)
    elif task == EULERIAN:
        count = count_eulerian(G).count
        r = [k // 2 for k in degrees]
        specialized = eulerian_lower_bound(degrees)
        lasvergnas = lasvergnas_bound(degrees)
    elif task == GENERAL:
        if r is None:
            raise ValueError("general task needs a target r")
        r = list(r)
        count = count_orientations(G, r).count
    else:
        raise ValueError(f"unknown task {task!r}")

    if G.edge_count == 0:
        cap = CapacityResult(1.0 if not any(r) else 0.0, None, "attained" if not any(r) else "zero-capacity")
    elif any(not 0 <= k <= d for k, d in zip(r, degrees)):
        cap = CapacityResult(0.0, None, "zero-capacity")
    else:
        cap = capacity_of(graph_polynomial(G), r)
    report = BoundReport(graph_id, task, count, capacity_bound(G, r, cap), specialized, lasvergnas, cap)
    if strict and not report.passed:
        raise BoundViolation(f"{graph_id}/{task}: count {count} below bound {max(report.bounds)}")
    return report


# ---------------------------------------------------------------------------
# exhaustive sweep


def _canonical(G: MultiGraph, r: Sequence[int]):
    """Smallest relabelling of (edges, r) over all vertex permutations."""
    best = None
    for perm in itertools.permutations(range(G.vertex_count)):
        edges = tuple(sorted((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in G.edges))
        rr = [0] * G.vertex_count
        for v, k in enumerate(r):
            rr[perm[v]] = k
        key = (edges, tuple(rr))
        if best is None or key < best:
            best = key
    return best


@dataclass(frozen=True)
class SweepRecord:
    edges: tuple
    r: tuple
    count: int
    bound: float

    @property
    def violated(self) -> bool:
        return self.count < self.bound - 1e-6 * max(1.0, self.bound)


def indegree_sweep(vertices: int = 5, max_edges: int = 8):
    """Every edge subset of K_vertices with <= max_edges edges and every feasible r.

    Capacities are invariant under relabelling vertices, so they are memoised
    on a canonical form; counts are recomputed for every labelled pair.
    """
    all_edges = list(itertools.combinations(range(vertices), 2))
    cache = {}
    for k in range(max_edges + 1):
        for edges in itertools.combinations(all_edges, k):
            G = MultiGraph(vertices, edges)
            degrees = G.degrees()
            for r in itertools.product(*(range(d + 1) for d in degrees)):
                if sum(r) != k:
                    continue
                count = count_orientations(G, r).count
                key = _canonical(G, r)
                if key not in cache:
                    if k == 0:
                        cache[key] = 1.0
                    else:
                        cache[key] = capacity_of(graph_polynomial(G), r).value
                bound = degree_factor(degrees, r) * cache[key]
                yield SweepRecord(edges, r, count, bound)
