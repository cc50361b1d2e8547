"""Sparse multivariate polynomials with non-negative coefficients, and multigraphs.

Exponent vectors are plain tuples of non-negative ints.  Coefficients are
exact rationals (``int`` or ``Fraction``) in ``"exact"`` mode and floats in
``"numeric"`` mode.  Values are immutable once built.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

EXACT = "exact"
NUMERIC = "numeric"

Exponent = tuple  # tuple[int, ...]


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class SparsePolynomial:
    """Map from exponent tuples to strictly positive coefficients."""

    __slots__ = ("_n", "_terms", "_mode")

    def __init__(self, n: int, terms: Mapping[Exponent, object] | None = None, mode: str = EXACT):
        if mode not in (EXACT, NUMERIC):
            raise ValueError(f"unknown mode {mode!r}")
        if n < 0:
            raise ValueError("variable count must be non-negative")
        clean = {}
        for key, c in (terms or {}).items():
            key = tuple(int(e) for e in key)
            if len(key) != n:
                raise ValueError(f"exponent {key} has length {len(key)}, expected {n}")
            if any(e < 0 for e in key):
                raise ValueError(f"negative exponent in {key}")
            if mode == NUMERIC:
                c = float(c)
            elif not isinstance(c, Rational):
                raise TypeError(f"exact mode needs rational coefficients, got {type(c).__name__}")
            if c < 0:
                raise ValueError(f"negative coefficient {c} at {key}")
            if c == 0:
                continue
            clean[key] = _normalize(c) if mode == EXACT else c
        self._n = n
        self._terms = MappingProxyType(clean)
        self._mode = mode

    # construction helpers
    @classmethod
    def constant(cls, n: int, c=1, mode: str = EXACT) -> "SparsePolynomial":
        return cls(n, {(0,) * n: c}, mode)

    @classmethod
    def variable(cls, n: int, i: int, mode: str = EXACT) -> "SparsePolynomial":
        if not 0 <= i < n:
            raise IndexError(f"variable index {i} out of range for {n} variables")
        key = [0] * n
        key[i] = 1
        return cls(n, {tuple(key): 1}, mode)

    @classmethod
    def linear_form(cls, n: int, weights: Mapping[int, object], mode: str = EXACT) -> "SparsePolynomial":
        """sum_i w_i x_i for a mapping i -> w_i."""
        acc = defaultdict(int)
        for i, w in weights.items():
            if not 0 <= i < n:
                raise IndexError(f"variable index {i} out of range for {n} variables")
            key = [0] * n
            key[i] = 1
            acc[tuple(key)] += w
        return cls(n, acc, mode)

    @property
    def n(self) -> int:
        return self._n

    @property
    def terms(self) -> Mapping[Exponent, object]:
        return self._terms

    @property
    def mode(self) -> str:
        return self._mode

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __eq__(self, other):
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self._n == other._n and dict(self._terms) == dict(other._terms)

    def __hash__(self):
        return hash((self._n, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return f"SparsePolynomial(n={self._n}, 0)"
        body = " + ".join(f"{c}*x^{list(m)}" for m, c in sorted(self._terms.items()))
        return f"SparsePolynomial(n={self._n}, {body}, mode={self._mode})"

    def __mul__(self, other):
        if isinstance(other, SparsePolynomial):
            return multiply(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __add__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        _check_same_n(self, other)
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, 0) + c
        return SparsePolynomial(self._n, acc, _join_mode(self, other))

    def scale(self, c) -> "SparsePolynomial":
        return SparsePolynomial(self._n, {m: c * v for m, v in self._terms.items()}, self._mode)

    def degree(self, i: int) -> int:
        """Degree in variable ``i`` (0 for the zero polynomial)."""
        if not 0 <= i < self._n:
            raise IndexError(f"variable index {i} out of range for {self._n} variables")
        return max((m[i] for m in self._terms), default=0)

    def degrees(self) -> tuple:
        return tuple(max((m[i] for m in self._terms), default=0) for i in range(self._n))

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def to_numeric(self) -> "SparsePolynomial":
        if self._mode == NUMERIC:
            return self
        return SparsePolynomial(self._n, {m: float(c) for m, c in self._terms.items()}, NUMERIC)


def _check_same_n(P: SparsePolynomial, Q: SparsePolynomial):
    if P.n != Q.n:
        raise ValueError(f"dimension mismatch: {P.n} vs {Q.n} variables")


def _join_mode(P: SparsePolynomial, Q: SparsePolynomial) -> str:
    return EXACT if P.mode == EXACT and Q.mode == EXACT else NUMERIC


def evaluate(P: SparsePolynomial, x: Sequence) -> object:
    """Evaluate P at ``x``; exact when P and x are exact."""
    if len(x) != P.n:
        raise ValueError(f"point has length {len(x)}, polynomial has {P.n} variables")
    if P.mode == NUMERIC:
        x = [float(v) for v in x]
    total = 0
    for m, c in P.terms.items():
        term = c
        for xi, e in zip(x, m):
            if e:
                term *= xi ** e
        total += term
    return total


def multiply(P: SparsePolynomial, Q: SparsePolynomial, cap: Sequence[int] | None = None) -> SparsePolynomial:
    """Product P*Q.  With ``cap``, monomials exceeding cap[i] in any coordinate are dropped."""
    _check_same_n(P, Q)
    if cap is not None and len(cap) != P.n:
        raise ValueError("cap vector length does not match variable count")
    acc = defaultdict(int)
    for m1, c1 in P.terms.items():
        for m2, c2 in Q.terms.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            if cap is not None and any(e > k for e, k in zip(m, cap)):
                continue
            acc[m] += c1 * c2
    return SparsePolynomial(P.n, acc, _join_mode(P, Q))


def coefficient(P: SparsePolynomial, r: Sequence[int]):
    if len(r) != P.n:
        raise ValueError(f"exponent has length {len(r)}, polynomial has {P.n} variables")
    return P.terms.get(tuple(r), 0)


def partial_derivative(P: SparsePolynomial, i: int) -> SparsePolynomial:
    if not 0 <= i < P.n:
        raise IndexError(f"variable index {i} out of range for {P.n} variables")
    out = {}
    for m, c in P.terms.items():
        if m[i] == 0:
            continue
        k = list(m)
        k[i] -= 1
        out[tuple(k)] = c * m[i]
    return SparsePolynomial(P.n, out, P.mode)


def slice_coefficient(P: SparsePolynomial, i: int, r: int) -> SparsePolynomial:
    """The polynomial in the other n-1 variables multiplying x_i**r."""
    if not 0 <= i < P.n:
        raise IndexError(f"variable index {i} out of range for {P.n} variables")
    if r < 0:
        raise ValueError("slice exponent must be non-negative")
    out = {m[:i] + m[i + 1:]: c for m, c in P.terms.items() if m[i] == r}
    return SparsePolynomial(P.n - 1, out, P.mode)


def substitute(P: SparsePolynomial, i: int, a) -> SparsePolynomial:
    """P with x_i set to the constant ``a >= 0``; the variable is removed.

    Negative constants leave the non-negative-coefficient regime, so they are
    refused here.  Use the ``pinned`` argument of the stability test to probe
    substitutions of arbitrary real constants.
    """
    if not 0 <= i < P.n:
        raise IndexError(f"variable index {i} out of range for {P.n} variables")
    if a < 0:
        raise ValueError("substitution of a negative constant is not supported")
    a = float(a) if P.mode == NUMERIC else Fraction(a)
    acc = defaultdict(int)
    for m, c in P.terms.items():
        acc[m[:i] + m[i + 1:]] += c * a ** m[i]
    return SparsePolynomial(P.n - 1, acc, P.mode)


def _line_polynomial(P: SparsePolynomial, v: Sequence, u: Sequence) -> list:
    """Ascending coefficients of t -> P(v + t*u), no sign restrictions on u."""
    if len(v) != P.n or len(u) != P.n:
        raise ValueError("line base/direction length does not match variable count")
    if P.mode == NUMERIC:
        v = [float(a) for a in v]
        u = [float(a) for a in u]
    degs = P.degrees()
    # powers[i][k] = ascending coefficients of (v_i + u_i t)^k
    powers = []
    for i in range(P.n):
        row = [[1]]
        for _ in range(degs[i]):
            prev = row[-1]
            nxt = [0] * (len(prev) + 1)
            for j, c in enumerate(prev):
                nxt[j] += c * v[i]
                nxt[j + 1] += c * u[i]
            row.append(nxt)
        powers.append(row)
    out = [0] * (P.total_degree() + 1)
    for m, c in P.terms.items():
        acc = [c]
        for i, e in enumerate(m):
            if e:
                acc = _poly_mul(acc, powers[i][e])
        for j, a in enumerate(acc):
            out[j] += a
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def restrict_to_line(P: SparsePolynomial, v: Sequence, u: Sequence) -> list:
    """Coefficients (constant term first) of g(t) = P(v + t*u).

    ``u`` must be strictly positive.  The result may have negative entries.
    """
    if any(x <= 0 for x in u):
        raise ValueError("line direction must be strictly positive")
    return _line_polynomial(P, v, u)


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class MultiGraph:
    """Loop-free multigraph; edges are stored as (min, max) pairs."""

    vertex_count: int
    edges: tuple = field(default=())

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        norm = []
        for e in self.edges:
            u, v = (int(a) for a in e)
            if u < 0 or v < 0:
                raise ValueError(f"negative vertex index in edge {e}")
            if u >= self.vertex_count or v >= self.vertex_count:
                raise ValueError(f"edge {e} out of range for {self.vertex_count} vertices")
            if u == v:
                raise ValueError(f"loop at vertex {u} is not allowed")
            norm.append((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degrees(self) -> tuple:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    def components(self) -> list:
        """Vertex sets of the connected components, in order of smallest vertex."""
        parent = list(range(self.vertex_count))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, v in self.edges:
            parent[find(u)] = find(v)
        groups = defaultdict(list)
        for a in range(self.vertex_count):
            groups[find(a)].append(a)
        return sorted(groups.values())

    def bipartition(self):
        """A 2-colouring (A, B) as sorted tuples, or None if the graph is not bipartite."""
        adj = defaultdict(list)
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        colour = {}
        for s in range(self.vertex_count):
            if s in colour:
                continue
            colour[s] = 0
            stack = [s]
            while stack:
                a = stack.pop()
                for b in adj[a]:
                    if b not in colour:
                        colour[b] = 1 - colour[a]
                        stack.append(b)
                    elif colour[b] == colour[a]:
                        return None
        A = tuple(a for a in range(self.vertex_count) if colour[a] == 0)
        B = tuple(a for a in range(self.vertex_count) if colour[a] == 1)
        return A, B


def graph_polynomial(G: MultiGraph, cap: Sequence[int] | None = None) -> SparsePolynomial:
    """prod over edges (u, v) of (x_u + x_v); coefficients count orientations by in-degree."""
    n = G.vertex_count
    P = SparsePolynomial.constant(n)
    for u, v in G.edges:
        P = multiply(P, SparsePolynomial.linear_form(n, {u: 1, v: 1}), cap=cap)
    return P


def check_bipartition(G: MultiGraph, A: Iterable[int], B: Iterable[int]):
    A, B = set(A), set(B)
    if A & B:
        raise ValueError("bipartition classes overlap")
    if A | B != set(range(G.vertex_count)):
        raise ValueError("bipartition does not cover every vertex")
    for u, v in G.edges:
        if (u in A) == (v in A):
            raise ValueError(f"edge ({u}, {v}) lies inside one class")


def gurvits_polynomial(G: MultiGraph, A: Sequence[int], B: Sequence[int]) -> SparsePolynomial:
    """prod over v in B of (sum of x_u over neighbours u of v), one variable per vertex of A.

    Variables follow the order of ``A``; parallel edges contribute multiplicity.
    """
    check_bipartition(G, A, B)
    index = {a: k for k, a in enumerate(A)}
    forms = {b: defaultdict(int) for b in B}
    for u, v in G.edges:
        a, b = (u, v) if u in index else (v, u)
        forms[b][index[a]] += 1
    n = len(A)
    Q = SparsePolynomial.constant(n)
    for b in B:
        Q = multiply(Q, SparsePolynomial.linear_form(n, forms[b]))
    return Q


# ---------------------------------------------------------------------------
# edge-list files


def parse_edge_list(text: str) -> MultiGraph:
    declared = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertices":
            if len(parts) != 2 or not parts[1].lstrip("-").isdigit():
                raise ValueError(f"line {lineno}: malformed header {raw!r}")
            declared = int(parts[1])
            if declared < 0:
                raise ValueError(f"line {lineno}: negative vertex count")
            continue
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer vertex in {raw!r}") from None
        if u < 0 or v < 0:
            raise ValueError(f"line {lineno}: negative vertex index")
        if u == v:
            raise ValueError(f"line {lineno}: loop at vertex {u}")
        edges.append((u, v))
    inferred = 1 + max((max(e) for e in edges), default=-1)
    if declared is None:
        count = inferred
    elif declared < inferred:
        raise ValueError(f"header declares {declared} vertices but edges use {inferred}")
    else:
        count = declared
    return MultiGraph(count, tuple(edges))


def read_edge_list(path) -> MultiGraph:
    return parse_edge_list(Path(path).read_text())


def format_edge_list(G: MultiGraph) -> str:
    lines = [f"vertices {G.vertex_count}"]
    lines += [f"{u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


def write_edge_list(G: MultiGraph, path) -> None:
    Path(path).write_text(format_edge_list(G))


def log_coefficient(c) -> float:
    """Natural log of a positive coefficient without overflowing on huge rationals."""
    if isinstance(c, Fraction):
        return math.log(c.numerator) - math.log(c.denominator)
    return math.log(c)
