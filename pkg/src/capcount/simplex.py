"""Exact two-phase simplex over the rationals.

The tableau is kept fraction-free: integer entries over one common positive
denominator, updated by the Bareiss-style rule
``T'[i][j] = (T[i][j] * T[p][q] - T[i][q] * T[p][j]) // D``.
Bland's rule picks entering and leaving variables, so there is no cycling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    x: list | None = None
    value: Fraction | None = None


def _integer_row(row: Sequence, rhs) -> list:
    vals = [Fraction(v) for v in row] + [Fraction(rhs)]
    scale = 1
    for v in vals:
        scale = scale * v.denominator // math.gcd(scale, v.denominator)
    return [int(v * scale) for v in vals]


class _Tableau:
    def __init__(self, rows: list, obj: list, basis: list):
        self.rows = rows  # constraint rows, last entry is the rhs
        self.obj = obj  # z-row: z - c.x = value
        self.basis = basis
        self.D = 1

    def pivot(self, p: int, q: int):
        rows, D = self.rows, self.D
        prow = rows[p]
        e = prow[q]
        for i, row in enumerate(rows):
            if i == p:
                continue
            f = row[q]
            rows[i] = [(a * e - f * b) // D for a, b in zip(row, prow)]
        f = self.obj[q]
        self.obj = [(a * e - f * b) // D for a, b in zip(self.obj, prow)]
        self.D = e
        self.basis[p] = q

    def run(self, allowed: int) -> str:
        """Pivot until optimal; only columns < ``allowed`` may enter."""
        while True:
            q = next((j for j in range(allowed) if self.obj[j] < 0), None)
            if q is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(self.rows):
                a = row[q]
                if a <= 0:
                    continue
                if best is None:
                    best = i
                    continue
                b = self.rows[best]
                lhs, rhs = row[-1] * b[q], b[-1] * a
                if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                    best = i
            if best is None:
                return UNBOUNDED
            self.pivot(best, q)


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """max c.x subject to A x = b, x >= 0, all data rational; ``c`` integral."""
    m = len(A)
    n = len(c)
    if any(int(v) != v for v in c):
        raise ValueError("objective coefficients must be integers")
    c = [int(v) for v in c]
    rows = []
    for row, rhs in zip(A, b):
        if len(row) != n:
            raise ValueError("constraint row length does not match objective")
        r = _integer_row(row, rhs)
        if r[-1] < 0:
            r = [-v for v in r]
        rows.append(r)
    # phase I: artificial columns n .. n+m-1
    full = []
    for i, r in enumerate(rows):
        art = [0] * m
        art[i] = 1
        full.append(r[:-1] + art + [r[-1]])
    obj = [0] * (n + m + 1)
    for r in full:
        for j in range(n):
            obj[j] -= r[j]
        obj[-1] -= r[-1]
    tab = _Tableau(full, obj, [n + i for i in range(m)])
    tab.run(n + m)
    if tab.obj[-1] != 0:
        return LPResult(INFEASIBLE)

    # drive zero-level artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] < n:
            i += 1
            continue
        row = tab.rows[i]
        q = next((j for j in range(n) if row[j] != 0), None)
        if q is None:
            del tab.rows[i]
            del tab.basis[i]
            continue
        if row[q] < 0:
            tab.rows[i] = [-v for v in row]
        tab.pivot(i, q)
        i += 1

    D = tab.D
    obj = [-cj * D for cj in c] + [0] * m + [0]
    for row, j in zip(tab.rows, tab.basis):
        if c[j]:
            obj = [o + c[j] * v for o, v in zip(obj, row)]
    tab.obj = obj
    status = tab.run(n)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for row, j in zip(tab.rows, tab.basis):
        x[j] = Fraction(row[-1], tab.D)
    return LPResult(OPTIMAL, x, Fraction(tab.obj[-1], tab.D))


def feasible_point(A: Sequence[Sequence], b: Sequence) -> list | None:
    res = maximize([0] * len(A[0]) if A else [], A, b)
    return res.x if res.status == OPTIMAL else None
