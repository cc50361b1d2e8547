"""Capacity cap_alpha(P) = inf_{x > 0} P(x) / prod x_i^alpha_i.

The infimum is computed in log coordinates x = exp(y), where the objective
``log P(e^y) - <alpha, y>`` is a convex log-sum-exp.  Where alpha sits with
respect to the Newton polytope of P is decided exactly first:

* outside: the capacity is 0;
* relative interior: the minimum is attained and plain gradient descent finds it;
* relative boundary: the infimum is approached only at infinity.  It equals
  the capacity of the sub-polynomial supported on the smallest face that
  contains alpha, and alpha is relatively interior to that face, so the same
  descent converges there.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .polycore import SparsePolynomial, log_coefficient, slice_coefficient
from .simplex import INFEASIBLE, maximize
from .stability import CertifiedPolynomial, certify_by_closure

log = logging.getLogger(__name__)

INTERIOR = "interior"
BOUNDARY = "boundary"
OUTSIDE = "outside"

ATTAINED = "attained"
UNATTAINED_BOUNDARY = "unattained-boundary"
ZERO_CAPACITY = "zero-capacity"

DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 10_000
ARMIJO_C = 1e-4
MAX_HALVINGS = 60
# supports at least this large first try to certify an interior alpha from a
# short descent, which is far cheaper than the exact LP on thousands of columns
LARGE_SUPPORT = 200
CERTIFY_AFTER = 200
_WEIGHT_SCALE = 2 ** 80


def _as_rational(a):
    return a if isinstance(a, (int, Fraction)) else Fraction(a)


@dataclass(frozen=True)
class CapacityProblem:
    P: SparsePolynomial
    alpha: tuple

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(self.alpha))
        if self.P.is_zero():
            raise ValueError("capacity of the zero polynomial is undefined")
        if len(self.alpha) != self.P.n:
            raise ValueError(f"alpha has length {len(self.alpha)}, polynomial has {self.P.n} variables")
        if any(a < 0 for a in self.alpha):
            raise ValueError("alpha entries must be non-negative")

    @cached_property
    def exponents(self) -> list:
        return list(self.P.terms)

    @cached_property
    def _arrays(self):
        M = np.array(self.exponents, dtype=float).reshape(len(self.exponents), self.P.n)
        logc = np.array([log_coefficient(c) for c in self.P.terms.values()])
        return M, logc, np.array([float(a) for a in self.alpha])


@dataclass(frozen=True)
class CapacityResult:
    value: float
    minimizer: tuple | None
    attained: str
    iterations: int = 0
    gradient_norm_final: float = 0.0
    converged: bool = True
    face_size: int = 0  # number of monomials on the face carrying alpha

    @property
    def flag(self) -> str:
        return self.attained if self.converged else f"{self.attained}/not-converged"


def _objective(M, logc, alpha, y):
    z = logc + M @ y
    zmax = z.max()
    w = np.exp(z - zmax)
    total = w.sum()
    value = zmax + np.log(total) - alpha @ y
    grad = M.T @ (w / total) - alpha
    if not np.isfinite(value):
        raise OverflowError("log-objective overflowed; rescale the coefficients")
    return float(value), grad


def log_objective(prob: CapacityProblem, y: Sequence[float]):
    """(log P(e^y) - <alpha, y>, gradient), with a max-shift against overflow."""
    M, logc, alpha = prob._arrays
    y = np.asarray(y, dtype=float)
    if y.shape != (prob.P.n,):
        raise ValueError(f"y has shape {y.shape}, expected ({prob.P.n},)")
    return _objective(M, logc, alpha, y)


def _echelon(vectors) -> list:
    """Reduced row-echelon basis (Fractions) of the span of integer vectors."""
    basis = []  # list of (pivot column, row)
    for v in vectors:
        row = [Fraction(x) for x in v]
        for col, b in basis:
            if row[col]:
                f = row[col]
                row = [x - f * y for x, y in zip(row, b)]
        col = next((k for k, x in enumerate(row) if x), None)
        if col is None:
            continue
        row = [x / row[col] for x in row]
        basis = [(c, [x - b[col] * y for x, y in zip(b, row)]) for c, b in basis]
        basis.append((col, row))
    return basis


def _in_span(basis, v) -> bool:
    row = [Fraction(x) for x in v]
    for col, b in basis:
        if row[col]:
            f = row[col]
            row = [x - f * y for x, y in zip(row, b)]
    return not any(row)


def newton_face(P: SparsePolynomial, alpha: Sequence) -> tuple:
    """(position, face): the exponents of P lying on the smallest face of the
    Newton polytope that contains alpha, and where alpha sits.

    Each round maximises the convex weight on exponents not yet known to lie
    on that face, then closes the known set under its affine hull (the face
    meets the support exactly in the hull of any subset whose relative
    interior holds alpha).  Rounds are bounded by the dimension.
    """
    if P.is_zero():
        raise ValueError("zero polynomial has an empty Newton polytope")
    exps = list(P.terms)
    alpha = [_as_rational(a) for a in alpha]
    if len(alpha) != P.n:
        raise ValueError("alpha length does not match variable count")
    A = [[m[i] for m in exps] for i in range(P.n)] + [[1] * len(exps)]
    b = alpha + [1]
    used: set = set()
    while True:
        c = [0 if j in used else 1 for j in range(len(exps))]
        if used and not any(c):
            break
        res = maximize(c, A, b)
        if res.status == INFEASIBLE:
            return OUTSIDE, []
        fresh = {j for j, x in enumerate(res.x) if x > 0 and j not in used}
        if not fresh:
            break
        used |= fresh
        origin = exps[min(used)]
        basis = _echelon([tuple(a - o for a, o in zip(exps[j], origin)) for j in used])
        used |= {
            j for j, m in enumerate(exps)
            if j not in used and _in_span(basis, [a - o for a, o in zip(m, origin)])
        }
    face = [exps[j] for j in sorted(used)]
    return (INTERIOR if len(used) == len(exps) else BOUNDARY), face


def _weights(M, logc, y) -> np.ndarray:
    z = logc + M @ y
    w = np.exp(z - z.max())
    return w / w.sum()


def _interior_certificate(exps: list, weights: np.ndarray, alpha: Sequence) -> bool:
    """Exact proof that alpha is a strictly positive convex combination of all exponents.

    The weights come from a converged descent and miss alpha only by
    rounding.  They are rounded to integers, and the residual is absorbed by
    an exact correction on an affine basis of the support.  Any failure
    (underflowed weight, residual outside the span, correction too large)
    returns False and the caller falls back to the LP.
    """
    L = [int(w * _WEIGHT_SCALE) for w in weights]
    if min(L) <= 0:
        return False
    T = sum(L)
    n = len(alpha)
    rho = [_as_rational(alpha[i]) - Fraction(sum(l * m[i] for l, m in zip(L, exps)), T) for i in range(n)]
    order = sorted(range(len(exps)), key=lambda j: -L[j])
    origin = exps[order[0]]
    diffs = np.array([[a - o for a, o in zip(m, origin)] for m in exps], dtype=float)
    rank = int(np.linalg.matrix_rank(diffs)) if len(exps) > 1 else 0
    basis, chosen = [], []
    for j in order[1:]:
        if len(chosen) == rank:
            break
        vec = [a - o for a, o in zip(exps[j], origin)]
        if not _in_span(basis, vec):
            chosen.append(j)
            basis = _echelon([[a - o for a, o in zip(exps[c], origin)] for c in chosen])
    # solve sum_j delta_j (m_j - origin) = rho on the pivot columns, then check every coordinate
    k = len(chosen)
    cols = [c for c, _ in basis]
    D = [[Fraction(exps[j][c] - origin[c]) for j in chosen] for c in cols]
    rhs = [rho[c] for c in cols]
    delta = _solve(D, rhs) if k else []
    if delta is None:
        return False
    for i in range(n):
        if sum(d * (exps[j][i] - origin[i]) for d, j in zip(delta, chosen)) != rho[i]:
            return False
    if any(Fraction(L[j], T) + d <= 0 for d, j in zip(delta, chosen)):
        return False
    return Fraction(L[order[0]], T) - sum(delta) > 0


def _solve(A: list, b: list):
    """Exact Gauss-Jordan for a square system; None if singular."""
    n = len(A)
    T = [row[:] + [r] for row, r in zip(A, b)]
    for col in range(n):
        piv = next((i for i in range(col, n) if T[i][col] != 0), None)
        if piv is None:
            return None
        T[col], T[piv] = T[piv], T[col]
        for i in range(n):
            if i != col and T[i][col]:
                f = T[i][col] / T[col][col]
                T[i] = [a - f * c for a, c in zip(T[i], T[col])]
    return [T[i][n] / T[i][i] for i in range(n)]


def newton_polytope_contains(P: SparsePolynomial, alpha: Sequence) -> str:
    """'interior' (relative interior), 'boundary', or 'outside'."""
    return newton_face(P, alpha)[0]


def _descend(M, logc, alpha, y, tol, max_iter):
    f, g = _objective(M, logc, alpha, y)
    gn = float(np.linalg.norm(g))
    it = 0
    converged = gn <= tol
    while not converged and it < max_iter:
        t = 1.0
        for _ in range(MAX_HALVINGS):
            y_new = y - t * g
            f_new, g_new = _objective(M, logc, alpha, y_new)
            if f_new <= f - ARMIJO_C * t * gn * gn:
                break
            # below rounding resolution of f: accept while still short of the 1-D minimum
            if abs(f_new - f) <= 1e-13 * (1.0 + abs(f)) and g_new @ g >= 0:
                break
            t *= 0.5
        else:
            log.debug("line search stalled at iteration %d, |g|=%.3g", it, gn)
            break
        y, f, g = y_new, f_new, g_new
        gn = float(np.linalg.norm(g))
        it += 1
        converged = gn <= tol
    return y, f, gn, it, converged


def capacity(
    prob: CapacityProblem,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    y0: Sequence[float] | None = None,
) -> CapacityResult:
    """Gradient descent with Armijo backtracking (step 1, halving) from y0 = 0."""
    P = prob.P
    if P.n == 0:
        (c,) = P.terms.values()
        return CapacityResult(float(c), (), ATTAINED, face_size=1)
    M, logc, alpha = prob._arrays
    y = np.zeros(P.n) if y0 is None else np.array(y0, dtype=float)
    if len(prob.exponents) >= LARGE_SUPPORT:
        y1, f, gn, it, converged = _descend(M, logc, alpha, y, tol, min(max_iter, CERTIFY_AFTER))
        if converged and _interior_certificate(prob.exponents, _weights(M, logc, y1), prob.alpha):
            return CapacityResult(float(np.exp(f)), tuple(np.exp(y1)), ATTAINED, it, gn, True, len(prob.exponents))
    position, face = newton_face(P, prob.alpha)
    if position == OUTSIDE:
        return CapacityResult(0.0, None, ZERO_CAPACITY)
    if position == BOUNDARY:
        keep = set(face)
        rows = [k for k, m in enumerate(prob.exponents) if m in keep]
        M, logc = M[rows], logc[rows]
    y, f, gn, it, converged = _descend(M, logc, alpha, y, tol, max_iter)
    if not converged:
        log.warning("capacity: no convergence after %d iterations (|g|=%.3g)", it, gn)
    minimizer = tuple(np.exp(y)) if position == INTERIOR else None
    flag = ATTAINED if position == INTERIOR else UNATTAINED_BOUNDARY
    return CapacityResult(float(np.exp(f)), minimizer, flag, it, gn, converged, len(face))


def capacity_of(P: SparsePolynomial, alpha: Sequence, **kw) -> CapacityResult:
    return capacity(CapacityProblem(P, tuple(alpha)), **kw)


def capacity_preservation_check(
    P: CertifiedPolynomial,
    i: int,
    r: int,
    alpha: Sequence,
    tol: float = 1e-6,
) -> bool:
    """Check cap_{alpha'}(Q) >= g(d, r) * cap_alpha(P) for Q the x_i^r coefficient slice."""
    from .bounds import g_factor

    if not isinstance(P, CertifiedPolynomial):
        raise TypeError("P must carry a stability certificate (CertifiedPolynomial)")
    certify_by_closure(P)
    poly = P.poly
    alpha = tuple(alpha)
    if alpha[i] != r:
        raise ValueError(f"alpha[{i}] must equal r={r}")
    d = poly.degree(i)
    if not 0 <= r <= d:
        raise ValueError(f"r={r} outside 0..{d}")
    rhs = g_factor(d, r) * capacity_of(poly, alpha).value
    Q = slice_coefficient(poly, i, r)
    if Q.is_zero():
        if rhs > 0:
            log.warning("slice x_%d^%d vanished while cap_alpha(P)=%g > 0: violation candidate", i, r, rhs)
            return False
        return True
    lhs = capacity_of(Q, alpha[:i] + alpha[i + 1:]).value
    return lhs >= rhs - tol * max(1.0, abs(rhs))
