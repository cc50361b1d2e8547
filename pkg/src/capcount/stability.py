"""Real-rootedness via Hankel matrices of power sums, and stability probes.

Univariate polynomials are passed as ascending coefficient sequences
``[a_0, a_1, ..., a_d]`` or as one-variable :class:`SparsePolynomial`.
Integer/``Fraction`` coefficients are handled exactly; floats numerically.

A positive stability certificate only ever comes from :func:`certify_by_closure`;
:func:`stability_test` is one-sided and can only refute stability.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Mapping, Sequence

import numpy as np

from .polycore import (
    EXACT,
    MultiGraph,
    SparsePolynomial,
    _line_polynomial,
    graph_polynomial,
    gurvits_polynomial,
    multiply,
    partial_derivative,
    slice_coefficient,
    substitute,
)

DEFAULT_TOL = 1e-13
DEFAULT_TRIALS = 64

CERTIFIED_REAL_ROOTED = "certified-real-rooted"
CERTIFIED_NOT_STABLE = "certified-not-stable"
NOT_FALSIFIED = "not-falsified"


def _coeffs(p) -> list:
    if isinstance(p, SparsePolynomial):
        if p.n != 1:
            raise ValueError(f"expected a univariate polynomial, got {p.n} variables")
        out = [0] * (p.degree(0) + 1)
        for (k,), c in p.terms.items():
            out[k] = c
    else:
        out = list(p)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out or [0]


def _is_exact(coeffs) -> bool:
    return all(isinstance(c, Rational) for c in coeffs)


def power_sums(p) -> list:
    """m_0 .. m_{2d-2}, the root power sums of p, from its coefficients alone.

    Newton-Girard on the monic normalisation; exact for rational input.
    """
    a = _coeffs(p)
    d = len(a) - 1
    if d < 1:
        raise ValueError("power sums need a non-constant polynomial")
    lead = a[-1]
    if _is_exact(a):
        c = [Fraction(x) / lead for x in a]
    else:
        c = [float(x) / float(lead) for x in a]
    # monic: x^d + c[d-1] x^{d-1} + ... + c[0]
    m = [d]
    for k in range(1, 2 * d - 1):
        s = 0
        for j in range(1, min(k - 1, d) + 1):
            s -= c[d - j] * m[k - j]
        if k <= d:
            s -= k * c[d - k]
        m.append(s)
    return [int(x) if isinstance(x, Fraction) and x.denominator == 1 else x for x in m]


def hankel_matrix(m: Sequence, d: int) -> list:
    return [[m[i + j] for j in range(d)] for i in range(d)]


def _psd(H: list, tol: float) -> bool:
    """Symmetric elimination in natural order, rank-aware.

    Entries are exact rationals.  With ``tol == 0`` the answer is exact.  With
    ``tol > 0`` a pivot counts as zero when ``|pivot| <= tol * |H0_kk|`` (the
    original diagonal entry), and as negative only below ``-tol * |H0_kk|``.
    A zero pivot requires its remaining row to vanish (to the same
    Cauchy-Schwarz-scaled tolerance); that index is then dropped.
    """
    H = [[Fraction(x) for x in row] for row in H]
    n = len(H)
    tol = Fraction(tol)
    floor = [tol * abs(H[k][k]) for k in range(n)]
    active = list(range(n))
    while active:
        k = active.pop(0)
        piv = H[k][k]
        if piv < -floor[k]:
            return False
        if piv <= floor[k]:
            for j in active:
                bound = 4 * floor[k] * max(abs(H[j][j]), floor[j])
                if H[k][j] * H[k][j] > bound:
                    return False
            continue
        for i in active:
            f = H[i][k] / piv
            if f == 0:
                continue
            for j in active:
                H[i][j] -= f * H[k][j]
    return True


def is_real_rooted(p, tol: float = DEFAULT_TOL) -> bool:
    """Hermite-Sylvester: p is real-rooted iff its power-sum Hankel matrix is PSD.

    Constant and linear polynomials are real-rooted by convention.  Repeated
    roots (a singular Hankel matrix) are accepted.  Rational coefficients are
    decided exactly.  Float coefficients are converted to the rationals they
    represent and eliminated exactly; ``tol`` (relative to each original
    diagonal entry) then absorbs the splitting of multiple roots caused by
    rounding the coefficients.
    """
    a = _coeffs(p)
    return _hankel_test([Fraction(x) for x in a], 0 if _is_exact(a) else tol)


def _hankel_test(a: list, tol: float) -> bool:
    d = len(a) - 1
    if d <= 1:
        return True
    return _psd(hankel_matrix(power_sums(a), d), tol)


@dataclass(frozen=True)
class StabilityVerdict:
    verdict: str
    trials: int = 0
    witness: tuple | None = None  # (v, u) of a line with a non-real root

    @property
    def refuted(self) -> bool:
        return self.verdict == CERTIFIED_NOT_STABLE


def _grid(x: float):
    return Fraction(round(x * 2 ** 20), 2 ** 20)


def stability_test(
    P: SparsePolynomial,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    pinned: Mapping[int, object] | None = None,
    tol: float = DEFAULT_TOL,
) -> StabilityVerdict:
    """Try to refute stability of P by restricting it to random lines.

    Trial ``i`` draws from a generator seeded with ``seed ^ i``: base point
    v in [-1, 1]^n and direction u in [0.1, 1.1]^n.  ``pinned`` fixes some
    coordinates to real constants (direction 0 there), which tests the
    substituted polynomial without building it.  Identically zero
    restrictions are re-drawn, at most ``10 * trials`` times overall.
    Univariate input is decided directly by the Hankel test.

    Each restriction is computed exactly from the coefficients as stored
    (floats are read as the rationals they represent) and from line points
    rounded to a 2^-20 grid, so floating-point rounding of the line itself
    cannot split a multiple root.  ``tol`` applies only to numeric ``P``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if P.is_zero():
        raise ValueError("the zero polynomial has no stability verdict")
    pinned = dict(pinned or {})
    free = [i for i in range(P.n) if i not in pinned]
    if not free:
        return StabilityVerdict(CERTIFIED_REAL_ROOTED)
    if P.mode != EXACT:
        P = SparsePolynomial(P.n, {m: Fraction(c) for m, c in P.terms.items()}, EXACT)
        pinned = {k: Fraction(a) for k, a in pinned.items()}
    else:
        tol = 0
    if P.n == 1:
        v, u = (0,), (1,)
        g = _line_polynomial(P, v, u)
        if _hankel_test(g, tol):
            return StabilityVerdict(CERTIFIED_REAL_ROOTED)
        return StabilityVerdict(CERTIFIED_NOT_STABLE, 1, (v, u))

    redraws = 0
    for i in range(trials):
        rng = np.random.default_rng(seed ^ i)
        while True:
            vs = rng.uniform(-1.0, 1.0, P.n)
            us = rng.uniform(0.1, 1.1, P.n)
            v = [_grid(x) for x in vs]
            u = [_grid(x) for x in us]
            for k, a in pinned.items():
                v[k] = a
                u[k] = 0
            g = _line_polynomial(P, v, u)
            if any(c != 0 for c in g):
                break
            redraws += 1
            if redraws > 10 * trials:
                raise RuntimeError("restrictions keep vanishing identically; re-draw budget exhausted")
        if not _hankel_test(g, tol):
            return StabilityVerdict(CERTIFIED_NOT_STABLE, i + 1, (tuple(v), tuple(u)))
    return StabilityVerdict(NOT_FALSIFIED, trials)


# ---------------------------------------------------------------------------
# closure certificates

PRODUCT_OF_POSITIVE_LINEAR_FORMS = "product-of-positive-linear-forms"
REAL_SUBSTITUTION_OF = "real-substitution-of"
PARTIAL_DERIVATIVE_OF = "partial-derivative-of"
COEFFICIENT_SLICE_OF = "coefficient-slice-of"

_PRESERVERS = {REAL_SUBSTITUTION_OF, PARTIAL_DERIVATIVE_OF, COEFFICIENT_SLICE_OF}


def certify_by_closure(construction) -> bool:
    """True when ``construction`` is a chain of stability-preserving steps.

    ``construction`` is a tag sequence, base first, e.g.
    ``("product-of-positive-linear-forms", "partial-derivative-of")``, a single
    base tag, or a :class:`CertifiedPolynomial`.
    """
    if isinstance(construction, CertifiedPolynomial):
        construction = construction.construction
    if isinstance(construction, str):
        construction = (construction,)
    construction = tuple(construction)
    if not construction:
        raise ValueError("empty construction")
    base, *steps = construction
    if base != PRODUCT_OF_POSITIVE_LINEAR_FORMS:
        raise ValueError(f"unknown base construction {base!r}")
    for tag in steps:
        if tag not in _PRESERVERS:
            raise ValueError(f"unknown construction step {tag!r}")
    return True


@dataclass(frozen=True)
class CertifiedPolynomial:
    """A polynomial together with the stability-preserving recipe that built it."""

    poly: SparsePolynomial
    construction: tuple = field(default=(PRODUCT_OF_POSITIVE_LINEAR_FORMS,))

    def _then(self, poly, tag):
        return CertifiedPolynomial(poly, self.construction + (tag,))

    def derivative(self, i: int) -> "CertifiedPolynomial":
        return self._then(partial_derivative(self.poly, i), PARTIAL_DERIVATIVE_OF)

    def substitute(self, i: int, a) -> "CertifiedPolynomial":
        return self._then(substitute(self.poly, i, a), REAL_SUBSTITUTION_OF)

    def slice(self, i: int, r: int) -> "CertifiedPolynomial":
        return self._then(slice_coefficient(self.poly, i, r), COEFFICIENT_SLICE_OF)


def certified_product(forms: Sequence[SparsePolynomial]) -> CertifiedPolynomial:
    """Product of affine forms with non-negative coefficients."""
    if not forms:
        raise ValueError("need at least one factor")
    P = forms[0]
    for f in forms:
        if f.total_degree() > 1 or f.is_zero():
            raise ValueError("every factor must be a nonzero form of degree <= 1")
    for f in forms[1:]:
        P = multiply(P, f)
    return CertifiedPolynomial(P)


def certified_graph_polynomial(G: MultiGraph) -> CertifiedPolynomial:
    return CertifiedPolynomial(graph_polynomial(G))


def certified_gurvits_polynomial(G: MultiGraph, A, B) -> CertifiedPolynomial:
    return CertifiedPolynomial(gurvits_polynomial(G, A, B))
