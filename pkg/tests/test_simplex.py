import itertools
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from capcount.simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, feasible_point, maximize


def solve_square(M, b):
    """Exact Gauss-Jordan; None if singular."""
    n = len(M)
    T = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(M, b)]
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


def best_vertex(c, A, b):
    """Max of c.x over basic feasible solutions of {Ax = b, x >= 0}, by enumeration."""
    m, n = len(A), len(c)
    best = None
    for k in range(m + 1):
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                sub = [[A[i][j] for j in cols] for i in rows]
                xs = solve_square(sub, [b[i] for i in rows]) if k else []
                if xs is None or any(v < 0 for v in xs):
                    continue
                x = [Fraction(0)] * n
                for j, v in zip(cols, xs):
                    x[j] = v
                if all(sum(A[i][j] * x[j] for j in range(n)) == b[i] for i in range(m)):
                    val = sum(cj * xj for cj, xj in zip(c, x))
                    best = val if best is None else max(best, val)
    return best


def test_simple_optimum():
    # max x0 + 2 x1 s.t. x0 + x1 + x2 = 4, x1 <= 3 via slack x3
    res = maximize([1, 2, 0, 0], [[1, 1, 1, 0], [0, 1, 0, 1]], [4, 3])
    assert res.status == OPTIMAL
    assert res.value == 7
    assert res.x[:2] == [1, 3]


def test_infeasible():
    assert maximize([1, 1], [[1, 1]], [-1]).status == INFEASIBLE
    assert maximize([0, 0], [[1, 0], [1, 0]], [1, 2]).status == INFEASIBLE


def test_unbounded():
    assert maximize([1, 0], [[1, -1]], [1]).status == UNBOUNDED


def test_redundant_rows():
    res = maximize([1, 0], [[1, 1], [2, 2], [1, 1]], [1, 2, 1])
    assert res.status == OPTIMAL and res.value == 1


def test_rational_data():
    A = [[Fraction(1, 3), Fraction(2, 5)], [1, 1]]
    b = [Fraction(1, 4), 1]
    x = feasible_point(A, b)
    assert x is None or all(sum(a * v for a, v in zip(row, x)) == r for row, r in zip(A, b))


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_matches_vertex_enumeration(data):
    n = data.draw(st.integers(2, 5))
    m = data.draw(st.integers(1, 3))
    A = [data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n)) for _ in range(m)]
    b = data.draw(st.lists(st.integers(-4, 4), min_size=m, max_size=m))
    # bounded feasible region: add sum x = s
    s = data.draw(st.integers(0, 4))
    A.append([1] * n)
    b.append(s)
    c = data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))
    res = maximize(c, A, b)
    expected = best_vertex(c, A, b)
    if expected is None:
        assert res.status == INFEASIBLE
    else:
        assert res.status == OPTIMAL
        assert res.value == expected
        assert all(v >= 0 for v in res.x)
        assert all(sum(a * v for a, v in zip(row, res.x)) == r for row, r in zip(A, b))
