from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from heisenkit import linalg
from heisenkit.scalars import Scalar

F = Fraction

matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3).map(F), min_size=n, max_size=n), min_size=1, max_size=5))


@given(matrices)
def test_rank_matches_sympy(m):
    assert linalg.rank(m) == sympy.Matrix(m).rank()


@given(matrices)
def test_rref_matches_sympy(m):
    red, piv = linalg.rref(m)
    sred, spiv = sympy.Matrix(m).rref()
    assert tuple(piv) == spiv
    assert [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in red] == \
        sred.tolist()[: len(red)]


@given(matrices)
def test_nullspace_annihilates(m):
    n = len(m[0])
    basis = linalg.nullspace(m, n)
    assert len(basis) == n - linalg.rank(m)
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


def test_solve():
    cols = [[F(1), F(0)], [F(1), F(1)]]
    assert linalg.solve(cols, [F(3), F(2)]) == [1, 2]
    assert linalg.solve([[F(1), F(1)]], [F(1), F(2)]) is None
    assert linalg.solve([], [F(0)]) == []


def test_symbolic_entries_stay_exact():
    p = Scalar.param("p")
    m = [[p, Scalar(1)], [Scalar(1), p]]
    assert linalg.rank(m) == 2
    sol = linalg.solve(m, [Scalar(1), Scalar(1)])
    assert sol == [1 / (p + 1), 1 / (p + 1)]
