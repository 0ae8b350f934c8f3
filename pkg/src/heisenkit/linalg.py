"""Exact linear algebra over Q or Q(params).

Elimination is fraction-free (Bareiss): within one pass every update is
``(pivot * a - lead * b) / previous_pivot`` and the division is exact, which
keeps entries polynomial when the input is.  The reduced echelon form is
obtained afterwards by a single normalization sweep.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

__all__ = ["bareiss_echelon", "rref", "rank", "nullspace", "solve"]


def _copy(rows):
    return [list(r) for r in rows]


def bareiss_echelon(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Row echelon form by fraction-free elimination; returns (rows, pivot columns).

    Zero rows are dropped from the result.
    """
    m = _copy(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    prev = Fraction(1)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, len(m)):
            lead = m[i][c]
            row_i, row_r = m[i], m[r]
            if lead == 0:
                for j in range(c + 1, ncols):
                    if row_i[j] != 0:
                        row_i[j] = row_i[j] * p / prev
            else:
                for j in range(c + 1, ncols):
                    row_i[j] = (p * row_i[j] - lead * row_r[j]) / prev
            row_i[c] = Fraction(0)
        prev = p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rref(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form with unit pivots."""
    ech, pivots = bareiss_echelon(rows)
    for k in range(len(ech) - 1, -1, -1):
        c = pivots[k]
        inv = 1 / ech[k][c]
        ech[k] = [x * inv if x != 0 else Fraction(0) for x in ech[k]]
        for i in range(k):
            lead = ech[i][c]
            if lead != 0:
                ech[i] = [a - lead * b for a, b in zip(ech[i], ech[k])]
    return ech, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(bareiss_echelon(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of {v : rows @ v = 0}."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def solve(columns: Sequence[Sequence], target: Sequence):
    """Find coefficients ``c`` with ``sum(c[i] * columns[i]) == target`` or return None."""
    n = len(columns)
    dim = len(target)
    if n == 0:
        return [] if all(x == 0 for x in target) else None
    aug = [[columns[j][i] for j in range(n)] + [target[i]] for i in range(dim)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    sol = [Fraction(0)] * n
    for row, pc in zip(red, pivots):
        sol[pc] = row[n]
    return sol
