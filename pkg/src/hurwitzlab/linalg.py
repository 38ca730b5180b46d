"""Exact linear algebra over the rationals.

Everything here works with fractions.Fraction entries; no floating point
is ever involved.  Row spaces are kept in echelon form with sparse rows
(dict column -> coefficient) because the relation matrices we reduce
against are large but very sparse.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class SparseRowSpace:
    """Echelonized row space with exact membership tests."""

    def __init__(self):
        self._rows: dict[int, dict[int, Fraction]] = {}  # pivot column -> row

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, row: dict[int, Fraction]) -> dict[int, Fraction]:
        """Return the residual of ``row`` after reduction by the space."""
        row = {c: v for c, v in row.items() if v != 0}
        while True:
            hits = set(row) & set(self._rows)
            if not hits:
                return row
            piv = min(hits)
            factor = row[piv]
            base = self._rows[piv]
            for c, v in base.items():
                newv = row.get(c, Fraction(0)) - factor * v
                if newv == 0:
                    row.pop(c, None)
                else:
                    row[c] = newv

    def add_row(self, row: dict[int, Fraction]) -> bool:
        """Insert a row; returns True if it enlarged the space."""
        res = self.reduce(row)
        if not res:
            return False
        piv = min(res)
        inv = Fraction(1) / res[piv]
        self._rows[piv] = {c: v * inv for c, v in res.items()}
        return True

    def contains(self, row: dict[int, Fraction]) -> bool:
        return not self.reduce(row)


def rref(matrix: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rref matrix, pivot columns)."""
    m = [list(map(Fraction, row)) for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def solve_with_nullspace(
    columns: Sequence[Sequence[Fraction]], target: Sequence[Fraction]
) -> tuple[list[Fraction] | None, list[list[Fraction]]]:
    """Solve sum_j x_j * columns[j] = target exactly.

    Returns (particular solution or None, basis of the coefficient
    nullspace).  Columns and target are dense coordinate vectors of equal
    length.
    """
    ncols = len(columns)
    nrows = len(target)
    aug = [[Fraction(columns[j][i]) for j in range(ncols)] + [Fraction(target[i])]
           for i in range(nrows)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None, _nullspace_from_rref(red, pivots, ncols)
    sol = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        sol[c] = red[r][ncols]
    return sol, _nullspace_from_rref(red, pivots, ncols)


def _nullspace_from_rref(red, pivots, ncols):
    piv_set = set(p for p in pivots if p < ncols)
    free = [c for c in range(ncols) if c not in piv_set]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, c in enumerate(pivots):
            if c < ncols:
                v[c] = -red[r][fc]
        basis.append(v)
    return basis


def det(matrix: list[list[Fraction]]) -> Fraction:
    """Determinant by exact Gaussian elimination."""
    m = [list(map(Fraction, row)) for row in matrix]
    size = len(m)
    if any(len(row) != size for row in m):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    out = Fraction(1)
    for c in range(size):
        pr = next((i for i in range(c, size) if m[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        out *= m[c][c]
        inv = Fraction(1) / m[c][c]
        for i in range(c + 1, size):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return out * sign


def matrix_rank(rows: list[list[Fraction]]) -> int:
    space = SparseRowSpace()
    for row in rows:
        space.add_row({i: Fraction(v) for i, v in enumerate(row) if v != 0})
    return space.rank
