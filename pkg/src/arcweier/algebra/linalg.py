"""Exact Gaussian elimination over QQ or F_p."""

from __future__ import annotations

from .field import Field


def row_reduce(rows: list[list], field: Field):
    """Reduced row echelon form; returns ``(matrix, pivot_columns)``."""
    m = [[field(x) for x in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.norm(x * inv) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [field.norm(a - f * b) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: list[list], field: Field) -> int:
    return len(row_reduce(rows, field)[1])


def solve(rows: list[list], rhs: list, field: Field):
    """Solve ``A x = b``.

    Returns ``(x, nullity)`` with ``x`` one particular solution (free
    variables set to 0), or ``(None, nullity)`` when inconsistent.
    """
    ncols = len(rows[0]) if rows else 0
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    red, pivots = row_reduce(aug, field)
    if ncols in pivots:
        return None, ncols - len(pivots) + 1
    x = [0] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][ncols]
    return x, ncols - len(pivots)
