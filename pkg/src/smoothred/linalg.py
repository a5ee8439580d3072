"""Exact linear solves used by the mod-ideal matrix solver and unit tests in
quotient rings.

Matrices are dense lists of rows of ring payloads.  Both solvers return one
particular solution (free unknowns set to zero) or ``None``.
"""

from __future__ import annotations

from typing import Any, Optional, Sequence

from .rings import RingDescriptor


def solve_field(ring: RingDescriptor, matrix: Sequence[Sequence[Any]], rhs: Sequence[Any]) -> Optional[list]:
    """Solve ``matrix @ x = rhs`` over a field by Gauss-Jordan elimination.

    Pivots are taken left to right, so earlier unknowns are preferred.
    """
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    ncols = len(matrix[0]) if matrix else 0
    add, mul, neg, is_zero = ring.add, ring.mul, ring.neg, ring.is_zero
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if not is_zero(rows[i][col])), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = ring.inverse(rows[r][col])
        rows[r] = [mul(v, inv) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not is_zero(rows[i][col]):
                factor = neg(rows[i][col])
                pr = rows[r]
                rows[i] = [add(a, mul(factor, b)) for a, b in zip(rows[i], pr)]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if not is_zero(rows[i][-1]):
            return None
    x = [ring.zero()] * ncols
    for i, col in enumerate(pivots):
        x[col] = rows[i][-1]
    return x


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def solve_integer(matrix: Sequence[Sequence[int]], rhs: Sequence[int]) -> Optional[list[int]]:
    """Solve ``matrix @ x = rhs`` over ZZ.

    Unimodular column operations bring the matrix to lower column-echelon
    form ``H = A V``; ``H y = b`` is then solved by forward substitution with
    exact divisibility and ``x = V y``.  Complete: returns ``None`` only when
    no integral solution exists.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if matrix else 0
    H = [list(r) for r in matrix]
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def combine(M, c1, c2, a, b, c, d):
        # (col c1, col c2) <- (a*c1 + b*c2, c*c1 + d*c2)
        for row in M:
            x, y = row[c1], row[c2]
            row[c1], row[c2] = a * x + b * y, c * x + d * y

    pivots: list[tuple[int, int]] = []
    col = 0
    for r in range(nrows):
        if col == ncols:
            break
        for c in range(col + 1, ncols):
            b = H[r][c]
            if b == 0:
                continue
            a = H[r][col]
            g, s, t = _xgcd(a, b)
            combine(H, col, c, s, t, -b // g, a // g)
            combine(V, col, c, s, t, -b // g, a // g)
        if H[r][col] != 0:
            pivots.append((r, col))
            col += 1

    y = [0] * ncols
    for r, k in pivots:
        acc = rhs[r] - sum(H[r][j] * y[j] for j in range(k))
        q, rem = divmod(acc, H[r][k])
        if rem:
            return None
        y[k] = q
    for r in range(nrows):
        if sum(H[r][j] * y[j] for j in range(col)) != rhs[r]:
            return None
    return [sum(V[i][j] * y[j] for j in range(ncols)) for i in range(ncols)]
