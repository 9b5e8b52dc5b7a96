"""Dense Gaussian elimination over cyclotomic scalars.

Matrices are lists of rows.  Entries may be ints, Fractions or
Cyclotomic values; results are Cyclotomic.
"""

from __future__ import annotations

from typing import Sequence

from .cyclotomic import Cyclotomic, ONE, ZERO

Matrix = list[list[Cyclotomic]]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Cyclotomic.coerce(x) for x in row] for row in rows]


def zeros(n: int, m: int) -> Matrix:
    return [[ZERO] * m for _ in range(n)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    m = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(m):
            acc = ZERO
            for k, x in enumerate(row):
                if x:
                    y = b[k][j]
                    if y:
                        acc = acc + x * y
            new.append(acc)
        out.append(new)
    return out


def matvec(a: Matrix, v: Sequence[Cyclotomic]) -> list[Cyclotomic]:
    out = []
    for row in a:
        acc = ZERO
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def trace(a: Matrix) -> Cyclotomic:
    acc = ZERO
    for i in range(len(a)):
        acc = acc + a[i][i]
    return acc


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(row) for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv if x else x for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y if y else x for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def nullspace(a: Matrix, ncols: int | None = None) -> list[list[Cyclotomic]]:
    """Basis of {x : a x = 0}."""
    if not a:
        n = ncols or 0
        return [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    n = len(a[0])
    m, pivots = rref(a)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -m[r][f]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Sequence[Cyclotomic]) -> list[Cyclotomic] | None:
    """One solution of a x = b, or None if inconsistent."""
    n = len(a[0]) if a else 0
    aug = [list(row) + [Cyclotomic.coerce(bi)] for row, bi in zip(a, b)]
    m, pivots = rref(aug)
    if n in pivots:
        return None
    x = [ZERO] * n
    for r, p in enumerate(pivots):
        x[p] = m[r][n]
    return x


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + idrow for row, idrow in zip(a, identity(n))]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in m]


def det(a: Matrix) -> Cyclotomic:
    m = [list(row) for row in a]
    n = len(m)
    acc = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            acc = -acc
        acc = acc * m[c][c]
        inv = m[c][c].inverse()
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y if y else x for x, y in zip(m[i], m[c])]
    return acc
