"""Small exact linear algebra over ``Fraction``.

Matrices are lists of rows; vectors are sequences. Nothing here is fast,
it only has to be exact for the handful of rank <= 8 systems we solve.
"""

from __future__ import annotations

from fractions import Fraction as Q
from typing import Sequence

Vector = tuple
Matrix = list


def as_q(x) -> Q:
    return x if isinstance(x, Q) else Q(x)


def vec(xs) -> tuple:
    return tuple(as_q(x) for x in xs)


def dot(x: Sequence, y: Sequence) -> Q:
    if len(x) != len(y):
        raise ValueError(f"dimension mismatch: {len(x)} vs {len(y)}")
    return sum((a * b for a, b in zip(x, y)), Q(0))


def add(x, y) -> tuple:
    return tuple(a + b for a, b in zip(x, y))


def sub(x, y) -> tuple:
    return tuple(a - b for a, b in zip(x, y))


def scale(c, x) -> tuple:
    return tuple(c * a for a in x)


def matvec(m, x) -> tuple:
    return tuple(dot(row, x) for row in m)


def matmul(a, b) -> list:
    cols = list(zip(*b))
    return [[dot(row, col) for col in cols] for row in a]


def transpose(m) -> list:
    return [list(r) for r in zip(*m)]


def identity(n: int) -> list:
    return [[Q(int(i == j)) for j in range(n)] for i in range(n)]


def rref(m) -> tuple[list, list]:
    """Reduced row echelon form and pivot columns."""
    a = [[as_q(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def nullspace(m, ncols: int | None = None) -> list[tuple]:
    if not m:
        n = ncols or 0
        return [tuple(Q(int(i == j)) for j in range(n)) for i in range(n)]
    a, pivots = rref(m)
    n = len(a[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Q(0)] * n
        v[f] = Q(1)
        for row, p in zip(a, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def solve_particular(m, b) -> tuple | None:
    """One solution of ``m x = b`` or None when inconsistent."""
    n = len(m[0])
    aug = [list(row) + [as_q(bi)] for row, bi in zip(m, b)]
    a, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Q(0)] * n
    for row, p in zip(a, pivots):
        x[p] = row[n]
    return tuple(x)


def inverse(m) -> list:
    n = len(m)
    aug = [list(row) + [Q(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    a, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return [row[n:] for row in a]


def rank(m) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def det(m) -> Q:
    n = len(m)
    a = [[as_q(x) for x in row] for row in m]
    d = Q(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Q(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def fmt(x: Q) -> str:
    """Exact rational as ``p/q`` (integers without denominator)."""
    return str(as_q(x))
