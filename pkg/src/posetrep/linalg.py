"""Exact linear algebra over the rationals.

Matrices are tuples/lists of rows of `fractions.Fraction`.  Sizes in this
package are tiny (ambient dimensions <= 8), so plain fraction-free-ish
Gaussian elimination is more than fast enough.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Matrix = list[list[Fraction]]
Vector = list[Fraction]


def mat(rows: Iterable[Iterable]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def zeros(nrows: int, ncols: int) -> Matrix:
    return [[Fraction(0)] * ncols for _ in range(nrows)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def shape(m: Sequence[Sequence]) -> tuple[int, int]:
    return (len(m), len(m[0]) if m else 0)


def transpose(m: Matrix) -> Matrix:
    nr, nc = shape(m)
    return [[m[r][c] for r in range(nr)] for c in range(nc)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    nr, inner = shape(a)
    inner2, nc = shape(b)
    if inner != inner2:
        raise ValueError(f"matmul shape mismatch {shape(a)} x {shape(b)}")
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt]
            for row in a]


def hstack(a: Matrix, b: Matrix) -> Matrix:
    if len(a) != len(b):
        raise ValueError("hstack row mismatch")
    return [ra + rb for ra, rb in zip(a, b)]


def from_columns(cols: Iterable[Iterable], nrows: int) -> Matrix:
    cols = [list(c) for c in cols]
    for c in cols:
        if len(c) != nrows:
            raise ValueError("column length mismatch")
    return [[Fraction(c[r]) for c in cols] for r in range(nrows)]


def columns(m: Matrix) -> list[Vector]:
    return [list(col) for col in transpose(m)]


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form (copy) and the pivot column indices."""
    a = [row[:] for row in m]
    nr, nc = shape(a)
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        pivot = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return a, pivots


def rank(m: Matrix) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def row_space_basis(m: Matrix) -> Matrix:
    """Canonical basis (nonzero rref rows); equal spans give equal output."""
    a, pivots = rref(m)
    return a[: len(pivots)]


def nullspace(m: Matrix, ncols: int | None = None) -> list[Vector]:
    """Basis of {x : m x = 0}; one vector per free column.  `ncols` names
    the vector length when m has no rows."""
    nr, nc = len(m), (len(m[0]) if m else (ncols or 0))
    if nc == 0:
        return []
    if nr == 0:
        return [
            [Fraction(1) if i == j else Fraction(0) for i in range(nc)]
            for j in range(nc)
        ]
    a, pivots = rref(m)
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * nc
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -a[r][f]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """Solve a X = b for X when a has full column rank; None if inconsistent."""
    nr, nc = shape(a)
    nrb, ncb = shape(b)
    if nr != nrb:
        raise ValueError("solve shape mismatch")
    aug, pivots = rref(hstack(a, b))
    if len(pivots) != len([c for c in pivots if c < nc]):
        return None  # a pivot landed in the b block: inconsistent
    if len(pivots) < nc:
        raise ValueError("solve requires full column rank")
    x = zeros(nc, ncb)
    for r, c in enumerate(pivots):
        for k in range(ncb):
            x[c][k] = aug[r][nc + k]
    return x


def det(m: Matrix) -> Fraction:
    a = [row[:] for row in m]
    n = len(a)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in a):
        raise ValueError("det requires a square matrix")
    sign = 1
    out = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            sign = -sign
        out *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return out * sign


def column_span_contains(basis: Matrix, vectors: Matrix) -> bool:
    """Whether every column of `vectors` lies in the column span of `basis`."""
    return rank(hstack(basis, vectors)) == rank(basis)
