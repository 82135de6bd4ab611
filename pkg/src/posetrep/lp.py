"""Exact linear programming: a small two-phase simplex over Fractions.

Problems are stated as

    maximize c.x  subject to  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0

with every entry a Fraction.  Bland's rule keeps the method from cycling;
the instances solved here are tiny (tens of rows/columns), so exact pivots
are cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpResult:
    status: str
    value: Fraction | None
    x: tuple[Fraction, ...] | None


def _pivot(tab: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    inv = 1 / tab[row][col]
    tab[row] = [v * inv for v in tab[row]]
    for r in range(len(tab)):
        if r != row and tab[r][col] != 0:
            f = tab[r][col]
            tab[r] = [v - f * w for v, w in zip(tab[r], tab[row])]
    basis[row] = col


def _run_simplex(tab: list[list[Fraction]], basis: list[int], ncols: int) -> str:
    """Optimise in place; last row is the objective (maximisation form)."""
    while True:
        obj = tab[-1]
        col = next((c for c in range(ncols) if obj[c] > 0), None)
        if col is None:
            return OPTIMAL
        best_row, best_ratio = None, None
        for r in range(len(tab) - 1):
            if tab[r][col] > 0:
                ratio = tab[r][-1] / tab[r][col]
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[r] < basis[best_row])
                ):
                    best_row, best_ratio = r, ratio
        if best_row is None:
            return UNBOUNDED
        _pivot(tab, basis, best_row, col)


def solve_lp(
    c: Sequence[Fraction],
    a_ub: Sequence[Sequence[Fraction]] = (),
    b_ub: Sequence[Fraction] = (),
    a_eq: Sequence[Sequence[Fraction]] = (),
    b_eq: Sequence[Fraction] = (),
) -> LpResult:
    n = len(c)
    rows: list[tuple[list[Fraction], Fraction, bool]] = []
    for row, b in zip(a_ub, b_ub):
        rows.append(([Fraction(v) for v in row], Fraction(b), True))
    for row, b in zip(a_eq, b_eq):
        rows.append(([Fraction(v) for v in row], Fraction(b), False))

    nslack = sum(1 for _, _, ineq in rows if ineq)
    ncols = n + nslack  # structural + slack columns; artificials appended after
    tab: list[list[Fraction]] = []
    basis: list[int] = []
    artificial_rows: list[int] = []
    si = 0
    for r, (row, b, ineq) in enumerate(rows):
        line = row + [Fraction(0)] * nslack
        if ineq:
            line[n + si] = Fraction(1)
            slack_col = n + si
            si += 1
        else:
            slack_col = None
        if b < 0:
            line = [-v for v in line]
            b = -b
            slack_col = None  # negated slack cannot start basic
        tab.append(line + [b])
        if slack_col is not None:
            basis.append(slack_col)
        else:
            basis.append(-1)  # placeholder, artificial assigned below
            artificial_rows.append(r)

    nart = len(artificial_rows)
    total = ncols + nart
    for r in range(len(tab)):
        row = tab[r]
        body, b = row[:-1], row[-1]
        art = [Fraction(0)] * nart
        tab[r] = body + art + [b]
    for k, r in enumerate(artificial_rows):
        tab[r][ncols + k] = Fraction(1)
        basis[r] = ncols + k

    if nart:
        # Phase 1: maximise -(sum of artificials).
        obj = [Fraction(0)] * (total + 1)
        for k in range(nart):
            obj[ncols + k] = Fraction(-1)
        tab.append(obj)
        for r in artificial_rows:
            tab[-1] = [v + w for v, w in zip(tab[-1], tab[r])]
        status = _run_simplex(tab, basis, total)
        assert status == OPTIMAL  # phase 1 is always bounded
        if tab[-1][-1] != 0:
            return LpResult(INFEASIBLE, None, None)
        tab.pop()
        # Drive leftover artificials out of the basis.
        for r in range(len(tab)):
            if basis[r] >= ncols:
                col = next((cc for cc in range(ncols) if tab[r][cc] != 0), None)
                if col is None:
                    continue  # redundant row, harmless to keep
                _pivot(tab, basis, r, col)

    obj = [Fraction(v) for v in c] + [Fraction(0)] * (total - n) + [Fraction(0)]
    for r in range(len(tab)):
        if basis[r] < n and obj[basis[r]] != 0:
            f = obj[basis[r]]
            obj = [v - f * w for v, w in zip(obj, tab[r])]
    tab.append(obj)
    status = _run_simplex(tab, basis, ncols)
    if status == UNBOUNDED:
        return LpResult(UNBOUNDED, None, None)
    x = [Fraction(0)] * n
    for r, bcol in enumerate(basis):
        if bcol < n:
            x[bcol] = tab[r][-1]
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    return LpResult(OPTIMAL, value, tuple(x))
