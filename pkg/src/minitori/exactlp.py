"""Exact rational linear-programming feasibility (phase-1 simplex, Bland's rule).

Solves  find x >= 0 with A x = b  over the rationals.  Deterministic: Bland's
pivoting (lowest eligible index) guarantees termination and reproducibility.
Desk-scale problems only (tens of rows/columns).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence


def feasible_point(a_rows: Sequence[Sequence[Fraction]],
                   b: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """A nonnegative basic solution of A x = b, or None if infeasible."""
    m = len(a_rows)
    if m == 0:
        return []
    n = len(a_rows[0])
    A = [[Fraction(x) for x in row] for row in a_rows]
    rhs = [Fraction(x) for x in b]
    for i in range(m):
        if rhs[i] < 0:
            A[i] = [-x for x in A[i]]
            rhs[i] = -rhs[i]

    # tableau with artificial variables n..n+m-1; objective: minimize their sum
    ncols = n + m
    T = [A[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [rhs[i]]
         for i in range(m)]
    basis = [n + i for i in range(m)]
    # reduced-cost row for sum of artificials
    z = [Fraction(0)] * (ncols + 1)
    for i in range(m):
        for j in range(ncols + 1):
            z[j] += T[i][j]

    def pivot(row: int, col: int) -> None:
        piv = T[row][col]
        T[row] = [x / piv for x in T[row]]
        for r in range(m):
            if r != row and T[r][col] != 0:
                f = T[r][col]
                T[r] = [x - f * y for x, y in zip(T[r], T[row])]
        f = z[col]
        if f != 0:
            for j in range(ncols + 1):
                z[j] -= f * T[row][j]
        basis[row] = col

    while True:
        enter = next((j for j in range(n) if z[j] > 0), None)
        if enter is None:
            break
        leave, best = None, None
        for r in range(m):
            if T[r][enter] > 0:
                ratio = T[r][ncols] / T[r][enter]
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best, leave = ratio, r
        if leave is None:
            break  # unbounded phase-1 direction cannot happen, but bail safely
        pivot(leave, enter)

    if z[ncols] != 0:
        return None
    # drive any artificial still in the basis (at zero level) out if possible
    for r in range(m):
        if basis[r] >= n:
            enter = next((j for j in range(n) if T[r][j] != 0), None)
            if enter is not None:
                pivot(r, enter)
    x = [Fraction(0)] * n
    for r in range(m):
        if basis[r] < n:
            x[basis[r]] = T[r][ncols]
    if any(v < 0 for v in x):
        return None
    return x
