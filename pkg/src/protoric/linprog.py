"""Exact rational linear programming and bounded lattice-point enumeration.

A small two-phase simplex over Fraction suffices at the problem sizes this
package works at (dimension <= 6, a handful of constraints).  Lattice points
of bounded polyhedra are enumerated through Fourier-Motzkin projections so
no floating point or external solver is involved.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional

from .lattice import Vec


def _pivot(tableau, basis, r, c):
    piv = tableau[r][c]
    tableau[r] = [x / piv for x in tableau[r]]
    for i in range(len(tableau)):
        if i != r and tableau[i][c]:
            f = tableau[i][c]
            tableau[i] = [x - f * y for x, y in zip(tableau[i], tableau[r])]
    basis[r] = c


def _optimize(tableau, basis, ncols, allowed):
    """Run simplex iterations on the tableau (last row = objective to be
    minimized, last column = rhs).  Bland's rule guarantees termination."""
    m = len(tableau) - 1
    while True:
        obj = tableau[m]
        enter = next((j for j in range(ncols) if j in allowed and obj[j] < 0), None)
        if enter is None:
            return True  # optimal
        ratio = None
        row = None
        for i in range(m):
            a = tableau[i][enter]
            if a > 0:
                r = tableau[i][ncols] / a
                if ratio is None or r < ratio or (r == ratio and basis[i] < basis[row]):
                    ratio, row = r, i
        if row is None:
            return False  # unbounded
        _pivot(tableau, basis, row, enter)


def simplex_min(c, a_eq, b_eq):
    """Minimize c.x subject to a_eq x = b_eq, x >= 0 (all exact rationals).

    Returns (value, x) or None when infeasible.  Raises ValueError when the
    program is unbounded.
    """
    m = len(a_eq)
    n = len(c)
    rows = [[Fraction(x) for x in row] for row in a_eq]
    rhs = [Fraction(x) for x in b_eq]
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
    # phase 1: artificial variables n .. n+m-1
    ncols = n + m
    tableau = []
    for i in range(m):
        tableau.append(rows[i] + [Fraction(int(j == i)) for j in range(m)] + [rhs[i]])
    obj = [Fraction(0)] * (ncols + 1)
    for i in range(m):
        obj = [o - t for o, t in zip(obj, tableau[i])]
    for j in range(n, ncols):
        obj[j] = Fraction(0)
    tableau.append(obj)
    basis = list(range(n, ncols))
    _optimize(tableau, basis, ncols, allowed=set(range(ncols)))
    if -tableau[m][ncols] > 0:
        return None
    # drive leftover artificials out of the basis
    for i in range(m):
        if basis[i] >= n:
            enter = next((j for j in range(n) if tableau[i][j] != 0), None)
            if enter is not None:
                _pivot(tableau, basis, i, enter)
    # phase 2
    obj = [Fraction(x) for x in c] + [Fraction(0)] * (m + 1)
    for i in range(m):
        if basis[i] < n and obj[basis[i]]:
            f = obj[basis[i]]
            obj = [o - f * t for o, t in zip(obj, tableau[i])]
    tableau[m] = obj
    allowed = set(range(n))
    if not _optimize(tableau, basis, ncols, allowed):
        raise ValueError("linear program is unbounded")
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tableau[i][ncols]
    value = sum(Fraction(ci) * xi for ci, xi in zip(c, x))
    return value, x


def solve_nonneg(a_eq, b_eq) -> Optional[list[Fraction]]:
    """A nonnegative rational solution of a_eq x = b_eq, or None."""
    n = len(a_eq[0]) if a_eq else 0
    if n == 0:
        return [] if all(x == 0 for x in b_eq) else None
    res = simplex_min([Fraction(0)] * n, a_eq, b_eq)
    return None if res is None else res[1]


# ---------------------------------------------------------------------------
# lattice points of bounded polyhedra


def _normalize_row(coeffs, const):
    g = 0
    for x in coeffs:
        g = gcd(g, abs(x))
    g = gcd(g, abs(const))
    if g > 1:
        coeffs = tuple(x // g for x in coeffs)
        const = const // g
    return coeffs, const


def _eliminate(rows, j):
    """Fourier-Motzkin elimination of variable j from rows (a, c) meaning
    a.x + c >= 0."""
    pos, neg, zero = [], [], []
    for a, c in rows:
        if a[j] > 0:
            pos.append((a, c))
        elif a[j] < 0:
            neg.append((a, c))
        else:
            zero.append((a, c))
    out = set(zero)
    for ap, cp in pos:
        for an, cn in neg:
            coeffs = tuple(x * (-an[j]) + y * ap[j] for x, y in zip(ap, an))
            const = cp * (-an[j]) + cn * ap[j]
            out.add(_normalize_row(coeffs, const))
    return sorted(out)


def lattice_points(ineqs, dim: int) -> list[Vec]:
    """All integer points satisfying a.x + c >= 0 for every (a, c) in ineqs.

    The feasible region must be bounded; raises ValueError otherwise.
    """
    rows = sorted({_normalize_row(tuple(a), int(c)) for a, c in ineqs})
    systems = [rows]
    for j in range(dim - 1, 0, -1):
        systems.append(_eliminate(systems[-1], j))
    systems.reverse()  # systems[k] constrains variables 0..k only

    points: list[Vec] = []
    x = [0] * dim

    def bounds(k):
        lo, hi = None, None
        for a, c in systems[k]:
            coeff = a[k]
            if coeff == 0:
                continue
            rest = c + sum(a[i] * x[i] for i in range(k))
            if coeff > 0:
                b = -(rest // coeff)
                lo = b if lo is None else max(lo, b)
            else:
                b = rest // (-coeff)
                hi = b if hi is None else min(hi, b)
        return lo, hi

    def rec(k):
        lo, hi = bounds(k)
        if lo is None or hi is None:
            raise ValueError("unbounded region in lattice enumeration")
        for t in range(lo, hi + 1):
            x[k] = t
            if k == dim - 1:
                points.append(tuple(x))
            else:
                rec(k + 1)

    if dim == 0:
        return [()] if all(c >= 0 for _, c in rows) else []
    rec(0)
    return points
