"""Exact integer linear algebra over Z^k.

Vectors are tuples of Python ints, matrices are row-major tuples of such
tuples; everything is arbitrary precision and no floating point is used
anywhere.  Besides Smith normal form, integer kernels and integer linear
solves, this module houses the two truncated-sequence types: finitely
supported integer sequences and depth-L prefixes of arbitrary integer
sequences, together with their dot-product pairing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import NamedTuple, Optional

from .errors import DimensionMismatch, InsufficientDepth

Vec = tuple[int, ...]
Matrix = tuple[Vec, ...]


# ---------------------------------------------------------------------------
# vector helpers


def as_vec(entries) -> Vec:
    return tuple(int(e) for e in entries)


def zero_vec(dim: int) -> Vec:
    return (0,) * dim


def unit_vec(dim: int, i: int) -> Vec:
    """Standard basis vector e_{i+1} (0-based index i)."""
    return tuple(int(j == i) for j in range(dim))


def dot(a, b) -> int:
    if len(a) != len(b):
        raise DimensionMismatch(f"dot product of lengths {len(a)} and {len(b)}")
    return sum(x * y for x, y in zip(a, b))


def vadd(a: Vec, b: Vec) -> Vec:
    if len(a) != len(b):
        raise DimensionMismatch("vector addition of unequal lengths")
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vec, b: Vec) -> Vec:
    return vadd(a, vneg(b))


def vneg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def vscale(c: int, a: Vec) -> Vec:
    return tuple(c * x for x in a)


def vec_gcd(a: Vec) -> int:
    g = 0
    for x in a:
        g = gcd(g, abs(x))
    return g


def primitive(a: Vec) -> Vec:
    """Divide out the gcd of the entries; the zero vector stays zero."""
    g = vec_gcd(a)
    return a if g in (0, 1) else tuple(x // g for x in a)


def sign_normalize(a: Vec) -> Vec:
    """Flip the sign so the first nonzero entry is positive."""
    for x in a:
        if x > 0:
            return a
        if x < 0:
            return vneg(a)
    return a


# ---------------------------------------------------------------------------
# matrix helpers


def as_matrix(rows) -> Matrix:
    m = tuple(as_vec(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise DimensionMismatch("ragged matrix")
    return m


def identity(n: int) -> Matrix:
    return tuple(unit_vec(n, i) for i in range(n))


def mat_vec(m: Matrix, v: Vec) -> Vec:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise DimensionMismatch(f"matrix product {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    bt = list(zip(*b)) if b else []
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def columns(m: Matrix) -> list[Vec]:
    return [tuple(row[j] for row in m) for j in range(len(m[0]))] if m else []


def matrix_from_columns(cols: list[Vec], dim: int) -> Matrix:
    """Assemble a dim x len(cols) matrix; `dim` disambiguates the empty case."""
    return tuple(tuple(c[i] for c in cols) for i in range(dim))


def det(m: Matrix) -> int:
    """Exact determinant of a square integer matrix."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionMismatch("determinant of a non-square matrix")
    a = [[Fraction(x) for x in row] for row in m]
    sign = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    d = Fraction(sign)
    for i in range(n):
        d *= a[i][i]
    assert d.denominator == 1
    return int(d)


def inverse_unimodular(m: Matrix) -> Matrix:
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise DimensionMismatch("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    out = []
    for i in range(n):
        row = a[i][n:]
        if any(x.denominator != 1 for x in row):
            raise DimensionMismatch("matrix is not unimodular")
        out.append(tuple(int(x) for x in row))
    return tuple(out)


# ---------------------------------------------------------------------------
# Smith normal form


class SmithDecomposition(NamedTuple):
    u: Matrix
    d: Matrix
    v: Matrix


def smith_normal_form(m: Matrix) -> SmithDecomposition:
    """Compute U, D, V with U*m*V = D, U and V unimodular, D diagonal with
    d1 | d2 | ... and nonnegative diagonal entries (zeros last).

    Pivots are chosen as the minimal-absolute-value entry scanned in
    row-major order, so the output is deterministic.
    """
    rows, cols = len(m), len(m[0]) if m else 0
    if rows == 0 or cols == 0:
        raise DimensionMismatch("Smith normal form of an empty matrix")
    a = [list(r) for r in m]
    u = [list(r) for r in identity(rows)]
    v = [list(r) for r in identity(cols)]

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in range(rows):
            a[r][i] -= q * a[r][j]
        for r in range(cols):
            v[r][i] -= q * v[r][j]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for r in range(rows):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(cols):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    for t in range(min(rows, cols)):
        while True:
            # minimal-absolute-value pivot in the trailing submatrix
            pivot = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            if pivot[0] != t:
                row_swap(t, pivot[0])
            if pivot[1] != t:
                col_swap(t, pivot[1])
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    row_op(i, t, a[i][t] // a[t][t])
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    col_op(j, t, a[t][j] // a[t][t])
                    if a[t][j]:
                        dirty = True
            if dirty:
                continue
            # divisibility: fold any non-divisible entry into the pivot row
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % a[t][t] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_op(t, bad, -1)
        if t < rows and t < cols and a[t][t] < 0:
            negate_row(t)

    return SmithDecomposition(
        tuple(tuple(r) for r in u),
        tuple(tuple(r) for r in a),
        tuple(tuple(r) for r in v),
    )


def kernel_basis(m: Matrix) -> list[Vec]:
    """Basis of the integer kernel {v : m v = 0}, lexicographically sorted,
    each vector sign-normalized."""
    rows, cols = len(m), len(m[0]) if m else 0
    if rows == 0 or cols == 0:
        return [unit_vec(cols, j) for j in range(cols)]
    snf = smith_normal_form(m)
    basis = []
    for j in range(cols):
        if j >= rows or snf.d[j][j] == 0:
            basis.append(sign_normalize(tuple(snf.v[i][j] for i in range(cols))))
    return sorted(basis)


def solve_integer(m: Matrix, b: Vec) -> Optional[Vec]:
    """One integer solution of m x = b, or None if no lattice solution exists."""
    rows, cols = len(m), len(m[0]) if m else 0
    if len(b) != rows:
        raise DimensionMismatch(f"rhs of length {len(b)} for {rows} rows")
    if cols == 0:
        return () if all(x == 0 for x in b) else None
    snf = smith_normal_form(m)
    ub = mat_vec(snf.u, b)
    y = [0] * cols
    for i in range(rows):
        d = snf.d[i][i] if i < cols else 0
        if d:
            if ub[i] % d:
                return None
            y[i] = ub[i] // d
        elif ub[i] != 0:
            return None
    return mat_vec(snf.v, tuple(y))


# ---------------------------------------------------------------------------
# truncated sequences and the dot-product pairing


@dataclass(frozen=True)
class FinSuppVec:
    """A finitely supported integer sequence, indexed from 1.

    `support` holds (index, value) pairs, sorted, with all values nonzero.
    """

    support: tuple[tuple[int, int], ...]

    @classmethod
    def from_entries(cls, entries: dict[int, int]) -> "FinSuppVec":
        items = sorted((i, v) for i, v in entries.items() if v != 0)
        if any(i < 1 for i, _ in items):
            raise DimensionMismatch("support indices must be positive")
        return cls(tuple(items))

    @classmethod
    def from_dense(cls, values) -> "FinSuppVec":
        return cls.from_entries({i + 1: v for i, v in enumerate(values)})

    def max_index(self) -> int:
        return self.support[-1][0] if self.support else 0

    def __getitem__(self, i: int) -> int:
        return dict(self.support).get(i, 0)

    def __add__(self, other: "FinSuppVec") -> "FinSuppVec":
        merged = dict(self.support)
        for i, v in other.support:
            merged[i] = merged.get(i, 0) + v
        return FinSuppVec.from_entries(merged)

    def truncate(self, depth: int) -> Vec:
        return tuple(self[i] for i in range(1, depth + 1))


@dataclass(frozen=True)
class OmegaPrefix:
    """The class of all integer sequences agreeing on the first `depth`
    coordinates.  Coordinates beyond the prefix are undetermined, never
    implicitly zero."""

    prefix: Vec

    def __post_init__(self):
        if len(self.prefix) < 1:
            raise DimensionMismatch("prefix depth must be at least 1")

    @property
    def depth(self) -> int:
        return len(self.prefix)

    def __add__(self, other: "OmegaPrefix") -> "OmegaPrefix":
        d = min(self.depth, other.depth)
        return OmegaPrefix(tuple(x + y for x, y in zip(self.prefix[:d], other.prefix[:d])))


def specker_pair(m: OmegaPrefix, p: FinSuppVec) -> int:
    """Dot product sum(m_i * p_i) over the support of p.

    Errors when the prefix is too short to determine the sum.
    """
    if m.depth < p.max_index():
        raise InsufficientDepth(
            f"prefix depth {m.depth} < support index {p.max_index()}")
    return sum(m.prefix[i - 1] * v for i, v in p.support)


def leveling_index(rows: list[FinSuppVec], i: int) -> int:
    """For a coordinate-wise finitely supported map into Z^i, the least j
    such that vanishing of the first j coordinates forces image zero."""
    if i > len(rows):
        raise InsufficientDepth(f"requested {i} rows, only {len(rows)} given")
    if i < 1:
        raise DimensionMismatch("i must be positive")
    return max(1, max((r.max_index() for r in rows[:i]), default=1))
