"""Rational polyhedral cones with exact arithmetic.

Cones are stored by their extreme rays (primitive integer vectors).  Facet
inequalities are derived on demand by the double description method; Hilbert
bases are computed by graded completion under a strictly positive integer
functional.  Non-pointed cones are represented by including both signs of a
lineality direction among the rays.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm

from . import linprog
from .errors import BudgetExceeded, DimensionMismatch, NotPointed
from .lattice import (Vec, dot, kernel_basis, primitive, unit_vec, vadd,
                      vneg, vscale)

HILBERT_DIM_BUDGET = 6
FACES_DIM_BUDGET = 4


def _is_redundant(ray: Vec, others: list[Vec]) -> bool:
    """True when ray is a nonnegative rational combination of the others."""
    if not others:
        return False
    a_eq = [[Fraction(o[i]) for o in others] for i in range(len(ray))]
    return linprog.solve_nonneg(a_eq, list(ray)) is not None


def _dd_generators(dim: int, normals: list[Vec]):
    """Double description: generators of {x : n.x >= 0 for n in normals}.

    Returns (lineality basis, extreme rays), all primitive integer vectors.
    New rays from each inserted halfspace are taken over all sign-split
    pairs and reduced to extreme ones immediately, which is adequate at the
    small sizes this package targets.
    """
    lin: list[Vec] = [unit_vec(dim, i) for i in range(dim)]
    rays: list[Vec] = []
    for a in normals:
        pivot = next((l for l in lin if dot(a, l) != 0), None)
        if pivot is not None:
            if dot(a, pivot) < 0:
                pivot = vneg(pivot)
            pa = dot(a, pivot)
            lin = [primitive(vsub_scaled(l, a, pa, pivot)) for l in lin if l != pivot and l != vneg(pivot)]
            lin = [l for l in lin if any(l)]
            rays = [primitive(vsub_scaled(r, a, pa, pivot)) for r in rays]
            rays.append(primitive(pivot))
        else:
            pos = [r for r in rays if dot(a, r) > 0]
            zero = [r for r in rays if dot(a, r) == 0]
            neg = [r for r in rays if dot(a, r) < 0]
            new = pos + zero
            for p in pos:
                for n in neg:
                    w = primitive(vadd(vscale(dot(a, p), n), vscale(-dot(a, n), p)))
                    if any(w):
                        new.append(w)
            rays = new
        rays = _reduce_rays(rays, lin)
    return sorted(lin), rays


def vsub_scaled(v: Vec, a: Vec, pa: int, pivot: Vec) -> Vec:
    """pa * v - (a.v) * pivot, which is orthogonal to a."""
    av = dot(a, v)
    return tuple(pa * x - av * y for x, y in zip(v, pivot))


def _reduce_rays(rays: list[Vec], lin: list[Vec]) -> list[Vec]:
    uniq = sorted(set(rays) - {tuple(0 for _ in rays[0])}) if rays else []
    # drop rays absorbed by the lineality space or by the remaining rays
    span = [l for l in lin] + [vneg(l) for l in lin]
    out = []
    for i, r in enumerate(uniq):
        others = [x for j, x in enumerate(uniq) if j != i] + span
        if not _is_redundant(r, others):
            out.append(r)
    return out


@dataclass(frozen=True)
class Cone:
    dim: int
    rays: tuple[Vec, ...]

    @cached_property
    def inequalities(self) -> tuple[Vec, ...]:
        """Facet normals: v is in the cone iff n.v >= 0 for each normal."""
        lin, extremes = _dd_generators(self.dim, list(self.rays))
        normals = list(extremes)
        for l in lin:
            normals.append(l)
            normals.append(vneg(l))
        return tuple(sorted(primitive(n) for n in normals))

    @cached_property
    def pointed(self) -> bool:
        if not self.inequalities:
            return self.dim == 0
        matrix = tuple(self.inequalities)
        return not kernel_basis(matrix)

    def contains(self, v: Vec) -> bool:
        if len(v) != self.dim:
            raise DimensionMismatch(f"point of dim {len(v)} in cone of dim {self.dim}")
        return all(dot(a, v) >= 0 for a in self.inequalities)


@dataclass(frozen=True)
class HilbertBasis:
    elements: tuple[Vec, ...]


def cone_from_rays(dim: int, rays) -> Cone:
    """Build a cone from (possibly non-primitive, redundant) ray vectors."""
    normalized = []
    for r in rays:
        r = tuple(int(x) for x in r)
        if len(r) != dim:
            raise DimensionMismatch(f"ray of dim {len(r)} in ambient dim {dim}")
        p = primitive(r)
        if any(p):
            normalized.append(p)
    uniq = sorted(set(normalized))
    extremes = []
    for i, r in enumerate(uniq):
        if not _is_redundant(r, [x for j, x in enumerate(uniq) if j != i]):
            extremes.append(r)
    return Cone(dim, tuple(extremes))


def dual_cone(c: Cone) -> Cone:
    """The cone {u : u.v >= 0 for all v in c}."""
    lin, extremes = _dd_generators(c.dim, list(c.rays))
    rays = list(extremes)
    for l in lin:
        rays.append(l)
        rays.append(vneg(l))
    return cone_from_rays(c.dim, rays)


def cone_contains(c: Cone, v: Vec) -> bool:
    return c.contains(tuple(int(x) for x in v))


def grading_functional(c: Cone):
    """An integer w with w.r > 0 for every ray, or None when the cone is
    not pointed.  Found by exact LP, kept small by minimizing the l1 norm."""
    if not c.rays:
        return tuple(0 for _ in range(c.dim))
    return positive_functional(c.dim, list(c.rays))


def positive_functional(dim: int, vectors: list[Vec]):
    """Integer w with w.v >= 1 on every vector, minimizing sum |w_i|; None
    when no strictly positive functional exists."""
    m = len(vectors)
    n = 2 * dim + m  # w+ , w- , slacks
    a_eq = []
    for k, v in enumerate(vectors):
        row = [Fraction(x) for x in v] + [Fraction(-x) for x in v]
        row += [Fraction(-int(j == k)) for j in range(m)]
        a_eq.append(row)
    c = [Fraction(1)] * (2 * dim) + [Fraction(0)] * m
    res = linprog.simplex_min(c, a_eq, [Fraction(1)] * m)
    if res is None:
        return None
    x = res[1]
    w = [x[i] - x[dim + i] for i in range(dim)]
    scale = lcm(*(f.denominator for f in w)) if w else 1
    return tuple(int(f * scale) for f in w)


def hilbert_basis(c: Cone) -> HilbertBasis:
    """Minimal generating set of cone intersect Z^dim, lexicographically
    sorted.  Requires a pointed cone of dimension within budget."""
    if c.dim > HILBERT_DIM_BUDGET:
        raise BudgetExceeded(f"Hilbert basis limited to ambient dim {HILBERT_DIM_BUDGET}")
    if not c.pointed:
        raise NotPointed("Hilbert basis of a non-pointed cone is undefined")
    if not c.rays:
        return HilbertBasis(())
    w = grading_functional(c)
    assert w is not None
    bound = sum(dot(w, r) for r in c.rays)
    rows = [(a, 0) for a in c.inequalities]
    rows.append((vneg(w), bound))
    pts = linprog.lattice_points(rows, c.dim)
    pts.sort(key=lambda p: (dot(w, p), p))
    basis: list[Vec] = []
    for p in pts:
        if not any(p):
            continue
        decomposable = False
        for h in basis:
            diff = tuple(x - y for x, y in zip(p, h))
            if any(diff) and c.contains(diff):
                decomposable = True
                break
        if not decomposable:
            basis.append(p)
    return HilbertBasis(tuple(sorted(basis)))


def faces(c: Cone) -> list[Cone]:
    """All faces of a pointed cone, from {0} up to the cone itself."""
    if c.dim > FACES_DIM_BUDGET:
        raise BudgetExceeded(f"face enumeration limited to ambient dim {FACES_DIM_BUDGET}")
    if not c.pointed:
        raise NotPointed("face enumeration requires a pointed cone")
    ineqs = c.inequalities
    seen: set[tuple[Vec, ...]] = set()
    n = len(ineqs)
    for mask in range(1 << n):
        chosen = [ineqs[i] for i in range(n) if mask >> i & 1]
        tight = tuple(r for r in c.rays if all(dot(a, r) == 0 for a in chosen))
        seen.add(tight)
    return [Cone(c.dim, t) for t in sorted(seen, key=lambda t: (len(t), t))]
