"""Finitely generated affine semigroups in Z^k.

A semigroup is presented by a normalized generator list (sorted, deduplicated,
zero dropped) and always contains 0.  Membership with an explicit
factorization witness is decided in two regimes: positively graded semigroups
(bounded search certified by a grading functional) and groups (lattice solve
plus a positive relation shift).  Saturation, group completion and
kernel-congruence checks build on the cone and lattice machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm

from . import cones, linprog
from .errors import (DimensionMismatch, ImageNotContained, NotPointed,
                     ProtoricError, UnsupportedRegime)
from .lattice import (Matrix, Vec, dot, inverse_unimodular, mat_vec,
                      matrix_from_columns, sign_normalize, smith_normal_form,
                      solve_integer, vadd, vscale, zero_vec)


@dataclass(frozen=True)
class Factorization:
    """Multiplicities aligned with the semigroup's sorted generator list."""

    multiplicities: tuple[int, ...]

    def total(self, generators) -> Vec:
        dim = len(generators[0]) if generators else 0
        acc = zero_vec(dim)
        for c, g in zip(self.multiplicities, generators):
            acc = vadd(acc, vscale(c, g))
        return acc


@dataclass(frozen=True)
class AffineSemigroup:
    ambient: int
    generators: tuple[Vec, ...]

    @cached_property
    def generator_matrix(self) -> Matrix:
        """ambient x n matrix whose columns are the generators."""
        return matrix_from_columns(list(self.generators), self.ambient)

    @cached_property
    def grading(self):
        """A strictly positive integer grading functional, or None."""
        if not self.generators:
            return zero_vec(self.ambient)
        return cones.positive_functional(self.ambient, list(self.generators))

    @cached_property
    def positive_relation(self):
        """Integer a >= 1 componentwise with sum a_j * g_j = 0, or None.

        Existence makes the generated semigroup a group (every generator
        becomes invertible)."""
        n = len(self.generators)
        if n == 0:
            return None
        g = self.generator_matrix
        rhs = [-sum(row) for row in g]
        sol = linprog.solve_nonneg([[Fraction(x) for x in row] for row in g], rhs)
        if sol is None:
            return None
        shifted = [s + 1 for s in sol]
        scale = lcm(*(f.denominator for f in shifted))
        return tuple(int(f * scale) for f in shifted)

    @cached_property
    def recession_cone(self) -> cones.Cone:
        return cones.cone_from_rays(self.ambient, self.generators)


def semigroup_from_generators(k: int, gens) -> AffineSemigroup:
    """Normalized semigroup: generators sorted, deduplicated, zero removed."""
    norm = set()
    for g in gens:
        g = tuple(int(x) for x in g)
        if len(g) != k:
            raise DimensionMismatch(f"generator of dim {len(g)} in ambient dim {k}")
        if any(g):
            norm.add(g)
    return AffineSemigroup(k, tuple(sorted(norm)))


def positive_grading(s: AffineSemigroup):
    """w with w.g > 0 for every generator, or None when none exists."""
    w = s.grading
    return None if w is None else w


def _member_graded(s: AffineSemigroup, v: Vec, w: Vec):
    gens = s.generators
    grades = [dot(w, g) for g in gens]
    target_grade = dot(w, v)
    if target_grade < 0:
        return None
    n = len(gens)

    def search(i: int, rest: Vec, rest_grade: int, picked: list[int]):
        if i == n:
            return tuple(picked) if not any(rest) else None
        # lexicographically least witness: try small multiplicities first
        for c in range(rest_grade // grades[i] + 1):
            nxt = tuple(x - c * y for x, y in zip(rest, gens[i]))
            found = search(i + 1, nxt, rest_grade - c * grades[i], picked + [c])
            if found is not None:
                return found
        return None

    picked = search(0, v, target_grade, [])
    return None if picked is None else Factorization(picked)


def _member_group(s: AffineSemigroup, v: Vec):
    x = solve_integer(s.generator_matrix, v)
    if x is None:
        return None
    a = s.positive_relation
    shift = 0
    for xi, ai in zip(x, a):
        if xi < 0:
            shift = max(shift, -(xi // ai))  # ceil(-xi / ai)
    mult = tuple(xi + shift * ai for xi, ai in zip(x, a))
    return Factorization(mult)


def member(s: AffineSemigroup, v):
    """Factorization witness of v in s, or None when v is not a member."""
    v = tuple(int(x) for x in v)
    if len(v) != s.ambient:
        raise DimensionMismatch(f"element of dim {len(v)} in ambient dim {s.ambient}")
    if not any(v):
        return Factorization(tuple(0 for _ in s.generators))
    if not s.generators:
        return None
    w = s.grading
    if w is not None:
        return _member_graded(s, v, w)
    if s.positive_relation is not None:
        return _member_group(s, v)
    raise UnsupportedRegime("semigroup is neither positively graded nor a group")


def group_completion(s: AffineSemigroup) -> list[Vec]:
    """Basis of the subgroup of Z^ambient generated by the generators."""
    if not s.generators:
        return []
    snf = smith_normal_form(s.generator_matrix)
    # image lattice of the generator matrix is U^{-1} D Z^n
    uinv = inverse_unimodular(snf.u)
    basis = []
    for i in range(min(s.ambient, len(s.generators))):
        d = snf.d[i][i]
        if d:
            basis.append(sign_normalize(tuple(d * uinv[r][i] for r in range(s.ambient))))
    return sorted(basis)


def saturate(s: AffineSemigroup) -> AffineSemigroup:
    """The semigroup cone(s) intersected with the group generated by s."""
    basis = group_completion(s)
    if not basis:
        return s
    r = len(basis)
    bmat = matrix_from_columns(basis, s.ambient)
    coords = []
    for g in s.generators:
        c = solve_integer(bmat, g)
        assert c is not None
        coords.append(c)
    inner = cones.cone_from_rays(r, coords)
    if not inner.pointed:
        raise NotPointed("saturation requires a pointed generator cone")
    hb = cones.hilbert_basis(inner)
    back = [mat_vec(bmat, h) for h in hb.elements]
    return semigroup_from_generators(s.ambient, back)


def semigroup_equal(s: AffineSemigroup, t: AffineSemigroup) -> bool:
    """Presentation-independent equality: mutual membership of generators."""
    if s.ambient != t.ambient:
        return False
    return (all(member(t, g) is not None for g in s.generators)
            and all(member(s, g) is not None for g in t.generators))


@dataclass(frozen=True)
class SemigroupHom:
    source: AffineSemigroup
    target: AffineSemigroup
    matrix: Matrix  # k_target x k_source

    def apply(self, v: Vec) -> Vec:
        return mat_vec(self.matrix, v)


def hom_build(source: AffineSemigroup, target: AffineSemigroup, matrix) -> SemigroupHom:
    """A semigroup homomorphism given by an integer matrix, validated to map
    every source generator into the target."""
    m = tuple(tuple(int(x) for x in row) for row in matrix)
    if len(m) != target.ambient or any(len(row) != source.ambient for row in m):
        raise DimensionMismatch(
            f"expected a {target.ambient} x {source.ambient} matrix")
    hom = SemigroupHom(source, target, m)
    for g in source.generators:
        if member(target, hom.apply(g)) is None:
            raise ImageNotContained(
                f"image {hom.apply(g)} of generator {g} is not in the target", g)
    return hom


@dataclass(frozen=True)
class KernelCongruence:
    """The congruence {(m, m') : hom(m) = hom(m')} of a homomorphism."""

    hom: SemigroupHom


def congruence_holds(r: KernelCongruence, m, m_prime) -> bool:
    s = r.hom.source
    m = tuple(int(x) for x in m)
    m_prime = tuple(int(x) for x in m_prime)
    for v in (m, m_prime):
        if member(s, v) is None:
            raise ProtoricError(f"{v} is not a member of the source semigroup")
    return r.hom.apply(m) == r.hom.apply(m_prime)
