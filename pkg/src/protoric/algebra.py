"""Truncated semigroup algebras with exact rational coefficients.

An algebra element is a finite rational combination of characters chi^m with
exponents m in a fixed level of a tower.  Level projections pi_l push
exponents through the composed connecting maps and merge collided terms; the
kernel ideals I_l = ker pi_l give the filtration along which the regular
function ring of the ind-variety is completed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, InsufficientDepth, ProtoricError
from .lattice import Vec, mat_vec, vadd, zero_vec
from .semigroups import member
from .towers import ProAffineTower, composite_connect_matrix


@dataclass(frozen=True)
class AlgebraElement:
    tower: ProAffineTower
    level: int
    terms: tuple[tuple[Vec, Fraction], ...]  # sorted exponents, nonzero coefficients

    def coefficient(self, m) -> Fraction:
        m = tuple(int(x) for x in m)
        return dict(self.terms).get(m, Fraction(0))

    @property
    def support_size(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms


def element(tower: ProAffineTower, level: int, terms) -> AlgebraElement:
    """Validated element: exponents are members of the level's semigroup."""
    if not 1 <= level <= tower.depth:
        raise InsufficientDepth(f"level {level} outside tower depth {tower.depth}")
    sg = tower.levels[level - 1]
    norm: dict[Vec, Fraction] = {}
    for m, c in (terms.items() if isinstance(terms, dict) else terms):
        m = tuple(int(x) for x in m)
        c = Fraction(c)
        if member(sg, m) is None:
            raise ProtoricError(f"exponent {m} is not a member of level {level}")
        norm[m] = norm.get(m, Fraction(0)) + c
    clean = tuple(sorted((m, c) for m, c in norm.items() if c))
    return AlgebraElement(tower, level, clean)


def chi(tower: ProAffineTower, level: int, m) -> AlgebraElement:
    return element(tower, level, {tuple(int(x) for x in m): Fraction(1)})


def one(tower: ProAffineTower, level: int) -> AlgebraElement:
    return chi(tower, level, zero_vec(tower.levels[level - 1].ambient))


def _same_context(f: AlgebraElement, g: AlgebraElement):
    if f.tower != g.tower or f.level != g.level:
        raise DimensionMismatch("elements live in different algebra contexts")


def add(f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
    _same_context(f, g)
    merged = dict(f.terms)
    for m, c in g.terms:
        merged[m] = merged.get(m, Fraction(0)) + c
    return element(f.tower, f.level, merged)


def scale(c, f: AlgebraElement) -> AlgebraElement:
    c = Fraction(c)
    return element(f.tower, f.level, {m: c * a for m, a in f.terms})


def sub(f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
    return add(f, scale(-1, g))


def mul(f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
    """Product by the character rule chi^m * chi^m' = chi^{m+m'}."""
    _same_context(f, g)
    out: dict[Vec, Fraction] = {}
    for m, a in f.terms:
        for n, b in g.terms:
            key = vadd(m, n)
            out[key] = out.get(key, Fraction(0)) + a * b
    return element(f.tower, f.level, out)


def project(f: AlgebraElement, level: int) -> AlgebraElement:
    """pi_level(f): push exponents down the tower and merge collisions."""
    if not 1 <= level <= f.level:
        raise InsufficientDepth(f"cannot project from level {f.level} to {level}")
    matrix = composite_connect_matrix(f.tower, f.level, level)
    out: dict[Vec, Fraction] = {}
    for m, c in f.terms:
        key = mat_vec(matrix, m)
        out[key] = out.get(key, Fraction(0)) + c
    return element(f.tower, level, out)


def in_ideal(f: AlgebraElement, level: int) -> bool:
    """Whether f lies in I_level = ker pi_level."""
    return project(f, level).is_zero()


def exref_sequence(tower: ProAffineTower, i: int) -> AlgebraElement:
    """The elements f_i = x_i / 2^{i-1} + sum_{k<i} x_k / 2^k at window depth.

    Here x_k is the character with exponent (1,...,1,0,...,0) (k ones) at the
    tower's top level.  Consecutive differences fall into every ideal I_l
    with l < i, yet the support of f_i has exactly i terms: a Cauchy sequence
    with no limit of finite support.
    """
    depth = tower.depth
    if not 1 <= i <= depth:
        raise InsufficientDepth(f"index {i} outside window depth {depth}")
    ambient = tower.levels[depth - 1].ambient

    def x_exp(k: int) -> Vec:
        return tuple(1 if j < k else 0 for j in range(ambient))

    terms = {x_exp(i): Fraction(1, 2 ** (i - 1))}
    for k in range(1, i):
        terms[x_exp(k)] = Fraction(1, 2 ** k)
    return element(tower, depth, terms)
