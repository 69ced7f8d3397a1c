"""The toric side of the semigroup duality, at finite truncation depth.

Each affine semigroup S yields a toric level V(S): the semigroup together
with its toric ideal lattice (integer kernel of the generator matrix) and the
rank of its character lattice.  Towers dualize levelwise into toric towers
whose connecting data are closed embeddings; points are semigroup
homomorphisms into (Q, *) represented by exact rational values on the sorted
generator list.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import BudgetExceeded, DimensionMismatch, ProtoricError
from .lattice import Matrix, Vec, identity, kernel_basis, mat_mul, unit_vec
from .semigroups import (AffineSemigroup, SemigroupHom, group_completion,
                         member, semigroup_from_generators)
from .towers import ProAffineTower, TowerHom, tower_build, tower_hom_build

BINOMIAL_DEGREE_BUDGET = 8
IDEMPOTENT_GENERATOR_BUDGET = 12


@dataclass(frozen=True)
class ToricLevel:
    semigroup: AffineSemigroup
    ideal_lattice: tuple[Vec, ...]
    torus_rank: int


@dataclass(frozen=True)
class ToricTower:
    """Levelwise dual of a validated tower; inclusions[i] is the semigroup
    hom S_{i+1} -> S_i whose dual is the closed embedding V_i -> V_{i+1}."""

    levels: tuple[ToricLevel, ...]
    inclusions: tuple[SemigroupHom, ...]
    family: object = None


@dataclass(frozen=True)
class Point:
    """A semigroup homomorphism S -> (Q, *), by values on sorted generators."""

    level: ToricLevel
    values: tuple[Fraction, ...]


@dataclass(frozen=True)
class TorusElement:
    level: ToricLevel
    values: tuple[Fraction, ...]


def variety_from_semigroup(s: AffineSemigroup) -> ToricLevel:
    if not s.generators:
        return ToricLevel(s, (), 0)
    kernel = tuple(kernel_basis(s.generator_matrix))
    return ToricLevel(s, kernel, len(group_completion(s)))


def _values_consistent(values, kernel) -> bool:
    """Whether prod values^{u+} = prod values^{u-} for every kernel vector."""
    for u in kernel:
        lhs = Fraction(1)
        rhs = Fraction(1)
        for v, e in zip(values, u):
            if e > 0:
                lhs *= v ** e
            elif e < 0:
                rhs *= v ** (-e)
        if lhs != rhs:
            return False
    return True


def point_from_values(v: ToricLevel, values) -> Point:
    vals = tuple(Fraction(x) for x in values)
    if len(vals) != len(v.semigroup.generators):
        raise DimensionMismatch(
            f"{len(vals)} values for {len(v.semigroup.generators)} generators")
    if not _values_consistent(vals, v.ideal_lattice):
        raise ProtoricError(f"values {vals} violate a defining relation")
    return Point(v, vals)


def torus_element_from_values(v: ToricLevel, values) -> TorusElement:
    p = point_from_values(v, values)
    if any(x == 0 for x in p.values):
        raise ProtoricError("torus elements need all values nonzero")
    return TorusElement(v, p.values)


def evaluate_point(p: Point, m) -> Fraction:
    """Lambda(m): multiply generator values along a factorization of m."""
    fac = member(p.level.semigroup, m)
    if fac is None:
        raise ProtoricError(f"{tuple(m)} is not a member of the semigroup")
    out = Fraction(1)
    for c, v in zip(fac.multiplicities, p.values):
        if c:
            out *= v ** c
    return out


def act(t: TorusElement, p: Point) -> Point:
    if t.level != p.level:
        raise DimensionMismatch("torus element and point live at different levels")
    return Point(p.level, tuple(a * b for a, b in zip(t.values, p.values)))


def idempotent_points(v: ToricLevel) -> list[Point]:
    """All {0,1}-valued relation-consistent assignments."""
    n = len(v.semigroup.generators)
    if n > IDEMPOTENT_GENERATOR_BUDGET:
        raise BudgetExceeded(f"idempotent search limited to {IDEMPOTENT_GENERATOR_BUDGET} generators")
    out = []
    for bits in product((Fraction(0), Fraction(1)), repeat=n):
        if _values_consistent(bits, v.ideal_lattice):
            out.append(Point(v, bits))
    return out


def binomials_up_to_degree(v: ToricLevel, d: int):
    """Minimal binomial relations chi^a = chi^b of total degree <= d.

    Pairs of multiplicity vectors with disjoint supports and equal weight,
    minimal under componentwise order, each returned once with a < b
    lexicographically.
    """
    if d > BINOMIAL_DEGREE_BUDGET:
        raise BudgetExceeded(f"degree {d} exceeds budget {BINOMIAL_DEGREE_BUDGET}")
    gens = v.semigroup.generators
    n = len(gens)
    if n == 0:
        return []
    by_weight: dict[Vec, list[Vec]] = {}
    for mult in product(range(d + 1), repeat=n):
        if sum(mult) > d:
            continue
        weight = tuple(sum(c * g[i] for c, g in zip(mult, gens))
                       for i in range(v.semigroup.ambient))
        by_weight.setdefault(weight, []).append(mult)
    pairs = []
    for group in by_weight.values():
        for i, a in enumerate(group):
            for b in group[i + 1:]:
                if all(x == 0 or y == 0 for x, y in zip(a, b)):
                    pairs.append((min(a, b), max(a, b)))
    minimal = []
    for a, b in pairs:
        dominated = any(
            (a2, b2) != (a, b)
            and all(x <= y for x, y in zip(a2, a))
            and all(x <= y for x, y in zip(b2, b))
            for a2, b2 in pairs)
        if not dominated:
            minimal.append((a, b))
    return sorted(set(minimal))


# ---------------------------------------------------------------------------
# the duality functors


def dualize_tower(t: ProAffineTower) -> ToricTower:
    levels = tuple(variety_from_semigroup(s) for s in t.levels)
    return ToricTower(levels, t.connects, t.family)


def semigroup_of(vt: ToricTower) -> ProAffineTower:
    """Recover the tower of coordinate-character semigroups of a toric tower."""
    levels = [semigroup_from_generators(lv.semigroup.ambient, lv.semigroup.generators)
              for lv in vt.levels]
    return tower_build(levels, vt.inclusions, vt.family)


@dataclass(frozen=True)
class ToricMorphism:
    """Dual of a tower homomorphism: acts on points by precomposition.

    For beta: S-tower -> S'-tower, the dual maps the toric tower of S' into
    the toric tower of S, contravariantly.
    """

    hom: TowerHom


def dualize_hom(beta: TowerHom) -> ToricMorphism:
    return ToricMorphism(beta)


def hom_of(morphism: ToricMorphism) -> TowerHom:
    return morphism.hom


def compose_tower_homs(outer: TowerHom, inner: TowerHom) -> TowerHom:
    """outer o inner, revalidated; inner: A -> B, outer: B -> C."""
    if inner.target is not outer.source and inner.target != outer.source:
        raise ProtoricError("tower homs are not composable")
    level_maps = []
    for j_outer, beta_outer in outer.level_maps:
        j_inner, beta_inner = inner.level_maps[j_outer - 1]
        level_maps.append((j_inner, mat_mul(beta_outer.matrix, beta_inner.matrix)))
    return tower_hom_build(inner.source, outer.target, level_maps)


def compose_toric(first: ToricMorphism, second: ToricMorphism) -> ToricMorphism:
    """first o second on the toric side = dual of (second.hom o first.hom)."""
    return ToricMorphism(compose_tower_homs(second.hom, first.hom))


def identity_tower_hom(t: ProAffineTower) -> TowerHom:
    level_maps = [(i + 1, identity(t.levels[i].ambient)) for i in range(t.depth)]
    return tower_hom_build(t, t, level_maps)


def dual_point_map(hom: SemigroupHom, p: Point) -> Point:
    """The closed embedding dual to hom, applied to a point.

    hom: S_{i+1} -> S_i; a point of V(S_i) maps to the point of V(S_{i+1})
    evaluating each generator g at Lambda(hom(g)).
    """
    if p.level.semigroup != hom.target:
        raise DimensionMismatch("point does not live on the dual of the hom's target")
    source_level = variety_from_semigroup(hom.source)
    values = tuple(evaluate_point(p, hom.apply(g)) for g in hom.source.generators)
    return point_from_values(source_level, values)


def characters_and_one_params(t: ProAffineTower, i: int):
    """(M_i basis, N_i basis, pairing table) for the level-i torus.

    M_i is the character lattice ZS_i inside Z^{k_i}; N_i is the abstract
    dual presented in coordinates dual to the M_i basis, so the pairing table
    of basis vectors is the identity and general pairings are integer dot
    products of coordinate vectors.
    """
    if not 1 <= i <= t.depth:
        raise DimensionMismatch(f"level {i} outside tower depth {t.depth}")
    m_basis = group_completion(t.levels[i - 1])
    r = len(m_basis)
    n_basis = [unit_vec(r, j) for j in range(r)]
    pairing: Matrix = identity(r)
    return m_basis, n_basis, pairing
