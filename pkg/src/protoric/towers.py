"""Finite windows onto projective systems of affine semigroups.

A tower holds levels S_1 ... S_L and surjective connecting homomorphisms
phi_i: S_{i+1} -> S_i, optionally tagged with a family rule (torus,
affine_space, double_cover) that allows extending the window.  On top of the
window sit the filtration predicates, Cauchy/stabilization reports, the
canonical coordinate-change embedding that turns every connecting group map
into a literal coordinate projection, and tower homomorphisms with their
leveling data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import cones
from .errors import (BudgetExceeded, DimensionMismatch, InsufficientDepth,
                     NonSurjectiveConnect, ProtoricError, TowerStructureError)
from .lattice import (Matrix, Vec, identity, inverse_unimodular, mat_mul,
                      mat_vec, matrix_from_columns, smith_normal_form,
                      solve_integer, unit_vec, vadd, vscale, zero_vec)
from .semigroups import (AffineSemigroup, SemigroupHom, group_completion,
                         hom_build, member, semigroup_from_generators)

EXTEND_DEPTH_BUDGET = 12
FAMILY_RULES = ("torus", "affine_space", "double_cover")


@dataclass(frozen=True)
class ProAffineTower:
    levels: tuple[AffineSemigroup, ...]
    connects: tuple[SemigroupHom, ...]
    family: Optional[str] = None

    @property
    def depth(self) -> int:
        return len(self.levels)


@dataclass(frozen=True)
class TowerElement:
    components: tuple[Vec, ...]

    @property
    def depth(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class ElementReport:
    ok: bool
    failing_level: Optional[int]
    message: str


def tower_build(levels, connects, family: Optional[str] = None) -> ProAffineTower:
    """Validated tower: endpoints line up and every connect is surjective."""
    levels = tuple(levels)
    connects = tuple(connects)
    if len(connects) != len(levels) - 1:
        raise TowerStructureError(
            f"{len(levels)} levels need {len(levels) - 1} connects, got {len(connects)}")
    if family is not None and family not in FAMILY_RULES:
        raise TowerStructureError(f"unknown family rule {family!r}")
    for i, hom in enumerate(connects):
        if hom.source != levels[i + 1] or hom.target != levels[i]:
            raise TowerStructureError(f"connect {i + 1} endpoints do not match levels")
        images = [hom.apply(g) for g in hom.source.generators]
        image_sg = semigroup_from_generators(hom.target.ambient, images)
        for h in hom.target.generators:
            if member(image_sg, h) is None:
                raise NonSurjectiveConnect(
                    f"generator {h} of level {i + 1} is not in the image of level {i + 2}",
                    h, i + 1)
    return ProAffineTower(levels, connects, family)


# ---------------------------------------------------------------------------
# family rules


def _family_level(family: str, i: int) -> AffineSemigroup:
    if family == "torus":
        gens = [unit_vec(i, j) for j in range(i)]
        gens += [tuple(-x for x in g) for g in gens]
        return semigroup_from_generators(i, gens)
    if family == "affine_space":
        return semigroup_from_generators(i, [unit_vec(i, j) for j in range(i)])
    if family == "double_cover":
        rays = [tuple(2 if j == 0 else -1 for j in range(i))]
        rays += [unit_vec(i, j) for j in range(1, i)]
        hb = cones.hilbert_basis(cones.cone_from_rays(i, rays))
        return semigroup_from_generators(i, hb.elements)
    raise TowerStructureError(f"unknown family rule {family!r}")


def _forget_last_matrix(i: int) -> Matrix:
    """The i x (i+1) block [I | 0] dropping the last coordinate."""
    return tuple(tuple(int(r == c) for c in range(i + 1)) for r in range(i))


def tower_extend(t: ProAffineTower, depth: int) -> ProAffineTower:
    """A fresh window of the requested depth following the family rule."""
    if t.family is None:
        raise TowerStructureError("tower has no family rule to extend by")
    if depth > EXTEND_DEPTH_BUDGET:
        raise BudgetExceeded(f"depth {depth} exceeds budget {EXTEND_DEPTH_BUDGET}")
    if depth < 1:
        raise TowerStructureError("depth must be at least 1")
    return family_tower(t.family, depth)


def family_tower(family: str, depth: int) -> ProAffineTower:
    if depth > EXTEND_DEPTH_BUDGET:
        raise BudgetExceeded(f"depth {depth} exceeds budget {EXTEND_DEPTH_BUDGET}")
    levels = [_family_level(family, i) for i in range(1, depth + 1)]
    connects = [hom_build(levels[i + 1], levels[i], _forget_last_matrix(i + 1))
                for i in range(depth - 1)]
    return tower_build(levels, connects, family)


# ---------------------------------------------------------------------------
# elements, filtration, Cauchy reports


def element_check(t: ProAffineTower, e: TowerElement) -> ElementReport:
    """Membership at every level plus compatibility under the connects."""
    if e.depth > t.depth:
        return ElementReport(False, None, f"element depth {e.depth} exceeds tower depth {t.depth}")
    for i, m in enumerate(e.components):
        level = t.levels[i]
        if len(m) != level.ambient:
            return ElementReport(False, i + 1, f"component {m} has wrong dimension at level {i + 1}")
        if member(level, m) is None:
            return ElementReport(False, i + 1, f"component {m} is not a member of level {i + 1}")
    for i in range(e.depth - 1):
        image = t.connects[i].apply(e.components[i + 1])
        if image != e.components[i]:
            return ElementReport(
                False, i + 1,
                f"connect sends {e.components[i + 1]} to {image}, expected {e.components[i]}")
    return ElementReport(True, None, "ok")


def filtration_related(t: ProAffineTower, e: TowerElement, e_prime: TowerElement, k: int) -> bool:
    """Whether the two elements agree at level k (hence at all lower levels)."""
    if k < 1 or k > min(e.depth, e_prime.depth):
        raise InsufficientDepth(f"level {k} beyond the elements' common depth")
    return e.components[k - 1] == e_prime.components[k - 1]


@dataclass(frozen=True)
class CauchyReport:
    is_cauchy_prefix: bool
    stabilization: tuple[Optional[int], ...]  # least N per level, None if not stabilized
    limit_prefix: tuple[Vec, ...]


def cauchy_check(seq: list[TowerElement], depth: int) -> CauchyReport:
    """Stabilization report for a sequence of depth-`depth` elements.

    Level k counts as stabilized when the last two (and all later) values
    agree; a lone final value is not evidence of stabilization in the window.
    """
    if any(e.depth < depth for e in seq):
        raise InsufficientDepth("all elements must reach the requested depth")
    stab: list[Optional[int]] = []
    limit: list[Vec] = []
    for k in range(depth):
        values = [e.components[k] for e in seq]
        n = len(values) - 1
        while n > 0 and values[n - 1] == values[-1]:
            n -= 1
        if n <= len(values) - 2:
            stab.append(n)
            if len(stab) == len(limit) + 1 and all(s is not None for s in stab):
                limit.append(values[-1])
        else:
            stab.append(None)
    is_cauchy = all(s is not None for s in stab)
    return CauchyReport(is_cauchy, tuple(stab), tuple(limit))


def sub_tower_limit_membership(t: ProAffineTower, predicate: str,
                               limit_prefix, excluded=()) -> bool:
    """Whether a limit prefix stays inside a named restricted subsemigroup.

    Supported predicates: "none" (the unrestricted tower) and
    "exclude-points", which removes the listed finite-support limit points
    (given as dense tuples, implicitly zero beyond their length).  A prefix
    that coincides with the truncation of an excluded point at every level is
    the incompleteness witness and yields False.
    """
    prefix = tuple(tuple(int(x) for x in m) for m in limit_prefix)
    for i, m in enumerate(prefix):
        if member(t.levels[i], m) is None:
            raise ProtoricError(f"limit prefix fails membership at level {i + 1}")
    if predicate == "none":
        return True
    if predicate != "exclude-points":
        raise ProtoricError(f"unknown restriction predicate {predicate!r}")
    for point in excluded:
        point = tuple(int(x) for x in point)
        matches = all(
            m == tuple((point[j] if j < len(point) else 0) for j in range(len(m)))
            for m in prefix)
        if matches:
            return False
    return True


# ---------------------------------------------------------------------------
# lifting and the canonical embedding


def lift(t: ProAffineTower, i: int, m) -> Vec:
    """A preimage in S_{i+1} of m in S_i under the connect, deterministic."""
    if not 1 <= i < t.depth:
        raise TowerStructureError(f"no connect out of level {i}")
    hom = t.connects[i - 1]
    m = tuple(int(x) for x in m)
    images = [hom.apply(g) for g in hom.source.generators]
    image_sg = semigroup_from_generators(hom.target.ambient, images)
    fac = member(image_sg, m)
    if fac is None:
        raise ProtoricError(f"{m} is not a member of level {i}")
    result = zero_vec(hom.source.ambient)
    for c, u in zip(fac.multiplicities, image_sg.generators):
        h = next(g for g in hom.source.generators if hom.apply(g) == u)
        result = vadd(result, vscale(c, h))
    return result


def composite_connect_matrix(t: ProAffineTower, j: int, i: int) -> Matrix:
    """Matrix of the composite connect from level j down to level i <= j."""
    if not 1 <= i <= j <= t.depth:
        raise TowerStructureError(f"bad composite range {j} -> {i}")
    result = identity(t.levels[j - 1].ambient)
    for lvl in range(j - 1, i - 1, -1):
        result = mat_mul(t.connects[lvl - 1].matrix, result)
    return result


@dataclass(frozen=True)
class CanonicalEmbedding:
    ranks: tuple[int, ...]
    level_bases: tuple[tuple[Vec, ...], ...]  # basis of ZS_i inside Z^{k_i}
    group_maps: tuple[Matrix, ...]  # induced maps ZS_{i+1} -> ZS_i in those bases
    changes: tuple[Matrix, ...]  # unimodular W_i per level
    projected_maps: tuple[Matrix, ...]  # W_i^{-1} A_i W_{i+1}, coordinate projections
    finite_type: bool


def _block_diag(a: Matrix, n: int) -> Matrix:
    """a extended by an identity block to total size len(a) + n."""
    size = len(a) + n
    rows = []
    for r in range(size):
        if r < len(a):
            rows.append(tuple(a[r]) + (0,) * n)
        else:
            rows.append(tuple(int(c == r) for c in range(size)))
    return tuple(rows)


def canonical_embedding(t: ProAffineTower, depth: int) -> CanonicalEmbedding:
    """Coordinate changes making every connecting group map a projection.

    In the new coordinates the map ZS_{i+1} -> ZS_i is exactly [I | 0]
    (projection onto the first r_i coordinates), exhibiting the window as a
    filtered subsemigroup of a Z^omega prefix.  The window is classified as
    finite type when the last two ranks agree.
    """
    if depth > t.depth:
        raise InsufficientDepth(f"depth {depth} exceeds tower depth {t.depth}")
    bases = [tuple(group_completion(t.levels[i])) for i in range(depth)]
    ranks = [len(b) for b in bases]
    group_maps: list[Matrix] = []
    for i in range(depth - 1):
        bmat = matrix_from_columns(list(bases[i]), t.levels[i].ambient)
        cols = []
        for b in bases[i + 1]:
            c = solve_integer(bmat, t.connects[i].apply(b))
            assert c is not None, "group maps of a validated tower are defined"
            cols.append(c)
        group_maps.append(matrix_from_columns(cols, ranks[i]))
    changes: list[Matrix] = [identity(ranks[0])]
    projected: list[Matrix] = []
    for i in range(depth - 1):
        w_inv = inverse_unimodular(changes[i])
        m = mat_mul(w_inv, group_maps[i])
        snf = smith_normal_form(m)
        if any(snf.d[r][r] != 1 for r in range(ranks[i])):
            raise AssertionError("connect group map is not surjective")
        changes.append(mat_mul(snf.v, _block_diag(snf.u, ranks[i + 1] - ranks[i])))
        projected.append(mat_mul(mat_mul(w_inv, group_maps[i]), changes[i + 1]))
    finite = depth >= 2 and ranks[-1] == ranks[-2]
    return CanonicalEmbedding(tuple(ranks), tuple(bases), tuple(group_maps),
                              tuple(changes), tuple(projected), finite)


def embedded_generators(t: ProAffineTower, emb: CanonicalEmbedding, i: int) -> list[Vec]:
    """Level-i generators re-expressed in the canonical embedding coordinates."""
    basis = emb.level_bases[i - 1]
    bmat = matrix_from_columns(list(basis), t.levels[i - 1].ambient)
    w_inv = inverse_unimodular(emb.changes[i - 1])
    out = []
    for g in t.levels[i - 1].generators:
        c = solve_integer(bmat, g)
        assert c is not None
        out.append(mat_vec(w_inv, c))
    return sorted(out)


# ---------------------------------------------------------------------------
# tower homomorphisms


@dataclass(frozen=True)
class TowerHom:
    source: ProAffineTower
    target: ProAffineTower
    level_maps: tuple[tuple[int, SemigroupHom], ...]  # (j(i), beta_i) per target level


def tower_hom_build(source: ProAffineTower, target: ProAffineTower, level_maps) -> TowerHom:
    """Validated tower homomorphism with monotone leveling function.

    level_maps gives, for each target level i, a pair (j(i), matrix) where
    the matrix describes a homomorphism S_{j(i)} -> S'_i; commutation of all
    consecutive squares is checked on generators.
    """
    if len(level_maps) != target.depth:
        raise TowerStructureError("one level map required per target level")
    built = []
    prev_j = 1
    for i, (j, matrix) in enumerate(level_maps, start=1):
        if not 1 <= j <= source.depth:
            raise TowerStructureError(f"leveling index {j} outside the source window")
        if j < prev_j:
            raise TowerStructureError("leveling function must be monotone")
        prev_j = j
        built.append((j, hom_build(source.levels[j - 1], target.levels[i - 1], matrix)))
    for i in range(target.depth - 1):
        j_lo, beta_lo = built[i]
        j_hi, beta_hi = built[i + 1]
        drop = composite_connect_matrix(source, j_hi, j_lo)
        phi = target.connects[i]
        for g in source.levels[j_hi - 1].generators:
            left = phi.apply(beta_hi.apply(g))
            right = beta_lo.apply(mat_vec(drop, g))
            if left != right:
                raise TowerStructureError(
                    f"square at target level {i + 1} fails on generator {g}: "
                    f"{left} != {right}")
    return TowerHom(source, target, tuple(built))
