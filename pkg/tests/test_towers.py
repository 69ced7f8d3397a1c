"""Towers: construction, filtration, Cauchy reports, embeddings, homs."""

import random

import pytest

from protoric.errors import (BudgetExceeded, InsufficientDepth,
                             NonSurjectiveConnect, ProtoricError,
                             TowerStructureError)
from protoric.lattice import mat_vec, unit_vec, vadd
from protoric.semigroups import (hom_build, member, semigroup_from_generators)
from protoric.towers import (TowerElement, canonical_embedding, cauchy_check,
                             composite_connect_matrix, element_check,
                             embedded_generators, family_tower,
                             filtration_related, lift,
                             sub_tower_limit_membership, tower_build,
                             tower_extend, tower_hom_build)


def constant_tower(depth=3):
    s = semigroup_from_generators(1, [(1,)])
    levels = [s] * depth
    connects = [hom_build(s, s, [[1]]) for _ in range(depth - 1)]
    return tower_build(levels, connects)


def truncated(point, k):
    return tuple(point[j] if j < len(point) else 0 for j in range(k))


class TestBuild:
    def test_torus_tower(self):
        t = family_tower("torus", 3)
        assert t.depth == 3
        assert t.levels[1].ambient == 2

    def test_affine_space_tower(self):
        t = family_tower("affine_space", 3)
        assert t.levels[2].generators == (
            (0, 0, 1), (0, 1, 0), (1, 0, 0))

    def test_doubling_not_surjective(self):
        s = semigroup_from_generators(1, [(1,)])
        with pytest.raises(NonSurjectiveConnect) as exc:
            tower_build([s, s], [hom_build(s, s, [[2]])])
        assert exc.value.witness == (1,)

    def test_connect_count_checked(self):
        s = semigroup_from_generators(1, [(1,)])
        with pytest.raises(TowerStructureError):
            tower_build([s, s], [])


class TestExtend:
    def test_double_cover_depth_3_rays(self):
        t = tower_extend(family_tower("double_cover", 1), 3)
        assert t.levels[2].recession_cone.rays == (
            (0, 0, 1), (0, 1, 0), (2, -1, -1))

    def test_torus_depth_5(self):
        t = tower_extend(family_tower("torus", 2), 5)
        assert t.depth == 5

    def test_no_family(self):
        with pytest.raises(TowerStructureError):
            tower_extend(constant_tower(), 5)

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            tower_extend(family_tower("torus", 2), 13)


class TestElementCheck:
    def test_valid_torus_element(self):
        t = family_tower("torus", 3)
        e = TowerElement(((3,), (3, 1), (3, 1, -2)))
        assert element_check(t, e).ok

    def test_incompatible_projection(self):
        t = family_tower("torus", 3)
        report = element_check(t, TowerElement(((3,), (4, 1))))
        assert not report.ok
        assert report.failing_level == 1

    def test_double_cover_membership_failure(self):
        t = family_tower("double_cover", 2)
        report = element_check(t, TowerElement(((1,), (1, -1))))
        assert not report.ok
        assert report.failing_level == 2


class TestFiltration:
    def test_related_at_low_level(self):
        t = family_tower("torus", 2)
        e = TowerElement(((1,), (1, 7)))
        ep = TowerElement(((1,), (1, 9)))
        assert filtration_related(t, e, ep, 1)
        assert not filtration_related(t, e, ep, 2)

    def test_descending(self):
        rng = random.Random(8)
        t = family_tower("affine_space", 3)
        for _ in range(20):
            base = tuple(rng.randint(0, 4) for _ in range(3))
            other = (base[0], base[1], rng.randint(0, 4))
            e = TowerElement(tuple(truncated(base, k) for k in (1, 2, 3)))
            ep = TowerElement(tuple(truncated(other, k) for k in (1, 2, 3)))
            if filtration_related(t, e, ep, 2):
                assert filtration_related(t, e, ep, 1)

    def test_insufficient_depth(self):
        t = family_tower("torus", 2)
        e = TowerElement(((1,),))
        with pytest.raises(InsufficientDepth):
            filtration_related(t, e, e, 2)

    def test_hausdorff_on_window(self):
        # two distinct depth-d elements are separated by some level <= d
        t = family_tower("affine_space", 3)
        e = TowerElement(((1,), (1, 0), (1, 0, 2)))
        ep = TowerElement(((1,), (1, 0), (1, 0, 3)))
        assert any(not filtration_related(t, e, ep, k) for k in (1, 2, 3))


class TestCauchy:
    def test_constant_sequence(self):
        seq = [TowerElement(((2,), (2, 1)))] * 4
        report = cauchy_check(seq, 2)
        assert report.is_cauchy_prefix
        assert report.stabilization == (0, 0)
        assert report.limit_prefix == ((2,), (2, 1))

    def test_incompleteness_sequence(self):
        depth = 4
        seq = []
        for i in range(1, 9):
            point = tuple(1 if j == 0 or j == i - 1 else 0 for j in range(max(i, 1)))
            if i == 1:
                point = (2,)
            seq.append(TowerElement(tuple(truncated(point, k)
                                          for k in range(1, depth + 1))))
        report = cauchy_check(seq, depth)
        assert report.is_cauchy_prefix
        assert report.limit_prefix == ((1,), (1, 0), (1, 0, 0), (1, 0, 0, 0))

    def test_alternating_not_cauchy(self):
        a = TowerElement(((1,),))
        b = TowerElement(((2,),))
        report = cauchy_check([a, b, a, b], 1)
        assert not report.is_cauchy_prefix
        assert report.stabilization == (None,)


class TestSubTowerLimit:
    def _limit(self):
        return ((1,), (1, 0), (1, 0, 0))

    def test_excluded_limit_witnesses_incompleteness(self):
        t = family_tower("affine_space", 3)
        assert not sub_tower_limit_membership(
            t, "exclude-points", self._limit(), excluded=[(1,)])

    def test_other_limit_is_fine(self):
        t = family_tower("affine_space", 3)
        e2 = ((0,), (0, 1), (0, 1, 0))
        assert sub_tower_limit_membership(
            t, "exclude-points", e2, excluded=[(1,)])

    def test_unrestricted(self):
        t = family_tower("affine_space", 3)
        assert sub_tower_limit_membership(t, "none", self._limit())

    def test_unknown_predicate(self):
        t = family_tower("affine_space", 2)
        with pytest.raises(ProtoricError):
            sub_tower_limit_membership(t, "nope", ((1,), (1, 0)))


class TestCanonicalEmbedding:
    def test_torus_tower_identity(self):
        t = family_tower("torus", 3)
        emb = canonical_embedding(t, 3)
        assert emb.ranks == (1, 2, 3)
        assert not emb.finite_type
        for i, p in enumerate(emb.projected_maps):
            assert p == tuple(tuple(int(r == c) for c in range(i + 2))
                              for r in range(i + 1))

    def test_double_cover_reexpressed_predicate(self):
        t = family_tower("double_cover", 3)
        emb = canonical_embedding(t, 3)
        assert emb.ranks == (1, 2, 3)
        gens = embedded_generators(t, emb, 2)
        from protoric.cones import cone_from_rays
        cone = cone_from_rays(2, gens)
        assert sorted(cone.inequalities) == [(1, 0), (1, 2)]

    def test_constant_tower_finite_type(self):
        emb = canonical_embedding(constant_tower(3), 3)
        assert emb.ranks == (1, 1, 1)
        assert emb.finite_type


class TestLift:
    def test_lift_projects_back(self):
        t = family_tower("double_cover", 3)
        for m in [(0, 1), (1, 0), (2, -1), (3, -1), (4, -2)]:
            if member(t.levels[1], m) is None:
                continue
            up = lift(t, 2, m)
            assert member(t.levels[2], up) is not None
            assert t.connects[1].apply(up) == m

    def test_lift_requires_membership(self):
        t = family_tower("affine_space", 2)
        with pytest.raises(ProtoricError):
            lift(t, 1, (-1,))


class TestTowerHoms:
    def test_identity_hom(self):
        t = family_tower("torus", 3)
        maps = [(i + 1, tuple(tuple(int(r == c) for c in range(i + 1))
                              for r in range(i + 1))) for i in range(3)]
        hom = tower_hom_build(t, t, maps)
        assert hom.level_maps[2][0] == 3

    def test_sign_obstruction(self):
        src = family_tower("torus", 2)
        dst = family_tower("affine_space", 2)
        with pytest.raises(ProtoricError):
            tower_hom_build(src, dst, [(1, [[1]]), (2, [[1, 0], [0, 1]])])

    def test_sum_map_composed_to_constant_tower(self):
        # the level-1 sum map [[1]] induces a hom to the constant tower once
        # composed with the projections: beta_i = beta_1 o pi
        src = family_tower("affine_space", 3)
        dst = constant_tower(3)
        maps = [(i + 1, [[1] + [0] * i]) for i in range(3)]
        hom = tower_hom_build(src, dst, maps)
        # commutation spot check on unit vectors
        for g in src.levels[2].generators:
            down = mat_vec(composite_connect_matrix(src, 3, 2), g)
            assert hom.level_maps[1][1].apply(down) == \
                dst.connects[1].apply(hom.level_maps[2][1].apply(g))

    def test_non_commuting_square_rejected(self):
        src = family_tower("affine_space", 2)
        dst = constant_tower(2)
        with pytest.raises(TowerStructureError):
            tower_hom_build(src, dst, [(1, [[1]]), (2, [[1, 2]])])

    def test_monotonicity_enforced(self):
        t = family_tower("torus", 2)
        with pytest.raises(TowerStructureError):
            tower_hom_build(t, t, [(2, [[1, 0]]), (1, [[1], [0]])])


class TestSurjectivityConsequence:
    def test_every_level_element_lifts(self):
        t = family_tower("affine_space", 3)
        rng = random.Random(21)
        for _ in range(15):
            m = tuple(rng.randint(0, 5) for _ in range(2))
            up = lift(t, 2, m)
            assert t.connects[1].apply(up) == m
