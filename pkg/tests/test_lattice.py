"""Exact integer linear algebra and the Specker pairing."""

import random

import pytest
from hypothesis import given, strategies as st

from protoric.errors import DimensionMismatch, InsufficientDepth
from protoric.lattice import (FinSuppVec, OmegaPrefix, as_matrix, det,
                              identity, kernel_basis, leveling_index,
                              mat_mul, mat_vec, smith_normal_form,
                              solve_integer, specker_pair)

from oracles import box_points


def _check_snf(m):
    snf = smith_normal_form(m)
    assert mat_mul(mat_mul(snf.u, m), snf.v) == snf.d
    assert det(snf.u) in (1, -1)
    assert det(snf.v) in (1, -1)
    diag = [snf.d[i][i] for i in range(min(len(m), len(m[0])))]
    for a, b in zip(diag, diag[1:]):
        if a:
            assert b % a == 0
        else:
            assert b == 0
    for i, row in enumerate(snf.d):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
    return snf


class TestSmithNormalForm:
    def test_identity(self):
        snf = _check_snf(identity(3))
        assert snf.d == identity(3)

    def test_diag_2_3(self):
        snf = _check_snf(as_matrix([[2, 0], [0, 3]]))
        assert snf.d[0][0] == 1
        assert snf.d[1][1] == 6

    def test_zero_matrix(self):
        snf = _check_snf(as_matrix([[0, 0], [0, 0]]))
        assert snf.d == as_matrix([[0, 0], [0, 0]])

    def test_random_reconstruction(self):
        rng = random.Random(20260823)
        for _ in range(60):
            rows = rng.randint(1, 5)
            cols = rng.randint(1, 5)
            m = as_matrix([[rng.randint(-5, 5) for _ in range(cols)]
                           for _ in range(rows)])
            _check_snf(m)

    def test_deterministic(self):
        m = as_matrix([[3, 1, -2], [0, 4, 5]])
        assert smith_normal_form(m) == smith_normal_form(m)


class TestKernelBasis:
    def test_double_cover_cokernel_matrix(self):
        assert kernel_basis(as_matrix([[1, 2, 0], [0, -1, 1]])) == [(2, -1, -1)]

    def test_identity_injective(self):
        assert kernel_basis(identity(3)) == []

    def test_sum_matrix(self):
        assert kernel_basis(as_matrix([[1, 1]])) == [(1, -1)]

    def test_kernel_vectors_map_to_zero_and_span(self):
        rng = random.Random(7)
        for _ in range(30):
            rows = rng.randint(1, 3)
            cols = rng.randint(1, 3)
            m = as_matrix([[rng.randint(-3, 3) for _ in range(cols)]
                           for _ in range(rows)])
            basis = kernel_basis(m)
            for v in basis:
                assert mat_vec(m, v) == tuple(0 for _ in range(rows))
            # every box solution is an integer combination of the basis
            for p in box_points(cols, -4, 4):
                if mat_vec(m, p) == tuple(0 for _ in range(rows)):
                    if not basis:
                        assert not any(p)
                        continue
                    coords = solve_integer(
                        tuple(tuple(b[i] for b in basis) for i in range(cols)), p)
                    assert coords is not None


class TestSolveInteger:
    def test_even(self):
        assert solve_integer(as_matrix([[2]]), (4,)) == (2,)

    def test_parity_obstruction(self):
        assert solve_integer(as_matrix([[2]]), (3,)) is None

    def test_double_cover_matrix(self):
        m = as_matrix([[1, 2, 0], [0, -1, 1]])
        x = solve_integer(m, (1, 0))
        assert x is not None
        assert mat_vec(m, x) == (1, 0)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            solve_integer(as_matrix([[1, 0]]), (1, 2))


class TestSpeckerPairing:
    def test_unit_vector_selects_coordinate(self):
        m = OmegaPrefix((1, 2, 3, 4))
        assert specker_pair(m, FinSuppVec.from_entries({3: 1})) == 3

    def test_zero_vector(self):
        assert specker_pair(OmegaPrefix((5, 5)), FinSuppVec.from_entries({})) == 0

    def test_forced_arithmetic(self):
        m = OmegaPrefix((2, -1, 5))
        assert specker_pair(m, FinSuppVec.from_entries({1: 1, 2: 1})) == 1

    def test_insufficient_depth(self):
        with pytest.raises(InsufficientDepth):
            specker_pair(OmegaPrefix((1,)), FinSuppVec.from_entries({2: 1}))

    @given(st.lists(st.integers(-9, 9), min_size=3, max_size=3),
           st.lists(st.integers(-9, 9), min_size=3, max_size=3),
           st.dictionaries(st.integers(1, 3), st.integers(-9, 9), max_size=3),
           st.dictionaries(st.integers(1, 3), st.integers(-9, 9), max_size=3))
    def test_bilinearity(self, m1, m2, p1, p2):
        a = OmegaPrefix(tuple(m1))
        b = OmegaPrefix(tuple(m2))
        p = FinSuppVec.from_entries(p1)
        q = FinSuppVec.from_entries(p2)
        assert specker_pair(a + b, p) == specker_pair(a, p) + specker_pair(b, p)
        assert specker_pair(a, p + q) == specker_pair(a, p) + specker_pair(a, q)


class TestLevelingIndex:
    def test_coordinate_projections(self):
        rows = [FinSuppVec.from_entries({1: 1}), FinSuppVec.from_entries({2: 1})]
        assert leveling_index(rows, 2) == 2

    def test_single_far_support(self):
        assert leveling_index([FinSuppVec.from_entries({5: 1})], 1) == 5

    def test_zero_row(self):
        assert leveling_index([FinSuppVec.from_entries({})], 1) == 1

    def test_too_few_rows(self):
        with pytest.raises(InsufficientDepth):
            leveling_index([FinSuppVec.from_entries({1: 1})], 2)

    def test_soundness_on_box_samples(self):
        rng = random.Random(99)
        for _ in range(25):
            rows = [FinSuppVec.from_entries(
                {rng.randint(1, 4): rng.randint(-3, 3) for _ in range(rng.randint(0, 3))})
                for _ in range(2)]
            j = leveling_index(rows, 2)
            # vectors supported beyond j map to zero in the first 2 coordinates
            for p in box_points(2, -3, 3):
                vec = FinSuppVec.from_entries({j + 1: p[0], j + 2: p[1]})
                image = [sum(r[i] * vec[i] for i in range(1, j + 3)) for r in rows]
                assert image == [0, 0]


class TestSequenceTypes:
    def test_finsupp_drops_zeros(self):
        v = FinSuppVec.from_entries({1: 2, 3: 0})
        assert v.support == ((1, 2),)

    def test_finsupp_addition_cancels(self):
        a = FinSuppVec.from_entries({2: 5})
        b = FinSuppVec.from_entries({2: -5, 4: 1})
        assert (a + b).support == ((4, 1),)

    def test_omega_prefix_addition_truncates(self):
        a = OmegaPrefix((1, 2, 3))
        b = OmegaPrefix((10, 20))
        assert (a + b).prefix == (11, 22)

    def test_truncate(self):
        assert FinSuppVec.from_entries({2: 7}).truncate(4) == (0, 7, 0, 0)
