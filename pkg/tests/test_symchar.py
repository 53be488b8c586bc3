"""Tests for character evaluation and representation moduli."""

import math
from fractions import Fraction

import numpy as np
import pytest

from kostant import (
    BadIndex,
    Compose,
    DimensionCap,
    DirectSum,
    Ext,
    LengthMismatch,
    ModuliVector,
    NonPositive,
    Overflow,
    Partition,
    Schur,
    Sym,
    Tensor,
    abs_character,
    cmjd,
    complete_homogeneous,
    complete_homogeneous_log,
    elementary,
    kostka_number,
    matrix_moduli,
    rep_dim,
    rep_matrix,
    rep_moduli,
    schur,
    spectral_radius_rep,
)

from conftest import (
    brute_force_h,
    brute_force_schur,
    monomial_count,
    random_sl,
    random_sl_moduli,
)


def F(*args):
    return Fraction(*args)


class TestModuliVector:
    def test_sorting_and_exactness(self):
        v = ModuliVector.from_values([F(1, 2), F(4), F(1, 2)])
        assert v.values == (F(4), F(1, 2), F(1, 2))
        assert v.exact and v.product() == 1

    def test_rejects_nonpositive(self):
        with pytest.raises(NonPositive):
            ModuliVector.from_values([1.0, 0.0])

    def test_float_vectors_are_inexact(self):
        assert not ModuliVector.from_values([2.0, 0.5]).exact

    def test_normalized_product_one(self):
        v = ModuliVector.from_values([3.0, 2.0, 1.0]).normalized()
        assert abs(math.fsum(v.log_values())) < 1e-12


class TestCompleteHomogeneous:
    def test_all_ones_counts_monomials(self):
        # every monomial evaluates to 1, so the sum is the monomial count
        assert complete_homogeneous(3, [F(1), F(1)]) == 4
        assert 4 == math.comb(3 + 2 - 1, 2 - 1)

    def test_degree_zero(self):
        assert complete_homogeneous(0, [2.0, 3.0]) == 1.0

    def test_enumerated_anchor(self):
        assert complete_homogeneous(2, [F(2), F(1)]) == 7

    def test_matches_enumeration(self, rng):
        for n in range(1, 5):
            for m in range(7):
                x = [F(int(rng.integers(1, 6)), int(rng.integers(1, 4)))
                     for _ in range(n)]
                assert complete_homogeneous(m, ModuliVector.from_values(x)) \
                    == brute_force_h(m, x)

    def test_float_close_to_exact(self, rng):
        for _ in range(10):
            n = int(rng.integers(1, 6))
            m = int(rng.integers(0, 9))
            vals = rng.uniform(0.2, 3.0, size=n)
            exact = brute_force_h(m, [Fraction(v) for v in vals])
            got = complete_homogeneous(m, ModuliVector.from_values(vals))
            assert math.isclose(got, float(exact), rel_tol=n * m * 1e-15 + 1e-15)

    def test_overflow_paths(self):
        x = ModuliVector.from_values([2.0, 0.5])
        with pytest.raises(Overflow):
            complete_homogeneous(3000, x)
        with pytest.raises(Overflow):
            complete_homogeneous(3000, x, log_fallback=False)
        # closed form: h_m(a, b) = (a^(m+1) - b^(m+1)) / (a - b)
        expected = 3001 * math.log(2.0) - math.log(1.5)
        assert math.isclose(complete_homogeneous_log(3000, x), expected,
                            rel_tol=1e-12)

    def test_log_matches_linear_in_range(self):
        x = ModuliVector.from_values([1.7, 0.9, 0.4])
        for m in (0, 1, 5, 20):
            direct = complete_homogeneous(m, x)
            assert math.isclose(math.exp(complete_homogeneous_log(m, x)),
                                direct, rel_tol=1e-10)

    def test_exact_values_survive_large_degree(self):
        value = complete_homogeneous(300, [F(2), F(1, 2)])
        assert value > F(2) ** 300  # dominated by the top monomial


class TestElementary:
    def test_full_product_is_det(self):
        assert elementary(3, [F(4), F(1, 2), F(1, 2)]) == 1

    def test_pairwise_sum(self):
        assert elementary(2, [F(1), F(2), F(3)]) == 11

    def test_degree_zero(self):
        assert elementary(0, [5.0, 1.0]) == 1.0

    def test_bad_index(self):
        with pytest.raises(BadIndex):
            elementary(3, [1.0, 2.0])


class TestSchur:
    def test_single_row_is_h(self):
        x = ModuliVector.from_values([F(3), F(2), F(1)])
        assert schur((1,), x) == elementary(1, x) == complete_homogeneous(1, x)

    def test_tableau_anchor(self):
        assert schur((2, 1), [F(2), F(1)]) == 6

    def test_column_is_determinant(self):
        x = ModuliVector.from_values([F(4), F(1, 2), F(1, 2)])
        assert schur((1, 1, 1), x) == 1

    def test_matches_tableau_enumeration(self, rng):
        shapes = [(1,), (2,), (1, 1), (2, 1), (3, 1), (2, 2), (3, 2),
                  (2, 2, 1), (3, 1, 1)]
        for shape in shapes:
            for n in range(len(shape), 4):
                x = [F(int(rng.integers(1, 5)), int(rng.integers(1, 3)))
                     for _ in range(n)]
                mv = ModuliVector.from_values(x)
                assert schur(shape, mv) == brute_force_schur(shape, x)

    def test_pieri_consistency(self, rng):
        x = random_sl_moduli(rng, 4)
        for m in range(1, 5):
            assert math.isclose(schur((m,), x), complete_homogeneous(m, x),
                                rel_tol=1e-12)
        for k in range(1, 5):
            assert math.isclose(schur((1,) * k, x), elementary(k, x),
                                rel_tol=1e-12)

    def test_cancellation_triggers_exact_retry(self):
        # s_(3,3)(a, b) = (a b)^3: float Jacobi-Trudi cancels catastrophically
        x = ModuliVector.from_values([1.0, 1e-6])
        got = schur((3, 3), x)
        assert math.isclose(got, 1e-18, rel_tol=1e-12)

    def test_too_long_partition(self):
        with pytest.raises(LengthMismatch):
            schur((1, 1, 1), [2.0, 1.0])


class TestKostka:
    def test_known_values(self):
        assert kostka_number((2, 1), (1, 1, 1)) == 2
        assert kostka_number((2, 1), (2, 1)) == 1
        assert kostka_number((3,), (1, 1, 1)) == 1
        assert kostka_number((1, 1, 1), (1, 1, 1)) == 1
        assert kostka_number((2, 2), (2, 1, 1)) == 1
        assert kostka_number((2, 2), (1, 1, 1, 1)) == 2

    def test_dimension_agrees_with_tableau_count(self):
        from conftest import enumerate_ssyt
        for shape in [(2, 1), (3, 2), (2, 2, 1)]:
            for n in (3, 4):
                assert rep_dim(Schur(Partition(shape)), n) == sum(
                    1 for _ in enumerate_ssyt(shape, n))


class TestRepModuli:
    def test_ext_pairwise_products(self):
        v = rep_moduli(Ext(2), [F(4), F(1, 2), F(1, 2)])
        assert v.values == (F(2), F(2), F(1, 4))

    def test_sym_one_is_identity(self):
        x = ModuliVector.from_values([3.0, 1.0, 0.5])
        assert rep_moduli(Sym(1), x).values == x.values

    def test_direct_sum_concatenates(self):
        spec = DirectSum((Sym(1), Sym(1), Sym(1)))
        v = rep_moduli(spec, [F(2), F(1, 2)])
        assert v.values == (F(2), F(2), F(2), F(1, 2), F(1, 2), F(1, 2))

    def test_schur_weights_sum_to_character(self, rng):
        x = ModuliVector.from_values(
            [F(int(rng.integers(1, 5)), int(rng.integers(1, 3)))
             for _ in range(3)])
        for shape in [(2, 1), (2, 2), (3, 1)]:
            moduli = rep_moduli(Schur(Partition(shape)), x)
            assert sum(moduli.values) == schur(shape, x)
            assert moduli.n == rep_dim(Schur(Partition(shape)), 3)

    def test_compose_chains_evaluation(self):
        spec = Compose(Sym(2), Ext(2))
        v = rep_moduli(spec, [F(4), F(1, 2), F(1, 2)])
        inner = rep_moduli(Ext(2), [F(4), F(1, 2), F(1, 2)])
        expected = rep_moduli(Sym(2), inner)
        assert v.values == expected.values

    def test_dimension_cap(self):
        with pytest.raises(DimensionCap):
            rep_moduli(Sym(60), [1.0] * 6, cap=10 ** 6)

    def test_tensor_matches_products(self):
        x = ModuliVector.from_values([F(2), F(1, 2)])
        v = rep_moduli(Tensor(Sym(1), Sym(1)), x)
        assert v.values == (F(4), F(1), F(1), F(1, 4))


class TestAbsCharacter:
    def test_sym_equals_h(self):
        assert abs_character(Sym(2), [F(2), F(1)]) == 7

    def test_ext_sum(self):
        assert abs_character(Ext(2), [F(4), F(1, 2), F(1, 2)]) == F(17, 4)

    def test_all_ones_gives_dimension(self, rng):
        specs = [Sym(3), Ext(2), Schur(Partition((2, 1))),
                 Tensor(Sym(1), Ext(2)), DirectSum((Sym(2), Ext(1))),
                 Compose(Sym(2), Ext(2))]
        x = ModuliVector.from_values([F(1)] * 4)
        for spec in specs:
            assert abs_character(spec, x) == rep_dim(spec, 4)

    def test_equals_sum_of_moduli(self, rng):
        x = random_sl_moduli(rng, 4)
        specs = [Sym(3), Ext(3), Schur(Partition((2, 2))),
                 Tensor(Sym(2), Ext(1)), Compose(Sym(2), Ext(2))]
        for spec in specs:
            direct = abs_character(spec, x)
            moduli_sum = sum(rep_moduli(spec, x).values)
            assert math.isclose(direct, moduli_sum, rel_tol=1e-11)

    def test_equals_trace_of_rep_matrix(self, rng):
        x = random_sl_moduli(rng, 3)
        diag = np.diag(x.as_floats())
        for spec in [Sym(2), Sym(3), Ext(2), Tensor(Sym(1), Ext(2)),
                     DirectSum((Sym(1), Ext(1)))]:
            trace = np.trace(rep_matrix(spec, diag)).real
            assert math.isclose(abs_character(spec, x), trace, rel_tol=1e-11)


class TestSpectralRadiusRep:
    def test_ext_top_products(self, rng):
        x = random_sl_moduli(rng, 5)
        for k in range(1, 6):
            expected = math.prod(x.as_floats()[:k])
            assert math.isclose(spectral_radius_rep(Ext(k), x), expected,
                                rel_tol=1e-12)

    def test_sym_power_of_max(self):
        x = ModuliVector.from_values([F(3), F(1, 3)])
        assert spectral_radius_rep(Sym(4), x) == 81

    def test_tensor_example(self):
        x = ModuliVector.from_values([F(4), F(1, 2), F(1, 2)])
        assert spectral_radius_rep(Tensor(Sym(1), Ext(2)), x) == 8

    def test_matches_max_of_moduli(self, rng):
        x = random_sl_moduli(rng, 4)
        for spec in [Sym(3), Ext(2), Schur(Partition((3, 1))),
                     Compose(Sym(2), Ext(3))]:
            assert math.isclose(spectral_radius_rep(spec, x),
                                max(rep_moduli(spec, x).as_floats()),
                                rel_tol=1e-12)


class TestRepMatrix:
    def test_top_exterior_power_is_det(self, rng):
        a = random_sl(rng, 3)
        top = rep_matrix(Ext(3), a)
        assert top.shape == (1, 1)
        assert abs(top[0, 0] - np.linalg.det(a)) < 1e-10

    def test_sym_one_identity(self, rng):
        a = random_sl(rng, 3)
        assert np.allclose(rep_matrix(Sym(1), a), a)

    def test_ext_two_diagonal(self):
        m = rep_matrix(Ext(2), np.diag([2.0, 3.0, 5.0]))
        assert np.allclose(np.sort(np.diag(m).real), [6.0, 10.0, 15.0])
        assert np.allclose(m - np.diag(np.diag(m)), 0)

    def test_multiplicative(self, rng):
        for spec in [Sym(2), Sym(3), Ext(2), Tensor(Sym(1), Ext(2)),
                     DirectSum((Sym(2), Ext(1)))]:
            a = random_sl(rng, 3)
            b = random_sl(rng, 3)
            lhs = rep_matrix(spec, a @ b)
            rhs = rep_matrix(spec, a) @ rep_matrix(spec, b)
            assert np.allclose(lhs, rhs, atol=1e-9 * np.linalg.norm(rhs))

    def test_dimension_cap(self, rng):
        with pytest.raises(DimensionCap):
            rep_matrix(Sym(10), random_sl(rng, 4), cap=200)

    def test_decomposition_commutes_with_rep(self, rng):
        # the induced matrix of the hyperbolic factor has the rep moduli
        for spec in [Sym(2), Ext(2)]:
            g = random_sl(rng, 3)
            pg = rep_matrix(spec, g)
            h_of_pg = cmjd(pg).hyperbolic
            expected = rep_moduli(spec, matrix_moduli(g)).as_floats()
            got = sorted(np.abs(np.linalg.eigvals(h_of_pg)), reverse=True)
            assert np.allclose(got, expected, rtol=1e-7, atol=1e-9)
