"""Recursion-generated coefficient families and their derived objects."""

from fractions import Fraction

import pytest

from kummer_asym.errors import InvalidSeedError
from kummer_asym.olver import (compute_coefficient_table, lower_coefficients,
                               normalizer_series, satisfies_recursion,
                               shift_basis)
from kummer_asym.ratpoly import CoeffPoly, ParamPoly, TruncSeries


def poly(rows):
    return CoeffPoly.from_json("mu", rows)


A1 = poly([[], [], ["-1/6", "1/6"], [], [], [], ["1/72"]])


class TestCoefficientTable:
    def test_low_order_values(self, table8):
        assert table8.even[0] == CoeffPoly.one("mu")
        assert table8.odd[0] == poly([[], [], [], ["1/6"]])
        assert table8.even[1] == A1

    def test_structure(self, table8):
        # each stage raises the z-degree by 6; the odd family trails by 3
        for s in range(9):
            assert table8.even[s].z_degree() == 6 * s
            assert table8.odd[s].z_degree() == 6 * s + 3
            assert table8.odd[s].value_at_zero().is_zero()

    def test_parities(self, table8):
        for s in range(9):
            assert table8.even[s].parity == "even"
            assert table8.odd[s].parity == "odd"

    def test_even_vanishes_at_mu_zero_origin(self, table8):
        # A_s(mu, 0) = 0 for s >= 1 under the default normalization
        for s in range(1, 9):
            assert table8.even[s].value_at_zero().evaluate(
                Fraction(0), lambda f: f) == 0

    def test_recursion_holds(self, table8):
        assert satisfies_recursion(table8.f, table8.even, table8.odd)

    def test_recursion_check_rejects_perturbation(self, table8):
        broken = list(table8.even)
        broken[1] = broken[1] + CoeffPoly.monomial("mu", 2, Fraction(1, 7))
        assert not satisfies_recursion(table8.f, broken, table8.odd)

    def test_rejects_bad_perturbation_polynomial(self):
        with pytest.raises(ValueError):
            compute_coefficient_table(CoeffPoly.monomial("mu", 3), order=2)
        with pytest.raises(ValueError):
            compute_coefficient_table(CoeffPoly.one("mu"), order=2)


class TestLoweredFamilies:
    def test_low_order_values(self, lowered8):
        low_even, low_odd = lowered8
        assert low_even[0] == CoeffPoly.one("mu")
        assert low_odd[0] == poly([[], [], [], ["1/6"]])
        # a_1 has the same shape as A_1 in this normalization
        assert low_even[1] == A1

    def test_lowered_satisfy_recursion(self, table8, lowered8):
        low_even, low_odd = lowered8
        assert satisfies_recursion(table8.f, low_even, low_odd)

    def test_lengths(self, table8, lowered8):
        low_even, low_odd = lowered8
        assert len(low_even) == len(table8.even)
        assert len(low_odd) == len(table8.odd)


class TestNormalizer:
    def test_unit_constant_and_leading_terms(self, table8):
        norm = normalizer_series(table8)
        s = norm.series
        assert s.coefficient(0) == CoeffPoly.one("mu")
        # B_0'(mu, 0) = 0, so the u^-2 term vanishes
        assert s.coefficient(1).is_zero()
        assert not s.coefficient(2).is_zero()

    def test_reciprocal_pair(self, table8):
        plus = normalizer_series(table8, sign=1).series
        minus = normalizer_series(table8, sign=-1).series
        prod = plus * minus
        assert prod == TruncSeries.one(prod.var, prod.order, prod.param)

    def test_sign_validation(self, table8):
        with pytest.raises(ValueError):
            normalizer_series(table8, sign=2)


class TestShiftBasis:
    def test_identity_seeds(self, table8):
        seeds = (Fraction(1),) + (Fraction(0),) * 8
        shifted = shift_basis(table8, seeds)
        assert shifted.even == table8.even
        assert shifted.odd == table8.odd

    def test_single_shift(self, table8):
        seeds = (Fraction(1), Fraction(1)) + (Fraction(0),) * 7
        shifted = shift_basis(table8, seeds)
        assert shifted.even[0] == table8.even[0]
        assert shifted.even[1] == table8.even[1] + CoeffPoly.one("mu")
        assert shifted.odd[1] == table8.odd[1] + table8.odd[0]

    def test_shifted_origin_values(self, table8):
        seeds = tuple(ParamPoly("mu", (Fraction(k, 3), Fraction(1, k + 1)))
                      for k in range(9))
        seeds = (ParamPoly.one("mu"),) + seeds[1:]
        shifted = shift_basis(table8, seeds)
        for s in range(9):
            # at z = 0 only the A_0 * seeds[s] term survives
            assert shifted.even[s].value_at_zero() == seeds[s]

    def test_shifted_family_satisfies_recursion(self, table8):
        seeds = (Fraction(1), Fraction(0), Fraction(3, 2)) + (Fraction(0),) * 6
        shifted = shift_basis(table8, seeds)
        assert satisfies_recursion(table8.f, shifted.even, shifted.odd)

    def test_lowered_equals_shift_by_slope_seeds(self, table8, lowered8):
        # seeds built from the odd-family origin slopes at reflected parameter
        low_even, low_odd = lowered8
        flip = ParamPoly("mu", (0, -1))
        two_mu = ParamPoly("mu", (0, 2))
        seeds = [ParamPoly.one("mu")]
        for s in range(1, 9):
            seeds.append(two_mu * table8.odd[s - 1].derivative_at_zero().compose(flip))
        shifted = shift_basis(table8, tuple(seeds))
        assert shifted.even == tuple(low_even)
        assert shifted.odd == tuple(low_odd)

    def test_invalid_seed(self, table8):
        with pytest.raises(InvalidSeedError):
            shift_basis(table8, (Fraction(2), Fraction(0)))
