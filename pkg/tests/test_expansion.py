"""End-to-end expansion evaluation: discrepancies, decay rates, sweeps."""

import cmath
import math

import pytest

from kummer_asym.errors import DomainError, PoleError
from kummer_asym.expansion import (ExpansionConfig, SideBySide, VARIANTS,
                                   acceptance_grid, decay_sweep,
                                   evaluate_sides, gamma_ratio_check,
                                   sweep_group_key)
from kummer_asym.special.types import LogComplex, Precision, RiemannPoint


def cfg(variant, b=1.5, z=(1.0, 0.0), t=20.0, u_theta=0.0, order=3, prec=None):
    return ExpansionConfig(variant=variant, b=b, z=RiemannPoint(*z), t=t,
                           u_theta=u_theta, order=order,
                           prec=prec or Precision.dd())


class TestConfigValidation:
    def test_variant_and_order(self):
        with pytest.raises(DomainError):
            cfg("bogus")
        with pytest.raises(DomainError):
            cfg("m", order=0)
        with pytest.raises(DomainError):
            cfg("m", t=-3.0)

    def test_first_kind_pole(self):
        with pytest.raises(PoleError):
            cfg("m", b=0.0)
        with pytest.raises(PoleError):
            cfg("m", b=-2.0)
        cfg("u-capital", b=0.0)  # second kind tolerates the M poles

    def test_second_kind_u_angle(self):
        with pytest.raises(DomainError):
            cfg("u-capital", u_theta=1.6)
        with pytest.raises(DomainError):
            cfg("u-lower", u_theta=-math.pi / 2)
        cfg("m", u_theta=1.6)

    def test_derived_quantities(self):
        c = cfg("m", t=20.0, u_theta=0.3)
        assert c.u == pytest.approx(20.0 * cmath.exp(0.3j))
        assert c.a == pytest.approx(c.u ** 2 / 4 + 0.75)

    def test_side_by_side_rejects_nan(self):
        one = LogComplex(0.0, 0.0)
        with pytest.raises(DomainError):
            SideBySide(one, one, math.nan)


class TestFirstKind:
    def test_headline_point(self):
        r = evaluate_sides(cfg("m"))
        assert r.rel_discrepancy < 1e-8

    def test_halving_u_scales_by_two_pow_2n(self):
        d20 = evaluate_sides(cfg("m", t=20.0)).rel_discrepancy
        d40 = evaluate_sides(cfg("m", t=40.0)).rel_discrepancy
        ratio = d20 / d40
        assert 32.0 < ratio < 128.0

    def test_discrepancy_decreases_with_order(self):
        discs = [evaluate_sides(cfg("m", order=n)).rel_discrepancy
                 for n in (1, 2, 3)]
        assert discs[0] > discs[1] > discs[2]
        assert discs[0] < 1e-3
        assert discs[2] < 1e-8

    def test_one_full_turn(self):
        r = evaluate_sides(cfg("m", z=(1.0, 2 * math.pi)))
        assert r.rel_discrepancy < 1e-7

    def test_half_turn_multiplier_on_oracle_side(self):
        # the prefactored M side picks up exactly e^{i pi b} per half turn
        b = 1.5
        base = evaluate_sides(cfg("m", b=b, z=(1.0, 0.3)))
        up = evaluate_sides(cfg("m", b=b, z=(1.0, 0.3 + math.pi)))
        want = base.lhs * cmath.exp(1j * math.pi * b)
        assert up.lhs.ratio_deviation(want) < 1e-8

    def test_complex_parameter(self):
        r = evaluate_sides(cfg("m", b=complex(1.2, 0.5)))
        assert r.rel_discrepancy < 1e-6


class TestSecondKind:
    def test_headline_points(self):
        for variant in ("u-capital", "u-lower"):
            r = evaluate_sides(cfg(variant))
            assert r.rel_discrepancy < 1e-8

    def test_one_full_turn(self):
        for variant in ("u-capital", "u-lower"):
            r = evaluate_sides(cfg(variant, z=(1.0, 2 * math.pi), order=2))
            assert r.rel_discrepancy < 1e-5

    def test_discrepancy_decreases_with_order(self):
        for variant in ("u-capital", "u-lower"):
            discs = [evaluate_sides(cfg(variant, order=n)).rel_discrepancy
                     for n in (1, 2, 3)]
            assert discs[0] > discs[1] > discs[2]

    def test_rotated_u(self):
        for variant in ("u-capital", "u-lower"):
            r = evaluate_sides(cfg(variant, u_theta=0.3))
            assert r.rel_discrepancy < 1e-7

    def test_complex_parameter(self):
        for variant in ("u-capital", "u-lower"):
            r = evaluate_sides(cfg(variant, b=complex(1.2, 0.5)))
            assert r.rel_discrepancy < 1e-6

    def test_variant_equivalence_headline(self):
        # the shared oracle value cancels out of the lhs ratio, so the rhs
        # ratio must reproduce it to within the larger single discrepancy
        uc = evaluate_sides(cfg("u-capital"))
        ul = evaluate_sides(cfg("u-lower"))
        dev = (uc.rhs / ul.rhs).ratio_deviation(uc.lhs / ul.lhs)
        assert dev <= max(uc.rel_discrepancy, ul.rel_discrepancy)

    def test_variant_equivalence_grid(self):
        # across parameters the deviation obeys the two-sided triangle bound
        for b, zr, zth, t in ((0.7, 0.5, 0.0, 20.0), (2.5, 2.0, 0.0, 40.0),
                              (1.5, 1.0, math.pi, 20.0)):
            uc = evaluate_sides(cfg("u-capital", b=b, z=(zr, zth), t=t))
            ul = evaluate_sides(cfg("u-lower", b=b, z=(zr, zth), t=t))
            dev = (uc.rhs / ul.rhs).ratio_deviation(uc.lhs / ul.lhs)
            bound = (uc.rel_discrepancy + ul.rel_discrepancy) * 1.0001
            assert dev <= bound


class TestGammaRatio:
    def test_collapses_at_b_two(self, dd):
        # every coefficient beyond d_0 vanishes at b = 2, so the asymptotic
        # statement becomes an identity
        for u in (10.0, 20.0, 40.0):
            r = gamma_ratio_check(2.0, u, 3, dd)
            assert r.rel_discrepancy <= 1e-12

    def test_generic_parameter(self, dd):
        r = gamma_ratio_check(1.5, 20.0, 3, dd)
        assert r.rel_discrepancy < 1e-10
        ratio = (gamma_ratio_check(1.5, 20.0, 3, dd).rel_discrepancy
                 / gamma_ratio_check(1.5, 40.0, 3, dd).rel_discrepancy)
        # first omitted term is u^(-2*order-2), so halving u gains 2^8
        assert 128.0 < ratio < 512.0

    def test_validation(self, dd):
        with pytest.raises(DomainError):
            gamma_ratio_check(1.5, -1.0, 3, dd)
        with pytest.raises(DomainError):
            gamma_ratio_check(1.5, 20.0, -1, dd)


class TestDecaySweep:
    def test_slopes_near_minus_two_n(self):
        grid = [cfg("m", t=t, order=n)
                for n in (1, 2, 3) for t in (10.0, 20.0, 40.0)]
        result = decay_sweep(grid)
        assert len(result.rows) == 9
        assert all(row.status == "ok" for row in result.rows)
        for n in (1, 2, 3):
            key = sweep_group_key(cfg("m", order=n))
            slope = result.slopes[key]
            assert abs(slope - (-2.0 * n)) < 0.2 * n

    def test_single_t_gives_no_fit(self):
        result = decay_sweep([cfg("m")])
        assert len(result.rows) == 1
        assert result.rows[0].status == "ok"
        assert result.slopes == {}

    def test_failures_recorded_per_row(self):
        # integer b forces the connection route, which rejects it
        grid = [cfg("m"), cfg("u-capital", b=2.0, z=(1.0, 2.5 * math.pi))]
        result = decay_sweep(grid)
        assert result.rows[0].status == "ok"
        assert result.rows[1].status == "error:DomainError"
        assert result.rows[1].result is None

    def test_empty_grid_rejected(self):
        with pytest.raises(DomainError):
            decay_sweep([])


class TestAcceptanceGrid:
    def test_shape_and_order(self):
        grid = acceptance_grid("m")
        assert len(grid) == 648
        assert all(c.variant == "m" for c in grid)
        assert grid[0].b == 0.7 and grid[0].z.r == 0.5 and grid[0].t == 10.0
        assert grid[1].t == 20.0  # t varies fastest
        assert {c.order for c in grid} == {1, 2, 3}
        assert all(c.prec.mode == "dd" for c in grid)

    def test_variants_validated(self):
        with pytest.raises(DomainError):
            acceptance_grid("bogus")
        for variant in VARIANTS:
            assert len(acceptance_grid(variant)) == 648
