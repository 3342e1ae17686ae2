import math

import numpy as np
import pytest

from slosh2.dispersion import (
    ContainerGeometry,
    Stratification,
    asymptotic_pair,
    discriminant_minimum_check,
    homogeneous_eigenvalue,
    infinite_depth_pair,
    quadratic_residual,
    two_layer_pair,
)
from slosh2.errors import ValidationError
from slosh2.membrane import Rectangle

SQUARE = Rectangle(math.pi, math.pi)

# 40-digit quadratic roots (mpmath), frozen: (k, d, h, rho) -> (nu_minus, nu_plus)
HIGH_PRECISION_ROOTS = {
    (1.0, 1.0, 0.5, 2.0): (0.1835210502564795688, 0.9588701836771677634),
    (2.5, 1.7, 0.9, 1.3): (0.3627526883147901085, 2.508375665439511233),
    (0.3, 2.0, 1.1, 7.0): (0.08073215656718158021, 0.5181482507365949474),
    (50.0, 1.0, 0.5, 3.0): (49.99999999901797407, 50.00000000098202593),
    (12.0, 0.7, 0.35, 1.05): (0.2998616536314018946, 12.00013710246194931),
}


def geom(d=1.0):
    return ContainerGeometry(SQUARE, d)


class TestHomogeneousEigenvalue:
    def test_infinite_depth(self):
        assert homogeneous_eigenvalue(1.0, math.inf) == 1.0

    def test_finite_depth(self):
        assert homogeneous_eigenvalue(1.0, 1.0) == pytest.approx(math.tanh(1.0), rel=1e-15)

    def test_deep_saturation_without_overflow(self):
        assert homogeneous_eigenvalue(10.0, 10.0) == pytest.approx(10.0, rel=1e-12)
        assert math.isfinite(homogeneous_eigenvalue(700.0, 1.0))


class TestTwoLayerPair:
    @pytest.mark.parametrize("cfg,expected", sorted(HIGH_PRECISION_ROOTS.items()))
    def test_against_high_precision_roots(self, cfg, expected):
        k, d, h, rho = cfg
        pair = two_layer_pair(k, geom(d), Stratification(rho, h))
        assert pair.nu_minus == pytest.approx(expected[0], rel=1e-13)
        assert pair.nu_plus == pytest.approx(expected[1], rel=1e-13)

    def test_near_homogeneous_limit(self):
        # at rho -> 1+ the roots collapse to 0 and k tanh kd
        pair = two_layer_pair(1.0, geom(1.0), Stratification(1.0 + 1e-10, 0.5))
        assert pair.nu_minus == pytest.approx(0.0, abs=1e-10)
        assert pair.nu_plus == pytest.approx(math.tanh(1.0), rel=1e-9)

    def test_roots_satisfy_quadratic(self):
        strat = Stratification(2.0, 0.5)
        pair = two_layer_pair(1.0, geom(1.0), strat)
        for nu in (pair.nu_minus, pair.nu_plus):
            assert abs(quadratic_residual(nu, 1.0, geom(1.0), strat)) < 1e-12

    def test_deep_container_limits_at_rho_three(self):
        strat = Stratification(3.0, 25.0)
        pair = two_layer_pair(1.0, geom(50.0), strat)
        assert pair.nu_minus == pytest.approx(1.0, rel=1e-9)
        assert pair.nu_plus == pytest.approx(1.0, rel=1e-9)

    def test_rejects_infinite_depth(self):
        with pytest.raises(ValidationError):
            two_layer_pair(1.0, ContainerGeometry(SQUARE, math.inf), Stratification(2.0, 0.5))

    def test_rejects_interface_outside_container(self):
        with pytest.raises(ValidationError):
            two_layer_pair(1.0, geom(1.0), Stratification(2.0, 1.5))


class TestQuadraticResidual:
    def test_zero_nu_gives_scaled_constant_term(self):
        strat = Stratification(2.0, 0.5)
        got = quadratic_residual(0.0, 1.0, geom(1.0), strat)
        expected = (2.0 - 1.0) * math.sinh(0.5) ** 2 / math.cosh(1.0)
        assert got == pytest.approx(expected, rel=1e-14)
        assert got > 0.0

    def test_homogeneous_eigenvalue_lies_between_roots(self):
        strat = Stratification(2.0, 0.5)
        nu_w = homogeneous_eigenvalue(1.0, 1.0)
        assert quadratic_residual(nu_w, 1.0, geom(1.0), strat) < 0.0

    def test_stress_grid_residuals_and_ordering(self):
        g = geom(1.0)
        slack = 1e-12
        for kd in np.geomspace(0.1, 700.0, 15):
            for f in np.linspace(0.01, 0.99, 8):
                for rho in 1.0 + np.geomspace(1e-3, 49.0, 8):
                    strat = Stratification(float(rho), float(f))
                    pair = two_layer_pair(float(kd), g, strat)
                    nu_w = homogeneous_eigenvalue(float(kd), 1.0)
                    assert pair.disc_scaled > 0.0
                    assert math.isfinite(pair.nu_plus)
                    for nu in (pair.nu_minus, pair.nu_plus):
                        assert abs(quadratic_residual(nu, float(kd), g, strat)) <= 1e-11
                    assert 0.0 < pair.nu_minus <= nu_w * (1.0 + slack)
                    assert pair.nu_plus >= nu_w * (1.0 - slack)
                    assert pair.nu_minus <= kd * math.tanh(kd * f) * (1.0 + slack)


class TestDiscriminantMinimum:
    def test_frozen_value(self):
        rho_star, dmin = discriminant_minimum_check(1.0, geom(1.0), 0.5)
        assert rho_star == pytest.approx(1.42710453406814518, rel=1e-14)
        assert dmin == pytest.approx(0.5535738372081680423, rel=1e-14)

    def test_golden_section_oracle(self):
        # independent 1-d minimisation of the scaled discriminant over rho
        k, d, h = 1.0, 1.0, 0.5
        g = geom(d)

        def disc(rho):
            return two_layer_pair(k, g, Stratification(rho, h)).disc_scaled

        invphi = (math.sqrt(5.0) - 1.0) / 2.0
        a, b = 1.0 + 1e-9, 100.0
        c, e = b - invphi * (b - a), a + invphi * (b - a)
        fc, fe = disc(c), disc(e)
        while b - a > 1e-7:
            if fc < fe:
                b, e, fe = e, c, fc
                c = b - invphi * (b - a)
                fc = disc(c)
            else:
                a, c, fc = c, e, fe
                e = a + invphi * (b - a)
                fe = disc(e)
        rho_star, dmin = discriminant_minimum_check(k, g, h)
        assert 0.5 * (a + b) == pytest.approx(rho_star, abs=1e-6)
        assert disc(0.5 * (a + b)) == pytest.approx(dmin, abs=1e-9)

    def test_minimum_positive_everywhere_representable(self):
        # positive wherever 4 sinh kh sinh k(d-h) / (cosh kd cosh^2 kh) is
        # representable in doubles, i.e. kh below ~350
        for kd in (0.1, 1.0, 30.0, 700.0):
            for f in (0.01, 0.5, 0.99):
                if kd * f > 350.0:
                    continue
                _, dmin = discriminant_minimum_check(kd, geom(1.0), f)
                assert dmin > 0.0

    def test_minimum_underflows_beyond_double_range(self):
        # mathematically positive but ~1e-602; correctly rounds to zero
        _, dmin = discriminant_minimum_check(700.0, geom(1.0), 0.99)
        assert dmin == 0.0

    def test_vanishes_as_interface_meets_bottom(self):
        _, d1 = discriminant_minimum_check(1.0, geom(1.0), 1.0 - 1e-4)
        _, d2 = discriminant_minimum_check(1.0, geom(1.0), 1.0 - 1e-8)
        assert d2 < d1 < 1e-3


class TestAsymptoticPair:
    def test_rho_three_degenerate(self):
        assert asymptotic_pair(2.0, 3.0) == (2.0, 2.0)

    def test_rho_above_three(self):
        assert asymptotic_pair(1.0, 5.0) == (1.0, 2.0)

    def test_rho_below_three(self):
        assert asymptotic_pair(1.0, 2.0) == (0.5, 1.0)

    @pytest.mark.parametrize("rho", [2.0, 3.0, 5.0])
    def test_exponential_approach(self, rho):
        strat_h = 0.5
        g = geom(1.0)
        prev = None
        k = 1.0
        while k <= 512.0:
            pair = two_layer_pair(k, g, Stratification(rho, strat_h))
            lim_m, lim_p = asymptotic_pair(k, rho)
            err = max(abs(pair.nu_minus - lim_m), abs(pair.nu_plus - lim_p)) / k
            if prev is not None:
                assert err <= prev or prev < 1e-12, (rho, k)
            if k >= 64.0:
                assert err < 1e-6
            prev = err
            k *= 2.0


class TestMonotonicityInRho:
    def test_both_branches_increase(self):
        rng = np.random.default_rng(3)
        g = geom(1.0)
        for _ in range(25):
            k = float(rng.uniform(0.2, 10.0))
            f = float(rng.uniform(0.05, 0.95))
            rhos = 1.0 + np.geomspace(1e-2, 40.0, 50)
            pairs = [two_layer_pair(k, g, Stratification(float(r), f)) for r in rhos]
            minus = [p.nu_minus for p in pairs]
            plus = [p.nu_plus for p in pairs]
            assert all(b > a for a, b in zip(minus, minus[1:]))
            assert all(b > a for a, b in zip(plus, plus[1:]))


class TestInfiniteDepth:
    def test_equals_k_for_any_stratification(self):
        assert infinite_depth_pair(1.5, Stratification(7.0, 3.0)).nu == 1.5
        assert infinite_depth_pair(1.5, Stratification(1.01, 0.1)).nu == 1.5

    def test_matches_homogeneous(self):
        res = infinite_depth_pair(2.0, Stratification(2.0, 1.0))
        assert res.nu == homogeneous_eigenvalue(2.0, math.inf)
        assert res.homogeneous_coincident
