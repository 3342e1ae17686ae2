import math
import warnings

import pytest

from slosh2.dispersion import (
    ContainerGeometry,
    Stratification,
    homogeneous_eigenvalue,
    two_layer_pair,
)
from slosh2.enumeration import (
    distribution_function,
    enumerate_spectrum,
    homogeneous_weyl_ratio,
    weyl_prefactor,
    weyl_ratio,
)
from slosh2.errors import TruncationWarning, ValidationError
from slosh2.membrane import MembraneEigenvalue, Rectangle, Tabulated, membrane_spectrum

SQUARE = Rectangle(math.pi, math.pi)
GEOM = ContainerGeometry(SQUARE, 1.0)
STRAT = Stratification(2.0, 0.5)


def brute_force_entries(geom, strat, nu_max, k_bound):
    """Oracle: enumerate a generous membrane range and keep everything <= nu_max."""
    out = []
    for lv in membrane_spectrum(geom.cross_section, k_bound**2):
        pair = two_layer_pair(lv.k, geom, strat)
        if pair.nu_minus <= nu_max:
            out.append((pair.nu_minus, "minus", lv.k_squared, lv.multiplicity))
        if pair.nu_plus <= nu_max:
            out.append((pair.nu_plus, "plus", lv.k_squared, lv.multiplicity))
    out.sort()
    return out


class TestEnumerateSpectrum:
    def test_empty_below_fundamental(self):
        nu1 = two_layer_pair(1.0, GEOM, STRAT).nu_minus
        spec = enumerate_spectrum(GEOM, STRAT, nu1 * 0.9)
        assert spec.entries == ()

    def test_matches_brute_force(self):
        nu_max = two_layer_pair(1.0, GEOM, STRAT).nu_plus
        spec = enumerate_spectrum(GEOM, STRAT, nu_max)
        oracle = brute_force_entries(GEOM, STRAT, nu_max, k_bound=12.0)
        got = [(e.nu, e.branch, e.k_squared, e.multiplicity) for e in spec.entries]
        assert len(got) == len(oracle)
        for g, o in zip(got, oracle):
            assert g[0] == pytest.approx(o[0], rel=1e-14)
            assert g[1:] == o[1:]

    def test_exactly_one_plus_level_below_first_plus(self):
        nu_max = two_layer_pair(1.0, GEOM, STRAT).nu_plus
        spec = enumerate_spectrum(GEOM, STRAT, nu_max)
        plus_entries = [e for e in spec.entries if e.branch == "plus"]
        assert len(plus_entries) == 1
        assert plus_entries[0].multiplicity == 2

    def test_minus_branch_monotone_in_k(self):
        # empirical observation, not a theorem: sorted by k equals sorted by nu
        spec = enumerate_spectrum(GEOM, STRAT, 8.0)
        minus = [(e.k_squared, e.nu) for e in spec.entries if e.branch == "minus"]
        by_k = sorted(minus)
        assert [nu for _, nu in by_k] == sorted(nu for _, nu in minus)

    def test_sorted_by_nu(self):
        spec = enumerate_spectrum(GEOM, STRAT, 10.0)
        nus = [e.nu for e in spec.entries]
        assert nus == sorted(nus)

    def test_small_rho_uses_larger_k_bound(self):
        strat = Stratification(1.05, 0.5)
        nu_max = 0.5
        spec = enumerate_spectrum(GEOM, strat, nu_max)
        oracle = brute_force_entries(GEOM, strat, nu_max, k_bound=nu_max * 50.0)
        assert len(spec.entries) == len(oracle)

    def test_tabulated_truncation_warns(self):
        entries = tuple(
            MembraneEigenvalue(float(k2), 1, (f"t{k2}",)) for k2 in (1.0, 2.0, 3.0)
        )
        geom = ContainerGeometry(Tabulated(entries, area=math.pi**2), 1.0)
        with pytest.warns(TruncationWarning):
            spec = enumerate_spectrum(geom, STRAT, 5.0)
        assert spec.truncated


class TestDistributionFunction:
    def test_zero_below_fundamental(self):
        spec = enumerate_spectrum(GEOM, STRAT, 2.0)
        nu1 = spec.entries[0].nu
        assert distribution_function(spec, nu1 * 0.99) == 0

    def test_counts_fundamental_multiplicity(self):
        spec = enumerate_spectrum(GEOM, STRAT, 2.0)
        assert distribution_function(spec, spec.entries[0].nu) == 2

    def test_window_counts(self):
        spec = enumerate_spectrum(GEOM, STRAT, 3.0)
        n1 = distribution_function(spec, 1.0)
        n2 = distribution_function(spec, 3.0)
        in_window = sum(e.multiplicity for e in spec.entries if 1.0 < e.nu <= 3.0)
        assert n2 - n1 == in_window

    def test_nondecreasing(self):
        spec = enumerate_spectrum(GEOM, STRAT, 5.0)
        values = [distribution_function(spec, nu) for nu in (0.1, 0.5, 1.0, 3.0, 5.0)]
        assert values == sorted(values)

    def test_out_of_range(self):
        spec = enumerate_spectrum(GEOM, STRAT, 2.0)
        with pytest.raises(ValidationError):
            distribution_function(spec, 2.5)


class TestWeylRatio:
    def test_converges_to_one(self):
        ratios = weyl_ratio(GEOM, STRAT, [10.0, 20.0, 30.0])
        assert abs(ratios[-1] - 1.0) < 0.1
        assert abs(ratios[-1] - 1.0) <= abs(ratios[0] - 1.0) + 0.02

    def test_homogeneous_variant(self):
        ratios = homogeneous_weyl_ratio(GEOM, [15.0, 30.0])
        assert abs(ratios[-1] - 1.0) < 0.1

    def test_singular_limit_prefactor(self):
        # rho -> 1+ is a singular limit: the two-layer law diverges instead of
        # reducing to the homogeneous one, so the homogeneous count measured
        # against the two-layer prediction collapses to zero; and below the
        # two-layer fundamental the computed ratio is finite (exactly zero)
        nu = 10.0
        hom_count = homogeneous_weyl_ratio(GEOM, [nu])[0] * (SQUARE.area * nu**2 / (4 * math.pi))
        for eps in (1e-2, 1e-3, 1e-4):
            pref = weyl_prefactor(1.0 + eps)
            assert pref > 4.0 / eps**2
            assert hom_count / (pref * SQUARE.area * nu**2 / (4 * math.pi)) < 0.01 * eps / 1e-2
        strat = Stratification(1.0 + 1e-3, 0.5)
        nu1 = two_layer_pair(1.0, GEOM, strat).nu_minus
        ratio = weyl_ratio(GEOM, strat, [nu1 * 0.5])[0]
        assert ratio == 0.0 and math.isfinite(ratio)

    def test_requires_increasing_nu(self):
        with pytest.raises(ValidationError):
            weyl_ratio(GEOM, STRAT, [2.0, 1.0])


class TestInterlacing:
    def test_every_entry_interlaces_with_homogeneous(self):
        spec = enumerate_spectrum(GEOM, STRAT, 8.0)
        for e in spec.entries:
            nu_w = homogeneous_eigenvalue(math.sqrt(e.k_squared), GEOM.depth)
            if e.branch == "minus":
                assert e.nu < nu_w
            else:
                assert e.nu > nu_w
