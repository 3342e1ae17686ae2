import math

import numpy as np
import pytest
from scipy.special import jnp_zeros, jvp

from slosh2.errors import DomainError, UnsupportedVariantError, ValidationError
from slosh2.membrane import (
    Disc,
    MembraneEigenvalue,
    Rectangle,
    Tabulated,
    bessel_derivative_zeros,
    cluster_eigenvalues,
    evaluate_mode,
    evaluate_mode_gradient,
    fd_neumann_oracle,
    membrane_spectrum,
    mode_values,
)
from slosh2.quadrature import cross_section_nodes

SQUARE = Rectangle(math.pi, math.pi)

# first positive zero of J_1' (Abramowitz & Stegun table value)
J1P_FIRST_ZERO = 1.8411837813406593


class TestRectangleSpectrum:
    def test_square_levels_up_to_five(self):
        levels = membrane_spectrum(SQUARE, 5.0)
        got = [(round(lv.k_squared, 12), lv.multiplicity) for lv in levels]
        assert got == [(1.0, 2), (2.0, 1), (4.0, 2), (5.0, 2)]

    def test_level_formula_anisotropic(self):
        levels = membrane_spectrum(Rectangle(1.0, 2.0), 60.0)
        expected = sorted(
            math.pi**2 * (m**2 + n**2 / 4.0)
            for m in range(4)
            for n in range(6)
            if (m, n) != (0, 0)
        )
        expected = [k2 for k2 in expected if k2 <= 60.0]
        flat = [lv.k_squared for lv in levels for _ in range(lv.multiplicity)]
        assert flat == pytest.approx(expected, rel=1e-12)

    def test_empty_below_fundamental(self):
        assert membrane_spectrum(SQUARE, 0.5) == []

    def test_mode_ids_deterministic(self):
        a = membrane_spectrum(SQUARE, 5.0)
        b = membrane_spectrum(SQUARE, 5.0)
        assert [lv.mode_ids for lv in a] == [lv.mode_ids for lv in b]


class TestBesselDerivativeZeros:
    @pytest.mark.parametrize("m", [0, 1, 2, 5, 11])
    def test_against_scipy(self, m):
        ours = bessel_derivative_zeros(m, 40.0)
        ref = [z for z in jnp_zeros(m, 20) if z <= 40.0]
        assert ours == pytest.approx(ref, rel=1e-12)

    def test_first_zero_literature_value(self):
        roots = bessel_derivative_zeros(1, 2.0)
        assert roots[0] == pytest.approx(J1P_FIRST_ZERO, rel=1e-12)

    def test_strictly_increasing_in_s(self):
        for m in (0, 1, 3):
            roots = bessel_derivative_zeros(m, 60.0)
            assert all(b > a for a, b in zip(roots, roots[1:]))

    def test_sign_change_confirms_each_root(self):
        for m in (0, 2, 4):
            for root in bessel_derivative_zeros(m, 30.0):
                eps = 1e-6 * root
                assert jvp(m, root - eps, 1) * jvp(m, root + eps, 1) < 0.0


class TestDiscSpectrum:
    def test_fundamental_is_j1prime_with_multiplicity_two(self):
        levels = membrane_spectrum(Disc(1.0), 4.0)
        assert len(levels) == 1
        assert math.sqrt(levels[0].k_squared) == pytest.approx(J1P_FIRST_ZERO, rel=1e-12)
        assert levels[0].multiplicity == 2
        assert levels[0].mode_ids == ("1,1,cos", "1,1,sin")

    def test_radius_scaling(self):
        unit = membrane_spectrum(Disc(1.0), 30.0)
        scaled = membrane_spectrum(Disc(2.0), 30.0 / 4.0)
        assert [lv.k_squared for lv in scaled] == pytest.approx(
            [lv.k_squared / 4.0 for lv in unit], rel=1e-12
        )

    def test_all_levels_below_bound_present(self):
        # the m-sweep must not stop early: check against a scipy-built list
        bound = 60.0
        ref = sorted(
            {round(float(z * z), 9) for m in range(12) for z in jnp_zeros(m, 8) if z * z <= bound}
        )
        got = sorted({round(lv.k_squared, 9) for lv in membrane_spectrum(Disc(1.0), bound)})
        assert got == pytest.approx(ref, rel=1e-9)


class TestEvaluateMode:
    def test_cos_vanishes_at_half_side(self):
        assert evaluate_mode(SQUARE, "1,0", (math.pi / 2, 1.2)) == pytest.approx(0.0, abs=1e-14)

    def test_normalised_amplitude_at_corner(self):
        assert evaluate_mode(SQUARE, "1,0", (0.0, 0.0)) == pytest.approx(math.sqrt(2.0))

    def test_disc_azimuthal_mode_vanishes_at_centre(self):
        assert evaluate_mode(Disc(1.0), "1,1,cos", (0.0, 0.0)) == 0.0

    def test_point_outside_domain(self):
        with pytest.raises(DomainError):
            evaluate_mode(SQUARE, "1,0", (4.0, 0.1))
        with pytest.raises(DomainError):
            evaluate_mode(Disc(1.0), "1,1,cos", (1.5, 0.0))

    def test_tabulated_has_no_modes(self):
        tab = Tabulated((MembraneEigenvalue(1.0, 1, ("t0",)),), area=1.0)
        with pytest.raises(UnsupportedVariantError):
            evaluate_mode(tab, "t0", (0.0, 0.0))

    @pytest.mark.parametrize(
        "cs,mode",
        [
            (SQUARE, "1,0"),
            (SQUARE, "2,1"),
            (Disc(1.0), "1,1,cos"),
            (Disc(1.0), "0,1"),
            (Disc(1.0), "2,1,sin"),
        ],
    )
    def test_normalisation_and_mean_zero(self, cs, mode):
        pts, w = cross_section_nodes(cs, 128)
        v = mode_values(cs, mode, pts)
        assert float(np.dot(w, v * v)) == pytest.approx(cs.area, rel=1e-7)
        assert abs(float(np.dot(w, v))) <= 1e-8 * cs.area

    def test_orthogonality_of_degenerate_pair(self):
        pts, w = cross_section_nodes(Disc(1.0), 128)
        vc = mode_values(Disc(1.0), "1,1,cos", pts)
        vs = mode_values(Disc(1.0), "1,1,sin", pts)
        assert abs(float(np.dot(w, vc * vs))) <= 1e-10 * Disc(1.0).area

    @pytest.mark.parametrize(
        "cs,mode,x",
        [
            (SQUARE, "2,1", (0.7, 1.9)),
            (Disc(1.0), "1,1,cos", (0.3, 0.4)),
            (Disc(1.0), "0,2", (0.5, -0.2)),
            (Disc(1.0), "3,1,sin", (-0.4, 0.35)),
        ],
    )
    def test_gradient_matches_finite_differences(self, cs, mode, x):
        # the one place derivatives are allowed to meet finite differences
        g = evaluate_mode_gradient(cs, mode, x)
        s = 1e-6
        fd = (
            (evaluate_mode(cs, mode, (x[0] + s, x[1])) - evaluate_mode(cs, mode, (x[0] - s, x[1]))) / (2 * s),
            (evaluate_mode(cs, mode, (x[0], x[1] + s)) - evaluate_mode(cs, mode, (x[0], x[1] - s))) / (2 * s),
        )
        assert g == pytest.approx(fd, rel=2e-6, abs=1e-9)


class TestFdOracle:
    def test_square_fundamental_grid64(self):
        vals = fd_neumann_oracle(SQUARE, 64, 1)
        assert abs(vals[0] - 1.0) < 1e-3

    def test_second_order_convergence(self):
        e64 = abs(fd_neumann_oracle(SQUARE, 64, 1)[0] - 1.0)
        e128 = abs(fd_neumann_oracle(SQUARE, 128, 1)[0] - 1.0)
        assert e64 / e128 == pytest.approx(4.0, rel=0.15)

    def test_unit_square_multiplicity_cluster(self):
        vals = fd_neumann_oracle(Rectangle(1.0, 1.0), 64, 2)
        assert all(abs(v - math.pi**2) < 1e-2 * math.pi**2 for v in vals)
        clusters = cluster_eigenvalues(vals, rel_tol=1e-6)
        assert len(clusters) == 1 and clusters[0][1] == 2

    def test_rejects_non_rectangle(self):
        with pytest.raises(UnsupportedVariantError):
            fd_neumann_oracle(Disc(1.0), 32, 1)

    def test_rejects_small_grid(self):
        with pytest.raises(ValidationError):
            fd_neumann_oracle(SQUARE, 8, 1)


class TestValidation:
    def test_positive_dimensions_required(self):
        with pytest.raises(ValidationError):
            Rectangle(-1.0, 1.0)
        with pytest.raises(ValidationError):
            Disc(0.0)

    def test_tabulated_sorted_strictly(self):
        entries = (
            MembraneEigenvalue(2.0, 1, ("a",)),
            MembraneEigenvalue(1.0, 1, ("b",)),
        )
        with pytest.raises(ValidationError):
            Tabulated(entries, area=1.0)

    def test_tabulated_spectrum_filter(self):
        tab = Tabulated((MembraneEigenvalue(1.0, 1, ("a",)),), area=1.0)
        assert membrane_spectrum(tab, 0.5) == []
        assert len(membrane_spectrum(tab, 2.0)) == 1

    def test_zero_k_squared_rejected(self):
        with pytest.raises(ValidationError):
            MembraneEigenvalue(0.0, 1, ("a",))
