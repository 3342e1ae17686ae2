"""Merging per-wavenumber pairs into the full two-layer sloshing spectrum.

Every membrane level contributes one minus-branch and one plus-branch entry;
the merged list is sorted by eigenvalue.  The distribution function counts
eigenvalues (multiplicities included) and its growth follows the Weyl-type
law with the stratification prefactor 4/(ρ−1)² + 1.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .dispersion import ContainerGeometry, Stratification, homogeneous_eigenvalue, two_layer_pair
from .errors import NumericalFaultError, TruncationWarning, ValidationError
from .membrane import Tabulated, membrane_spectrum

#: safety factor on the completeness wavenumber bound
K_BOUND_MARGIN = 1.25


@dataclass(frozen=True)
class SpectrumEntry:
    nu: float
    branch: str  # "minus" | "plus"
    k_squared: float
    multiplicity: int


@dataclass(frozen=True)
class SloshingSpectrum:
    """Sorted two-layer spectrum, complete up to ``nu_max``."""

    entries: tuple[SpectrumEntry, ...]
    nu_max: float
    truncated: bool = False

    def count_upto(self, nu: float) -> int:
        return sum(e.multiplicity for e in self.entries if e.nu <= nu)


def _completeness_k_bound(nu_max: float, rho: float) -> float:
    # Lemma-1 slopes: nu ~ min((rho-1)/2, 1) * k, with margin for pre-asymptotic dips
    return nu_max * max(2.0 / (rho - 1.0), 1.0) * K_BOUND_MARGIN


def enumerate_spectrum(
    geom: ContainerGeometry, strat: Stratification, nu_max: float
) -> SloshingSpectrum:
    """All two-layer eigenvalues ν ≤ nu_max with branch and multiplicity.

    Membrane levels are enumerated up to the Lemma-1 wavenumber bound with a
    1.25 safety margin; the bound is then verified by checking that the
    smallest excluded minus-branch eigenvalue exceeds ``nu_max`` and extended
    if it does not.  Equal-ν collisions between branches stay distinct.
    """
    if not (nu_max > 0.0):
        raise ValidationError("nu_max must be positive")
    if geom.is_infinite:
        raise ValidationError("spectrum enumeration requires finite depth")
    strat.validate_against(geom)

    cs = geom.cross_section
    k_bound = _completeness_k_bound(nu_max, strat.rho)
    truncated = False

    for _ in range(60):
        # peek past the bound so the completeness guard has a level to test
        peek = membrane_spectrum(cs, (k_bound * 1.3) ** 2)
        inside = [lv for lv in peek if lv.k <= k_bound]
        beyond = [lv for lv in peek if lv.k > k_bound]
        if not beyond:
            if isinstance(cs, Tabulated):
                truncated = True
                warnings.warn(
                    "tabulated spectrum ends below the completeness bound "
                    f"k <= {k_bound:.6g}; enumeration may miss eigenvalues",
                    TruncationWarning,
                    stacklevel=2,
                )
                break
            k_bound *= K_BOUND_MARGIN
            continue
        first_excluded = two_layer_pair(beyond[0].k, geom, strat).nu_minus
        if first_excluded > nu_max:
            break
        k_bound *= K_BOUND_MARGIN
    else:
        raise NumericalFaultError("completeness bound did not stabilise")

    entries: list[SpectrumEntry] = []
    for lv in inside:
        pair = two_layer_pair(lv.k, geom, strat)
        if pair.nu_minus <= nu_max:
            entries.append(SpectrumEntry(pair.nu_minus, "minus", lv.k_squared, lv.multiplicity))
        if pair.nu_plus <= nu_max:
            entries.append(SpectrumEntry(pair.nu_plus, "plus", lv.k_squared, lv.multiplicity))
    entries.sort(key=lambda e: (e.nu, e.k_squared, e.branch))
    return SloshingSpectrum(tuple(entries), nu_max, truncated)


def distribution_function(spec: SloshingSpectrum, nu: float) -> int:
    """𝒩(ν): number of eigenvalues ≤ ν, multiplicities included."""
    if nu > spec.nu_max:
        raise ValidationError(
            f"nu={nu} exceeds the enumerated range nu_max={spec.nu_max}"
        )
    return spec.count_upto(nu)


def weyl_prefactor(rho: float) -> float:
    return 4.0 / (rho - 1.0) ** 2 + 1.0


def weyl_ratio(
    geom: ContainerGeometry,
    strat: Stratification,
    nu_list,
    spectrum: SloshingSpectrum | None = None,
) -> list[float]:
    """𝒩(ν) divided by the two-layer Weyl law [4/(ρ−1)² + 1]·|D|ν²/(4π).

    Tends to 1 as ν grows.  ``nu_list`` must be increasing; a pre-enumerated
    spectrum covering max(nu_list) can be supplied to avoid recomputation.
    """
    nu_list = list(nu_list)
    if any(b <= a for a, b in zip(nu_list, nu_list[1:])):
        raise ValidationError("nu_list must be increasing")
    if spectrum is None:
        spectrum = enumerate_spectrum(geom, strat, nu_list[-1])
    area = geom.cross_section.area
    pref = weyl_prefactor(strat.rho)
    out = []
    for nu in nu_list:
        predicted = pref * area * nu * nu / (4.0 * math.pi)
        out.append(distribution_function(spectrum, nu) / predicted)
    return out


def homogeneous_weyl_ratio(geom: ContainerGeometry, nu_list) -> list[float]:
    """Same ratio for the homogeneous spectrum {ν^W}: law |D|ν²/(4π).

    The stratification term 4/(ρ−1)² is absent for a homogeneous fluid.
    """
    nu_list = list(nu_list)
    if any(b <= a for a, b in zip(nu_list, nu_list[1:])):
        raise ValidationError("nu_list must be increasing")
    if geom.is_infinite:
        raise ValidationError("finite depth required")
    nu_max = nu_list[-1]
    # nu^W < k, so enumerating k up to nu_max/tanh(nu_max*d) with margin suffices
    k_bound = nu_max / math.tanh(nu_max * geom.depth) * 1.05 + 1.0
    levels = membrane_spectrum(geom.cross_section, k_bound**2)
    nus = sorted(
        (homogeneous_eigenvalue(lv.k, geom.depth), lv.multiplicity) for lv in levels
    )
    area = geom.cross_section.area
    out = []
    for nu in nu_list:
        count = sum(mult for val, mult in nus if val <= nu)
        out.append(count / (area * nu * nu / (4.0 * math.pi)))
    return out
