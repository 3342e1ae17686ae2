"""Per-wavenumber dispersion: homogeneous eigenvalue and the two-layer pair.

Each membrane eigenvalue k² of the cross-section turns into the homogeneous
sloshing eigenvalue ν^W = k tanh kd and, for a two-layer stratification, into
the two roots ν^(−) <= ν^(+) of the quadratic

    ν² cosh kd − ν k [sinh kd + (ρ−1) cosh kh sinh k(d−h)]
        + k² (ρ−1) sinh kh sinh k(d−h) = 0.

All hyperbolic combinations are evaluated in cosh(kd)-scaled form built from
decaying exponentials, so every intermediate stays bounded for k·d up to (and
beyond) 700.  With r = ρ−1 and

    t_d = tanh kd,
    P   = cosh kh sinh k(d−h) / cosh kd,
    Q   = sinh kh sinh k(d−h) / cosh kd,

the scaled coefficient and discriminant are b/cosh kd = t_d + rP and

    D/cosh² kd = P² (r − r*)² + 4 Q sech² kh,   r* = (2Q − P t_d) / P²,

which is the discriminant written around its minimum over ρ; both terms are
nonnegative, so the evaluation is cancellation-free (the naive b² − 4rQ·cosh
form loses every digit near r* once kh is a few dozen).  The larger root is
k(b̂ + √D̂)/2 and the smaller one comes from the root product
ν⁻ν⁺ = k² r Q, which is stable for all parameter values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NumericalFaultError, ValidationError

INFINITE = math.inf


@dataclass(frozen=True)
class ContainerGeometry:
    """Vertical-walled container: cross-section D and constant depth d.

    ``depth`` may be ``math.inf`` for the infinitely deep container.
    """

    cross_section: object
    depth: float

    def __post_init__(self):
        if not (self.depth > 0.0):
            raise ValidationError("container depth must be positive")

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.depth)


@dataclass(frozen=True)
class Stratification:
    """Density ratio ρ = ρ₂/ρ₁ > 1 and interface depth h > 0.

    The homogeneous fluid ρ = 1 is deliberately not representable here; it is
    served by :func:`homogeneous_eigenvalue`.
    """

    rho: float
    h: float

    def __post_init__(self):
        if not (self.rho > 1.0):
            raise ValidationError("density ratio must exceed 1 (homogeneous fluid is a separate path)")
        if not (self.h > 0.0):
            raise ValidationError("interface depth must be positive")

    def validate_against(self, geom: ContainerGeometry) -> None:
        if not geom.is_infinite and not (self.h < geom.depth):
            raise ValidationError("interface depth must lie strictly inside (0, d)")


@dataclass(frozen=True)
class SloshingPair:
    """The two sloshing eigenvalues produced by one membrane wavenumber k."""

    k: float
    nu_minus: float
    nu_plus: float
    b_scaled: float
    disc_scaled: float


@dataclass(frozen=True)
class InfiniteDepthResult:
    """Infinite-depth eigenvalue: ν = k for every stratification."""

    k: float
    nu: float
    homogeneous_coincident: bool = True


@dataclass(frozen=True)
class _ScaledParts:
    """Bounded building blocks for one (k, d, h) triple."""

    tanh_kd: float
    P: float  # cosh kh sinh k(d-h) / cosh kd
    Q: float  # sinh kh sinh k(d-h) / cosh kd
    sech2_kh: float
    tanh_kh: float


def _scaled_parts(k: float, d: float, h: float) -> _ScaledParts:
    a = k * h
    b = k * (d - h)
    c = k * d
    e2a = math.exp(-2.0 * a)
    e2b = math.exp(-2.0 * b)
    e2c = math.exp(-2.0 * c)
    den = 2.0 * (1.0 + e2c)
    P = (1.0 + e2a - e2b - e2c) / den
    Q = (1.0 - e2a - e2b + e2c) / den
    tanh_kd = (1.0 - e2c) / (1.0 + e2c)
    sech_kh = 2.0 * math.exp(-a) / (1.0 + e2a)
    tanh_kh = (1.0 - e2a) / (1.0 + e2a)
    return _ScaledParts(tanh_kd, P, Q, sech_kh * sech_kh, tanh_kh)


def _check_pair_inputs(k: float, geom: ContainerGeometry, strat: Stratification) -> None:
    if not (k > 0.0):
        raise ValidationError("wavenumber k must be positive")
    if geom.is_infinite:
        raise ValidationError("two-layer pair requires finite depth; see infinite_depth_pair")
    strat.validate_against(geom)


def homogeneous_eigenvalue(k: float, depth: float) -> float:
    """ν^W = k tanh(kd) for finite depth, k for infinite depth."""
    if not (k > 0.0):
        raise ValidationError("wavenumber k must be positive")
    if not (depth > 0.0):
        raise ValidationError("depth must be positive")
    if math.isinf(depth):
        return k
    return k * math.tanh(k * depth)


def two_layer_pair(k: float, geom: ContainerGeometry, strat: Stratification) -> SloshingPair:
    """Both roots ν^(±) of the dispersion quadratic for wavenumber k.

    Raises
    ------
    NumericalFaultError
        If the computed scaled discriminant is nonpositive.  The discriminant
        is positive for every admissible input, so this signals an internal
        fault, never a property of the data.
    """
    _check_pair_inputs(k, geom, strat)
    p = _scaled_parts(k, geom.depth, strat.h)
    r = strat.rho - 1.0
    b_scaled = p.tanh_kd + r * p.P
    r_star = (2.0 * p.Q - p.P * p.tanh_kd) / (p.P * p.P)
    disc_scaled = (p.P * (r - r_star)) ** 2 + 4.0 * p.Q * p.sech2_kh
    if not (disc_scaled > 0.0) or not math.isfinite(disc_scaled):
        raise NumericalFaultError(
            f"nonpositive scaled discriminant {disc_scaled} at k={k}, d={geom.depth}, "
            f"h={strat.h}, rho={strat.rho}"
        )
    sq = math.sqrt(disc_scaled)
    nu_plus = 0.5 * k * (b_scaled + sq)
    nu_minus = 2.0 * k * r * p.Q / (b_scaled + sq)  # root product / larger root
    return SloshingPair(k, nu_minus, nu_plus, b_scaled, disc_scaled)


def quadratic_residual(nu: float, k: float, geom: ContainerGeometry, strat: Stratification) -> float:
    """Dispersion quadratic at ν, divided by k² cosh kd (scale-free).

    Zero exactly when ν is a root; the constant term (ν = 0) equals
    (ρ−1) sinh kh sinh k(d−h) / cosh kd > 0.
    """
    _check_pair_inputs(k, geom, strat)
    p = _scaled_parts(k, geom.depth, strat.h)
    r = strat.rho - 1.0
    x = nu / k
    return x * x - x * (p.tanh_kd + r * p.P) + r * p.Q


def discriminant_minimum_check(k: float, geom: ContainerGeometry, h: float) -> tuple[float, float]:
    """Location and value of the discriminant minimum over the density ratio.

    Returns (ρ*, D_min/cosh² kd) where ρ* − 1 = (2 cosh kd sinh kh −
    sinh kd cosh kh)/(cosh² kh sinh k(d−h)) and the scaled minimum equals
    4 sinh kh sinh k(d−h)/(cosh kd cosh² kh) > 0.
    """
    if not (k > 0.0):
        raise ValidationError("wavenumber k must be positive")
    if geom.is_infinite:
        raise ValidationError("finite depth required")
    if not (0.0 < h < geom.depth):
        raise ValidationError("interface depth must lie strictly inside (0, d)")
    p = _scaled_parts(k, geom.depth, h)
    r_star = (2.0 * p.Q - p.P * p.tanh_kd) / (p.P * p.P)
    disc_min_scaled = 4.0 * p.Q * p.sech2_kh
    return 1.0 + r_star, disc_min_scaled


def asymptotic_pair(k: float, rho: float) -> tuple[float, float]:
    """Large-k limits of (ν^(−), ν^(+)): k(ρ+1 ∓ |ρ−3|)/4.

    The minus-branch limit is k for ρ >= 3 and (ρ−1)k/2 for ρ in (1, 3); the
    plus branch swaps the two.
    """
    if not (k > 0.0):
        raise ValidationError("wavenumber k must be positive")
    if not (rho > 1.0):
        raise ValidationError("density ratio must exceed 1")
    gap = abs(rho - 3.0)
    return 0.25 * k * (rho + 1.0 - gap), 0.25 * k * (rho + 1.0 + gap)


def infinite_depth_pair(k: float, strat: Stratification) -> InfiniteDepthResult:
    """Infinite-depth two-layer eigenvalue for wavenumber k.

    Coincides with the homogeneous spectrum: ν = k regardless of ρ and h.
    """
    if not (k > 0.0):
        raise ValidationError("wavenumber k must be positive")
    if not (strat.rho > 1.0):
        raise ValidationError("density ratio must exceed 1")
    return InfiniteDepthResult(k=k, nu=k)
