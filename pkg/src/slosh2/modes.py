"""Eigenmode construction and quadrature checks of the variational identities.

A mode is the product of a membrane eigenfunction v(x) and closed-form
vertical profiles

    u¹(x, y) = v(x) [A cosh k(y+h) + B sinh k(y+h)]   on D × (−h, 0),
    u²(x, y) = v(x) C cosh k(y+d)                     on D × (−d, −h),

with B = C sinh k(d−h) and A = C [cosh k(d−h) − ν⁻¹(ρ−1)k sinh k(d−h)].
Gradients are analytic throughout; quadrature is only ever a verification
tool, never the source of derivatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .dispersion import ContainerGeometry, Stratification
from .errors import (
    DomainError,
    NotAnEigenvalueError,
    ValidationError,
    ZeroDenominatorError,
)
from .membrane import evaluate_mode, mode_gradient_squared, mode_values
from .quadrature import cross_section_nodes, gauss2_nodes

#: scale-free tolerance on the free-surface closure identity
AC_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class ModeCoefficients:
    """Vertical-profile coefficients attached to one (ν, k) eigenpair."""

    A: float
    B: float
    C: float
    nu: float
    k: float


def ac_residual(mc: ModeCoefficients, geom: ContainerGeometry, strat: Stratification) -> float:
    """Scale-free residual of the free-surface closure identity.

    The identity A(k sinh kh − ν cosh kh) + C sinh k(d−h)(k cosh kh − ν sinh kh)
    vanishes exactly when ν is a dispersion root.
    """
    k, nu, h = mc.k, mc.nu, strat.h
    t1 = mc.A * (k * math.sinh(k * h) - nu * math.cosh(k * h))
    t2 = mc.C * math.sinh(k * (geom.depth - h)) * (
        k * math.cosh(k * h) - nu * math.sinh(k * h)
    )
    scale = max(abs(t1), abs(t2), 1e-300)
    return (t1 + t2) / scale


def coefficients(
    nu: float,
    k: float,
    geom: ContainerGeometry,
    strat: Stratification,
    C: float = 1.0,
) -> ModeCoefficients:
    """Mode coefficients (A, B, C) for the eigenvalue ν at wavenumber k.

    Raises
    ------
    NotAnEigenvalueError
        If the closure residual exceeds ``AC_RESIDUAL_TOL``, i.e. ν is not a
        dispersion root for this configuration.
    """
    if C == 0.0:
        raise ValidationError("scaling constant C must be nonzero")
    if not (nu > 0.0):
        raise ValidationError("eigenvalue must be positive")
    if geom.is_infinite:
        raise ValidationError("finite depth required")
    strat.validate_against(geom)
    beta = k * (geom.depth - strat.h)
    B = C * math.sinh(beta)
    A = C * (math.cosh(beta) - (strat.rho - 1.0) * k * math.sinh(beta) / nu)
    mc = ModeCoefficients(A, B, C, nu, k)
    res = ac_residual(mc, geom, strat)
    if abs(res) > AC_RESIDUAL_TOL:
        raise NotAnEigenvalueError(
            f"closure residual {res:.3e} exceeds {AC_RESIDUAL_TOL:.0e}; "
            f"nu={nu} is not a root for k={k}"
        )
    return mc


@dataclass(frozen=True)
class PotentialPair:
    """Evaluable potentials on the upper and lower layers.

    ``w1``/``w2`` are the vertical profiles (vectorised over numpy arrays),
    ``dw1``/``dw2`` their analytic y-derivatives.  The x-dependence is the
    single membrane mode ``mode_id``.
    """

    cross_section: object
    mode_id: str
    depth: float
    h: float
    rho: float
    w1: Callable[[np.ndarray], np.ndarray]
    dw1: Callable[[np.ndarray], np.ndarray]
    w2: Callable[[np.ndarray], np.ndarray]
    dw2: Callable[[np.ndarray], np.ndarray]

    def u1(self, x, y: float) -> float:
        return evaluate_mode(self.cross_section, self.mode_id, x) * float(self.w1(np.asarray(y)))

    def u2(self, x, y: float) -> float:
        return evaluate_mode(self.cross_section, self.mode_id, x) * float(self.w2(np.asarray(y)))

    def du1_dy(self, x, y: float) -> float:
        return evaluate_mode(self.cross_section, self.mode_id, x) * float(self.dw1(np.asarray(y)))

    def du2_dy(self, x, y: float) -> float:
        return evaluate_mode(self.cross_section, self.mode_id, x) * float(self.dw2(np.asarray(y)))


def build_potential_pair(
    mc: ModeCoefficients,
    mode_id: str,
    geom: ContainerGeometry,
    strat: Stratification,
) -> PotentialPair:
    """Potential pair for one eigenmode from its vertical coefficients."""
    k, h, d = mc.k, strat.h, geom.depth
    A, B, C = mc.A, mc.B, mc.C
    return PotentialPair(
        cross_section=geom.cross_section,
        mode_id=mode_id,
        depth=d,
        h=h,
        rho=strat.rho,
        w1=lambda y: A * np.cosh(k * (y + h)) + B * np.sinh(k * (y + h)),
        dw1=lambda y: k * (A * np.sinh(k * (y + h)) + B * np.cosh(k * (y + h))),
        w2=lambda y: C * np.cosh(k * (y + d)),
        dw2=lambda y: C * k * np.sinh(k * (y + d)),
    )


def homogeneous_trial_pair(
    mode_id: str,
    k: float,
    geom: ContainerGeometry,
    strat: Stratification,
) -> PotentialPair:
    """The admissible trial pair (ρu₁, u₁) built from a homogeneous mode.

    u₁ = v(x) cosh k(y+d) is the homogeneous eigenmode; restricting ρu₁ to the
    upper layer and u₁ to the lower one makes the interface term of the
    two-layer quotient vanish, which is the trial function behind the strict
    inequality ν₁ < ν₁^W.
    """
    d, h = geom.depth, strat.h
    rho = strat.rho
    return PotentialPair(
        cross_section=geom.cross_section,
        mode_id=mode_id,
        depth=d,
        h=h,
        rho=rho,
        w1=lambda y: rho * np.cosh(k * (y + d)),
        dw1=lambda y: rho * k * np.sinh(k * (y + d)),
        w2=lambda y: np.cosh(k * (y + d)),
        dw2=lambda y: k * np.sinh(k * (y + d)),
    )


def evaluate_potential(pp: PotentialPair, x, y: float, side: str = "auto") -> float:
    """Potential value at (x, y); ``side`` picks the layer on the interface."""
    if not (-pp.depth <= y <= 0.0):
        raise DomainError(f"y={y} outside [-d, 0]")
    evaluate_mode(pp.cross_section, pp.mode_id, x)  # domain check on x
    if side not in ("auto", "upper", "lower"):
        raise ValidationError("side must be 'auto', 'upper' or 'lower'")
    use_upper = y > -pp.h or (y == -pp.h and side != "lower")
    if side == "upper" and y < -pp.h:
        raise DomainError("upper-layer evaluation below the interface")
    if side == "lower" and y > -pp.h:
        raise DomainError("lower-layer evaluation above the interface")
    return pp.u1(x, y) if use_upper else pp.u2(x, y)


def _cross_section_integrals(pp: PotentialPair, quadrature_n: int):
    pts, w = cross_section_nodes(pp.cross_section, quadrature_n)
    v = mode_values(pp.cross_section, pp.mode_id, pts)
    gv = mode_gradient_squared(pp.cross_section, pp.mode_id, pts)
    return float(np.dot(w, v * v)), float(np.dot(w, gv))


def rayleigh_two_layer(
    pp: PotentialPair,
    geom: ContainerGeometry,
    strat: Stratification,
    quadrature_n: int,
) -> float:
    """Two-layer Rayleigh quotient of the pair, by tensor-product quadrature.

        ∫_{W₁}|∇u¹|² + ρ∫_{W₂}|∇u²|²
        ────────────────────────────────────────────
        ∫_F (u¹)² + (ρ−1)⁻¹ ∫_I (ρu² − u¹)²
    """
    if quadrature_n < 8:
        raise ValidationError("quadrature_n must be at least 8")
    rho, h, d = strat.rho, strat.h, geom.depth
    int_v2, int_gv2 = _cross_section_integrals(pp, quadrature_n)

    y1, wy1 = gauss2_nodes(-h, 0.0, quadrature_n)
    y2, wy2 = gauss2_nodes(-d, -h, quadrature_n)
    num = (
        int_gv2 * np.dot(wy1, pp.w1(y1) ** 2)
        + int_v2 * np.dot(wy1, pp.dw1(y1) ** 2)
        + rho * (int_gv2 * np.dot(wy2, pp.w2(y2) ** 2) + int_v2 * np.dot(wy2, pp.dw2(y2) ** 2))
    )
    w1_surface = float(pp.w1(np.asarray(0.0)))
    jump = rho * float(pp.w2(np.asarray(-h))) - float(pp.w1(np.asarray(-h)))
    den = int_v2 * (w1_surface**2 + jump**2 / (rho - 1.0))
    if den == 0.0:
        raise ZeroDenominatorError("trial pair vanishes on both the free surface and interface")
    return float(num / den)


@dataclass(frozen=True)
class HomogeneousMode:
    """Single-fluid mode v(x) cosh k(y+d) (any nonzero amplitude)."""

    mode_id: str
    k: float
    amplitude: float = 1.0


def rayleigh_homogeneous(u: HomogeneousMode, geom: ContainerGeometry, quadrature_n: int) -> float:
    """Single-fluid quotient ∫_W |∇u|² / ∫_F u² by the same quadrature."""
    if quadrature_n < 8:
        raise ValidationError("quadrature_n must be at least 8")
    if geom.is_infinite:
        raise ValidationError("finite depth required")
    if u.amplitude == 0.0:
        raise ZeroDenominatorError("zero mode")
    d, k = geom.depth, u.k
    pts, w = cross_section_nodes(geom.cross_section, quadrature_n)
    v = mode_values(geom.cross_section, u.mode_id, pts)
    gv = mode_gradient_squared(geom.cross_section, u.mode_id, pts)
    int_v2 = float(np.dot(w, v * v))
    int_gv2 = float(np.dot(w, gv))
    y, wy = gauss2_nodes(-d, 0.0, quadrature_n)
    prof = np.cosh(k * (y + d))
    dprof = k * np.sinh(k * (y + d))
    num = int_gv2 * np.dot(wy, prof**2) + int_v2 * np.dot(wy, dprof**2)
    den = int_v2 * math.cosh(k * d) ** 2
    return float(num / den)


def orthogonality_check(
    pp_i: PotentialPair,
    pp_j: PotentialPair,
    strat: Stratification,
    quadrature_n: int,
) -> tuple[float, float]:
    """Free-surface and interface inner products of two mode pairs.

    Returns (∫_F u_i¹ u_j¹ dx, ∫_I (ρu_i² − u_i¹)(ρu_j² − u_j¹) dx); both
    vanish to quadrature error for modes built on distinct membrane
    eigenfunctions.
    """
    if pp_i.cross_section != pp_j.cross_section:
        raise ValidationError("mode pairs must share a cross-section")
    rho, h = strat.rho, strat.h
    pts, w = cross_section_nodes(pp_i.cross_section, quadrature_n)
    vi = mode_values(pp_i.cross_section, pp_i.mode_id, pts)
    vj = mode_values(pp_j.cross_section, pp_j.mode_id, pts)
    int_vivj = float(np.dot(w, vi * vj))
    surface = int_vivj * float(pp_i.w1(np.asarray(0.0))) * float(pp_j.w1(np.asarray(0.0)))
    jump_i = rho * float(pp_i.w2(np.asarray(-h))) - float(pp_i.w1(np.asarray(-h)))
    jump_j = rho * float(pp_j.w2(np.asarray(-h))) - float(pp_j.w1(np.asarray(-h)))
    interface = int_vivj * jump_i * jump_j
    return surface, interface
