"""Recovery of the density ratio and interface depth from measured spectra.

Inputs are the two smallest distinct sloshing eigenvalues ν₁ < ν_N together
with a sampled free-surface elevation for ν_N.  The elevation decides which
transcendental system applies: if it lies in the span of the fundamental
membrane modes, ν_N is the plus-branch partner of ν₁ and the closed-form
plus-system applies; otherwise ν_N is the minus-branch eigenvalue of the
second membrane level and the interface depth is the root of a transcendental
function U on (0, d), with the density ratio recovered linearly afterwards.

All hyperbolic expressions reuse the cosh-scaled building blocks of the
dispersion module, so residual scales match across the toolkit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .dispersion import (
    ContainerGeometry,
    Stratification,
    homogeneous_eigenvalue,
    two_layer_pair,
)
from .errors import (
    AdmissibilityError,
    AmbiguousRootsError,
    InconsistentRhoError,
    InfiniteDepthError,
    NoRootError,
    NumericalFaultError,
    UnsupportedVariantError,
    ValidationError,
)
from .membrane import MembraneEigenvalue, Tabulated, evaluate_mode, membrane_spectrum
from .modes import coefficients

#: relative least-squares residual separating in-span from not-in-span
CLASS_TOL = 1e-6

#: relative tie-band declaring the plus/minus coincidence
COINCIDENT_REL_TOL = 1e-9

#: relative tolerance for the trivial homogeneous verdict
HOMOGENEOUS_REL_TOL = 1e-9

#: agreement required between the two independent density-ratio recoveries
RHO_CONSISTENCY_TOL = 1e-8

#: default uniform scan resolution for the interface-depth equation
SCAN_N = 2048

#: bisection target on the interface depth, relative to the container depth
H_REL_TOL = 1e-12

#: worst forward-reconstruction error accepted from a recovered stratification
RECONSTRUCTION_TOL = 1e-6


@dataclass(frozen=True)
class Measurement:
    """Measured eigenvalue pair, elevation samples, and known membrane data."""

    nu_1: float
    nu_N: float
    elevation: tuple[tuple[tuple[float, float], float], ...]
    geometry: ContainerGeometry
    fundamental_level: MembraneEigenvalue
    second_level: MembraneEigenvalue
    nu1_w: float
    nuN_w: float

    def __post_init__(self):
        if self.geometry.is_infinite:
            raise InfiniteDepthError(
                "inverse recovery is unsolvable for an infinitely deep container: "
                "its two-layer spectrum coincides with the homogeneous one"
            )
        if not (0.0 < self.nu_1 < self.nu_N):
            raise ValidationError("eigenvalues must satisfy 0 < nu_1 < nu_N")
        n_minus_1 = self.fundamental_level.multiplicity
        if len(self.elevation) < n_minus_1 + 2:
            raise ValidationError(
                f"need at least {n_minus_1 + 2} elevation samples, got {len(self.elevation)}"
            )

    @property
    def k1(self) -> float:
        return self.fundamental_level.k

    @property
    def kN(self) -> float:
        return self.second_level.k

    @classmethod
    def from_geometry(cls, geometry: ContainerGeometry, nu_1: float, nu_N: float, elevation):
        """Build a measurement, deriving the membrane data from the geometry."""
        if geometry.is_infinite:
            raise InfiniteDepthError(
                "inverse recovery is unsolvable for an infinitely deep container"
            )
        first, second = first_two_levels(geometry.cross_section)
        elev = tuple(((float(p[0]), float(p[1])), float(v)) for p, v in elevation)
        return cls(
            nu_1=float(nu_1),
            nu_N=float(nu_N),
            elevation=elev,
            geometry=geometry,
            fundamental_level=first,
            second_level=second,
            nu1_w=homogeneous_eigenvalue(first.k, geometry.depth),
            nuN_w=homogeneous_eigenvalue(second.k, geometry.depth),
        )


def first_two_levels(cs) -> tuple[MembraneEigenvalue, MembraneEigenvalue]:
    """The two smallest distinct membrane levels of a cross-section."""
    if isinstance(cs, Tabulated):
        if len(cs.entries) < 2:
            raise ValidationError("tabulated cross-section must provide at least two levels")
        return cs.entries[0], cs.entries[1]
    bound = 16.0 / cs.area  # heuristic start, grown until two levels appear
    for _ in range(40):
        levels = membrane_spectrum(cs, bound)
        if len(levels) >= 2:
            return levels[0], levels[1]
        bound *= 4.0
    raise NumericalFaultError("could not locate the first two membrane levels")


@dataclass(frozen=True)
class ElevationClass:
    """Outcome of projecting the elevation onto the fundamental modes."""

    variant: str  # "in_span" | "not_in_span"
    projection_residual: float
    coefficients: tuple[float, ...]


@dataclass(frozen=True)
class NecessaryConditions:
    """Solvability diagnostics for the minus-system (values are cosh-scaled)."""

    s_minus: float  # nu_1 k_N / k_1 − nu_N k_1 / k_N
    prod_diff: float  # nu_N^W nu_1 − nu_N nu_1^W
    u_at_0: float
    nc_first: bool
    nc_second: bool
    verdict: str  # "nc-satisfied" | "lemma2-no-unique" | "nc-second-violated" | "equality-impossible"


@dataclass(frozen=True)
class RecoveryDiagnostics:
    nc_first: bool
    nc_second: bool
    u_at_0: float
    root_count_estimate: int
    rho_consistency: float
    elevation_residual: float | None = None
    prop7_unique_sufficient: bool | None = None
    cross_branch_disagreement: float | None = None


@dataclass(frozen=True)
class RecoveryResult:
    """Recovered stratification with the branch used and diagnostics."""

    rho: float
    h: float
    branch: str  # "plus" | "minus" | "coincident" | "homogeneous"
    diagnostics: RecoveryDiagnostics


def classify_elevation(m: Measurement, class_tol: float = CLASS_TOL) -> ElevationClass:
    """Least-squares projection of the elevation onto the fundamental modes.

    Relative residual at or below ``class_tol`` classifies the elevation as a
    member of span{v₁, …, v_{N−1}} (plus-system data); anything larger keeps
    it outside (minus-system data).
    """
    cs = m.geometry.cross_section
    if isinstance(cs, Tabulated):
        raise UnsupportedVariantError("elevation classification needs evaluable membrane modes")
    pts = [p for p, _ in m.elevation]
    vals = np.array([v for _, v in m.elevation])
    norm = float(np.linalg.norm(vals))
    if norm == 0.0:
        raise ValidationError("elevation samples are identically zero")
    design = np.column_stack(
        [[evaluate_mode(cs, mid, p) for p in pts] for mid in m.fundamental_level.mode_ids]
    )
    coeffs, _, rank, _ = np.linalg.lstsq(design, vals, rcond=None)
    if rank < design.shape[1]:
        raise ValidationError(
            "elevation sample points are rank-deficient for the fundamental modes"
        )
    residual = float(np.linalg.norm(design @ coeffs - vals)) / norm
    variant = "in_span" if residual <= class_tol else "not_in_span"
    return ElevationClass(variant, residual, tuple(float(c) for c in coeffs))


def _pq_scaled(k: float, d: float, h):
    """(P, Q) = (cosh kh sinh k(d−h), sinh kh sinh k(d−h)) / cosh kd, bounded."""
    h = np.asarray(h, dtype=float)
    e2a = np.exp(-2.0 * k * h)
    e2b = np.exp(-2.0 * k * (d - h))
    e2c = math.exp(-2.0 * k * d)
    den = 2.0 * (1.0 + e2c)
    P = (1.0 + e2a - e2b - e2c) / den
    Q = (1.0 - e2a - e2b + e2c) / den
    return P, Q


def _sc_scaled(k: float, d: float, h):
    """(sinh, cosh) of k(d−2h), both divided by cosh kd, bounded for h in [0, d]."""
    h = np.asarray(h, dtype=float)
    x = k * (d - 2.0 * h)
    c = k * d
    ep = np.exp(x - c)  # |x| <= c, so both exponents are nonpositive
    em = np.exp(-x - c)
    den = 1.0 + math.exp(-2.0 * c)
    return (ep - em) / den, (ep + em) / den


def _branch_weights(m: Measurement) -> tuple[float, float]:
    w1 = (m.nu_1 / m.k1) * (m.nu1_w - m.nu_1)
    wN = (m.nu_N / m.kN) * (m.nuN_w - m.nu_N)
    return w1, wN


def U_value(h_trial, m: Measurement):
    """Interface-depth mismatch function, scaled by cosh k₁d cosh k_N d.

    Zeros on (0, d) are the minus-system interface depths; U(d) = 0
    identically and sign(U(0)) = sign(ν_N^W ν₁ − ν_N ν₁^W).  Accepts scalar
    or array ``h_trial`` in [0, d].
    """
    d = m.geometry.depth
    w1, wN = _branch_weights(m)
    P1, Q1 = _pq_scaled(m.k1, d, h_trial)
    PN, QN = _pq_scaled(m.kN, d, h_trial)
    g1 = m.k1 * Q1 - m.nu_1 * P1
    gN = m.kN * QN - m.nu_N * PN
    out = w1 * gN - wN * g1
    return float(out) if np.isscalar(h_trial) else out


def U_derivatives(h_trial, m: Measurement):
    """Closed-form (U′, U″), scaled consistently with :func:`U_value`."""
    d = m.geometry.depth
    w1, wN = _branch_weights(m)
    s1, c1 = _sc_scaled(m.k1, d, h_trial)
    sN, cN = _sc_scaled(m.kN, d, h_trial)
    e1 = m.k1 * s1 + m.nu_1 * c1
    eN = m.kN * sN + m.nu_N * cN
    f1 = m.k1 * c1 + m.nu_1 * s1
    fN = m.kN * cN + m.nu_N * sN
    du = w1 * m.kN * eN - wN * m.k1 * e1
    ddu = 2.0 * (wN * m.k1**2 * f1 - w1 * m.kN**2 * fN)
    if np.isscalar(h_trial):
        return float(du), float(ddu)
    return du, ddu


def necessary_conditions(m: Measurement) -> NecessaryConditions:
    """Solvability verdict from the sign conditions on the measured pair.

    Unique-root recovery requires both ν₁k_N/k₁ − ν_Nk₁/k_N > 0 and
    ν_N^W ν₁ − ν_N ν₁^W < 0; the first failing puts the data in the
    no-solution-or-multiple regime, while exact product equality is
    incompatible with a unique root.
    """
    s_minus = m.nu_1 * m.kN / m.k1 - m.nu_N * m.k1 / m.kN
    prod_diff = m.nuN_w * m.nu_1 - m.nu_N * m.nu1_w
    u_at_0 = (m.nu_N * m.nu_1 / (m.kN * m.k1)) * prod_diff
    nc_first = s_minus > 0.0
    nc_second = prod_diff < 0.0
    scale = max(abs(m.nuN_w * m.nu_1), abs(m.nu_N * m.nu1_w))
    if abs(prod_diff) <= 1e-14 * scale:
        verdict = "equality-impossible"
    elif not nc_first:
        verdict = "lemma2-no-unique"
    elif not nc_second:
        verdict = "nc-second-violated"
    else:
        verdict = "nc-satisfied"
    return NecessaryConditions(s_minus, prod_diff, u_at_0, nc_first, nc_second, verdict)


def _scan_brackets(m: Measurement, scan_n: int) -> tuple[list[tuple[float, float]], list[float], int]:
    """Sign-change brackets and exact grid zeros of U on (0, d).

    The scan is doubled until the combined count is stable over two
    consecutive doublings.  A scan point where U evaluates to exactly zero is
    reported as a root directly (a strict sign-change test would skip it).
    """
    d = m.geometry.depth
    n = scan_n
    counts: list[int] = []
    brackets: list[tuple[float, float]] = []
    exact: list[float] = []
    while True:
        hs = np.linspace(0.0, d, n + 1)[:-1]  # U(d) = 0 identically; stay inside
        u = U_value(hs, m)
        interior_zero = (u == 0.0) & (hs > 0.0)
        exact = [float(h) for h in hs[interior_zero]]
        sign_change = np.flatnonzero(u[:-1] * u[1:] < 0.0)
        brackets = [(float(hs[i]), float(hs[i + 1])) for i in sign_change]
        counts.append(len(brackets) + len(exact))
        if len(counts) >= 3 and counts[-1] == counts[-2] == counts[-3]:
            break
        if n > scan_n * 2**8:
            raise NumericalFaultError("root-bracket count did not stabilise under refinement")
        n *= 2
    return brackets, exact, n


def _bisect_root(m: Measurement, lo: float, hi: float) -> float:
    d = m.geometry.depth
    ulo = U_value(lo, m)
    for _ in range(200):
        if hi - lo <= H_REL_TOL * d:
            break
        mid = 0.5 * (lo + hi)
        um = U_value(mid, m)
        if um == 0.0:
            return mid
        if ulo * um < 0.0:
            hi = mid
        else:
            lo, ulo = mid, um
    return 0.5 * (lo + hi)


def _rho_from_minus(m: Measurement, h: float) -> tuple[float, float, float] | None:
    """ρ from each (sys1) equation and their relative disagreement.

    Returns None when either equation would force ρ <= 1, which disqualifies
    the root as a stratification.
    """
    d = m.geometry.depth
    w1, wN = _branch_weights(m)
    P1, Q1 = _pq_scaled(m.k1, d, h)
    PN, QN = _pq_scaled(m.kN, d, h)
    g1 = float(m.k1 * Q1 - m.nu_1 * P1)
    gN = float(m.kN * QN - m.nu_N * PN)
    if g1 <= 0.0 or gN <= 0.0:
        return None
    rho_1 = 1.0 + w1 / g1
    rho_N = 1.0 + wN / gN
    disagreement = abs(rho_1 - rho_N) / max(rho_1 - 1.0, rho_N - 1.0)
    return rho_1, rho_N, disagreement


@dataclass(frozen=True)
class RootCandidate:
    """One admissible zero of U with its recovered stratification."""

    h: float
    rho: float
    rho_consistency: float
    reconstruction_mismatch: float


def _minus_reconstruction_mismatch(m: Measurement, rho: float, h: float) -> float:
    """Worst relative error reproducing (ν₁, ν_N) as minus-branch eigenvalues.

    A zero of U only guarantees that each measured value is *some* root of its
    level's quadratic; this pins the branch.  Large values expose data that
    was not generated by the minus system.
    """
    strat = Stratification(rho, h)
    p1 = two_layer_pair(m.k1, m.geometry, strat)
    pN = two_layer_pair(m.kN, m.geometry, strat)
    return max(
        abs(p1.nu_minus - m.nu_1) / m.nu_1,
        abs(pN.nu_minus - m.nu_N) / m.nu_N,
    )


def solve_minus_system(
    m: Measurement,
    scan_n: int = SCAN_N,
    rho_consistency_tol: float = RHO_CONSISTENCY_TOL,
    elevation_residual: float | None = None,
) -> RecoveryResult:
    """Minus-system recovery: root of U on (0, d), then ρ from either equation.

    Root multiplicity is reported honestly: no sign change raises
    :class:`NoRootError`; several admissible roots raise
    :class:`AmbiguousRootsError` carrying every candidate (the inverse
    problem genuinely admits multiple stratifications for some measured
    pairs); a single root found while the necessary conditions fail is also
    reported ambiguous, since the root count is even in that regime.  Roots
    whose recovered stratification fails to reproduce the measured pair on
    the minus branch are rejected (that rejection is what detects
    plus-branch data fed to this solver).
    """
    nc = necessary_conditions(m)
    brackets, exact_roots, n_used = _scan_brackets(m, scan_n)

    roots = sorted(exact_roots + [_bisect_root(m, lo, hi) for lo, hi in brackets])
    if not roots:
        raise NoRootError(
            f"U has no sign change on (0, d) at scan resolution {n_used} "
            f"(verdict: {nc.verdict})"
        )

    candidates: list[RootCandidate] = []
    worst_reconstruction = math.inf
    for h in roots:
        recovered = _rho_from_minus(m, h)
        if recovered is None:
            continue
        rho_1, _, disagreement = recovered
        mismatch = _minus_reconstruction_mismatch(m, rho_1, h)
        worst_reconstruction = min(worst_reconstruction, mismatch)
        if mismatch <= RECONSTRUCTION_TOL and disagreement <= rho_consistency_tol:
            candidates.append(RootCandidate(h, rho_1, disagreement, mismatch))

    if not candidates:
        if math.isfinite(worst_reconstruction):
            raise InconsistentRhoError(
                f"every zero of U fails minus-branch reconstruction (best mismatch "
                f"{worst_reconstruction:.3e}); the pair is not minus-branch data",
                disagreement=worst_reconstruction,
            )
        raise InconsistentRhoError(
            "every zero of U forces a density ratio at or below 1; the pair is not "
            "minus-branch data"
        )

    if len(candidates) > 1 or nc.verdict != "nc-satisfied":
        raise AmbiguousRootsError(
            f"{len(candidates)} admissible interface depths (verdict: {nc.verdict}); "
            "no silent selection",
            [(c.h, c.rho, c.rho_consistency) for c in candidates],
        )

    best = candidates[0]
    du, ddu = U_derivatives(np.linspace(0.0, m.geometry.depth, 512)[1:-1], m)
    prop7 = int(np.count_nonzero(du[:-1] * du[1:] < 0.0)) == 1 or bool(np.all(ddu < 0.0))
    diag = RecoveryDiagnostics(
        nc_first=nc.nc_first,
        nc_second=nc.nc_second,
        u_at_0=nc.u_at_0,
        root_count_estimate=len(roots),
        rho_consistency=max(best.rho_consistency, best.reconstruction_mismatch),
        elevation_residual=elevation_residual,
        prop7_unique_sufficient=prop7,
    )
    return RecoveryResult(rho=best.rho, h=best.h, branch="minus", diagnostics=diag)


def solve_plus_system(
    m: Measurement,
    rho_consistency_tol: float = RHO_CONSISTENCY_TOL,
    elevation_residual: float | None = None,
) -> RecoveryResult:
    """Closed-form plus-system recovery.

    h comes from tanh k₁h = ν_Nν₁ / (k₁(ν_N + ν₁ − ν₁^W)) inside the
    admissibility window (0, tanh k₁d); ρ is recovered independently from the
    root-product and root-sum equations and both values must agree.
    """
    d = m.geometry.depth
    k1 = m.k1
    denom = k1 * (m.nu_N + m.nu_1 - m.nu1_w)
    tanh_k1d = math.tanh(k1 * d)
    z = m.nu_N * m.nu_1 / denom if denom != 0.0 else math.inf
    if not (0.0 < z < tanh_k1d):
        raise AdmissibilityError(
            f"plus-system window violated: nu_N nu_1 / (k_1 (nu_N + nu_1 - nu_1^W)) = {z:.6g} "
            f"not in (0, tanh k_1 d = {tanh_k1d:.6g})"
        )
    h = 0.5 * math.log((1.0 + z) / (1.0 - z)) / k1

    P1, Q1 = _pq_scaled(k1, d, h)
    rho_prod = 1.0 + (m.nu_N * m.nu_1 / k1**2) / float(Q1)
    rho_sum = 1.0 + ((m.nu_N + m.nu_1) / k1 - tanh_k1d) / float(P1)
    disagreement = abs(rho_prod - rho_sum) / max(rho_prod - 1.0, rho_sum - 1.0)
    if not (rho_prod > 1.0) or disagreement > rho_consistency_tol:
        raise InconsistentRhoError(
            f"density-ratio recoveries from the product and sum equations disagree by "
            f"{disagreement:.3e} (> {rho_consistency_tol:.0e}); the pair is not "
            "plus-branch data",
            rho_values=(rho_prod, rho_sum),
            disagreement=disagreement,
        )

    # branch check: the recovered stratification must return the measured pair
    # as the two roots at the fundamental wavenumber
    pair = two_layer_pair(k1, m.geometry, Stratification(rho_prod, h))
    mismatch = max(
        abs(pair.nu_minus - m.nu_1) / m.nu_1, abs(pair.nu_plus - m.nu_N) / m.nu_N
    )
    if mismatch > RECONSTRUCTION_TOL:
        raise InconsistentRhoError(
            f"recovered stratification fails plus-branch reconstruction "
            f"(mismatch {mismatch:.3e}); the pair is not plus-branch data",
            rho_values=(rho_prod, rho_sum),
            disagreement=mismatch,
        )

    nc = necessary_conditions(m)
    brackets, exact_roots, _ = _scan_brackets(m, 512)
    diag = RecoveryDiagnostics(
        nc_first=nc.nc_first,
        nc_second=nc.nc_second,
        u_at_0=nc.u_at_0,
        root_count_estimate=len(brackets) + len(exact_roots),
        rho_consistency=max(disagreement, mismatch),
        elevation_residual=elevation_residual,
    )
    return RecoveryResult(rho=rho_prod, h=h, branch="plus", diagnostics=diag)


def branch_cross_check(m: Measurement, result: RecoveryResult) -> float:
    """Relative gap |ν₁⁺ − ν_N⁻| at the recovered parameters.

    The solved branch reproduces ν_N exactly, so this measures how far the
    *other* branch's prediction is from the measurement.  Near zero it flags
    the plus/minus coincidence; for data fed to the wrong solver it is the
    cross-check disagreement that exposes the misassignment.
    """
    strat = Stratification(result.rho, result.h)
    nu1_plus = two_layer_pair(m.k1, m.geometry, strat).nu_plus
    nuN_minus = two_layer_pair(m.kN, m.geometry, strat).nu_minus
    return abs(nu1_plus - nuN_minus) / m.nu_N


def recover(m: Measurement, class_tol: float = CLASS_TOL) -> RecoveryResult:
    """Full inverse pipeline: classify the elevation, dispatch, cross-check.

    The trivial case ν₁ = ν₁^W reports a homogeneous fluid (ρ = 1, h = d).
    When the recovered parameters put ν₁⁺ and ν_N⁻ within the coincidence
    tie-band, the other branch is solved as a cross-check and the result is
    flagged ``coincident`` (the plus-system value is preferred).
    """
    if m.geometry.is_infinite:
        raise InfiniteDepthError("inverse recovery requires finite depth")

    if abs(m.nu_1 - m.nu1_w) <= HOMOGENEOUS_REL_TOL * m.nu1_w:
        diag = RecoveryDiagnostics(
            nc_first=False,
            nc_second=False,
            u_at_0=0.0,
            root_count_estimate=0,
            rho_consistency=0.0,
        )
        return RecoveryResult(rho=1.0, h=m.geometry.depth, branch="homogeneous", diagnostics=diag)

    cls = classify_elevation(m, class_tol)
    if cls.variant == "in_span":
        result = solve_plus_system(m, elevation_residual=cls.projection_residual)
        other = solve_minus_system
    else:
        result = solve_minus_system(m, elevation_residual=cls.projection_residual)
        other = solve_plus_system

    gap = branch_cross_check(m, result)
    if gap <= COINCIDENT_REL_TOL:
        cross = None
        try:
            cross = other(m, elevation_residual=cls.projection_residual)
        except (NoRootError, AmbiguousRootsError, AdmissibilityError, InconsistentRhoError):
            pass
        if cross is not None:
            preferred = result if result.branch == "plus" else cross
            secondary = cross if result.branch == "plus" else result
            disagreement = max(
                abs(preferred.rho - secondary.rho) / max(preferred.rho - 1.0, 1e-300),
                abs(preferred.h - secondary.h) / m.geometry.depth,
            )
            result = replace(preferred, diagnostics=replace(
                preferred.diagnostics, cross_branch_disagreement=disagreement
            ))
        return replace(result, branch="coincident")
    return result


def synthesize_measurement(
    geom: ContainerGeometry,
    strat: Stratification,
    branch: str,
    n_samples: int = 64,
    seed: int = 0,
    mix: tuple[float, ...] | None = None,
) -> Measurement:
    """Forward-generated measurement for round trips and demos.

    ``branch`` picks what ν_N is: ``"minus"`` takes the minus eigenvalue of
    the second membrane level and samples the elevation from that level's
    first mode, ``"plus"`` takes the plus partner of the fundamental level and
    samples a fixed combination of the fundamental modes (``mix`` overrides
    the combination weights).  Sample points are drawn uniformly over the
    cross-section with the given seed.
    """
    if branch not in ("minus", "plus"):
        raise ValidationError("branch must be 'minus' or 'plus'")
    if geom.is_infinite:
        raise InfiniteDepthError("forward synthesis for recovery requires finite depth")
    strat.validate_against(geom)
    cs = geom.cross_section
    first, second = first_two_levels(cs)
    pair_1 = two_layer_pair(first.k, geom, strat)
    pair_N = two_layer_pair(second.k, geom, strat)

    if branch == "minus":
        nu_N = pair_N.nu_minus
        parts = [(second.mode_ids[0], 1.0)]
        k_elev, nu_elev = second.k, nu_N
    else:
        nu_N = pair_1.nu_plus
        weights = mix if mix is not None else tuple(
            1.0 / (i + 1.0) for i in range(first.multiplicity)
        )
        if len(weights) != first.multiplicity or not any(weights):
            raise ValidationError("mix must weight every fundamental mode, not all zero")
        parts = list(zip(first.mode_ids, weights))
        k_elev, nu_elev = first.k, nu_N

    mc = coefficients(nu_elev, k_elev, geom, strat)
    trace = mc.A * math.cosh(k_elev * strat.h) + mc.B * math.sinh(k_elev * strat.h)

    pts = _sample_points(cs, n_samples, seed)
    values = [
        trace * sum(w * evaluate_mode(cs, mid, p) for mid, w in parts) for p in pts
    ]
    return Measurement.from_geometry(
        geom, pair_1.nu_minus, nu_N, list(zip(pts, values))
    )


def _sample_points(cs, n_samples: int, seed: int) -> list[tuple[float, float]]:
    rng = np.random.default_rng(seed)
    pts: list[tuple[float, float]] = []
    if hasattr(cs, "side_a"):
        while len(pts) < n_samples:
            p = rng.uniform((0.0, 0.0), (cs.side_a, cs.side_b))
            pts.append((float(p[0]), float(p[1])))
    elif hasattr(cs, "radius"):
        while len(pts) < n_samples:
            p = rng.uniform((-cs.radius, -cs.radius), (cs.radius, cs.radius))
            if math.hypot(p[0], p[1]) < cs.radius:
                pts.append((float(p[0]), float(p[1])))
    else:
        raise UnsupportedVariantError("cannot sample points on a tabulated cross-section")
    return pts
