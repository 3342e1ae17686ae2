"""Neumann membrane spectra of container cross-sections.

The horizontal cross-section D supplies the eigenvalues k² and eigenfunctions
v of the free-membrane problem (Neumann Laplacian with the mean-zero
constraint, so k² > 0 throughout).  Closed forms are implemented for
rectangles and discs; arbitrary spectra can be supplied as tables.  A
finite-difference eigensolver on rectangles acts as an independent oracle.

Eigenfunctions are normalised so that ∫_D v² dx = |D|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import eigsh
from scipy.special import jn_zeros, jv, jvp

from .errors import DomainError, UnsupportedVariantError, ValidationError

#: relative tolerance below which two k² values are merged into one level
MULTIPLICITY_REL_TOL = 1e-9

#: relative refinement target for Bessel-derivative roots
_BESSEL_ROOT_REL_TOL = 1e-13


@dataclass(frozen=True)
class MembraneEigenvalue:
    """One level of the membrane spectrum.

    ``mode_ids`` name the linearly independent eigenfunctions of the level;
    their count equals ``multiplicity``.
    """

    k_squared: float
    multiplicity: int
    mode_ids: tuple[str, ...]

    def __post_init__(self):
        if self.k_squared <= 0.0:
            raise ValidationError("membrane eigenvalue k_squared must be positive")
        if self.multiplicity < 1 or self.multiplicity != len(self.mode_ids):
            raise ValidationError("multiplicity must match the number of mode ids")

    @property
    def k(self) -> float:
        return math.sqrt(self.k_squared)


@dataclass(frozen=True)
class Rectangle:
    """Rectangular cross-section (0, side_a) x (0, side_b)."""

    side_a: float
    side_b: float

    def __post_init__(self):
        if self.side_a <= 0.0 or self.side_b <= 0.0:
            raise ValidationError("rectangle sides must be positive")

    @property
    def area(self) -> float:
        return self.side_a * self.side_b


@dataclass(frozen=True)
class Disc:
    """Disc cross-section of given radius, centred at the origin."""

    radius: float

    def __post_init__(self):
        if self.radius <= 0.0:
            raise ValidationError("disc radius must be positive")

    @property
    def area(self) -> float:
        return math.pi * self.radius**2


@dataclass(frozen=True)
class Tabulated:
    """Cross-section known only through a table of membrane eigenvalues.

    Mode evaluation is unavailable; only the spectrum and the area are used.
    """

    entries: tuple[MembraneEigenvalue, ...]
    area: float

    def __post_init__(self):
        if self.area <= 0.0:
            raise ValidationError("tabulated area must be positive")
        ks = [e.k_squared for e in self.entries]
        if any(b <= a for a, b in zip(ks, ks[1:])):
            raise ValidationError("tabulated entries must be strictly increasing in k_squared")


CrossSection = Rectangle | Disc | Tabulated


def _merge_levels(raw: list[tuple[float, str]]) -> list[MembraneEigenvalue]:
    """Sort (k², mode_id) pairs and merge levels within MULTIPLICITY_REL_TOL."""
    raw.sort(key=lambda t: (t[0], t[1]))
    levels: list[MembraneEigenvalue] = []
    for k2, mid in raw:
        if levels and abs(k2 - levels[-1].k_squared) <= MULTIPLICITY_REL_TOL * levels[-1].k_squared:
            prev = levels[-1]
            levels[-1] = MembraneEigenvalue(
                prev.k_squared, prev.multiplicity + 1, prev.mode_ids + (mid,)
            )
        else:
            levels.append(MembraneEigenvalue(k2, 1, (mid,)))
    return levels


def _bisect(f, lo: float, hi: float, rel_tol: float) -> float:
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise ValidationError(f"no sign change on bracket ({lo}, {hi})")
    while hi - lo > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def bessel_derivative_zeros(m: int, upper: float) -> list[float]:
    """All positive zeros of J_m' not exceeding ``upper``.

    Brackets come from the interlacing of the extrema of J_m with its zeros
    (for m >= 1 the s-th extremum lies in (j_{m,s-1}, j_{m,s}) with the first
    in (m, j_{m,1}); for m = 0 the zeros of J_0' are those of J_1, one in each
    (j_{0,s}, j_{0,s+1})).  Each bracket is refined by bisection on J_m'.
    """
    if upper <= (m if m >= 1 else 0.0):
        return []
    f = lambda x: jvp(m, x, 1)
    # zeros of J_m itself; spacing tends to pi, so upper/3 + margin suffices
    n_zeros = max(4, int(upper / 3.0) + 3)
    jz = jn_zeros(m, n_zeros)
    while jz[-1] < upper + math.pi:
        n_zeros += max(4, int(upper / 3.0))
        jz = jn_zeros(m, n_zeros)

    roots: list[float] = []
    if m == 0:
        brackets = zip(jz, jz[1:])
    else:
        brackets = [(float(m), jz[0])] + list(zip(jz, jz[1:]))
    for lo, hi in brackets:
        if lo > upper:
            break
        root = _bisect(f, float(lo), float(hi), _BESSEL_ROOT_REL_TOL)
        if root > upper:
            break
        roots.append(float(root))
    return roots


def membrane_spectrum(cs: CrossSection, k_squared_max: float) -> list[MembraneEigenvalue]:
    """All membrane eigenvalues in (0, k_squared_max], sorted increasing.

    Rectangle levels are pi²(m²/a² + n²/b²) over integer pairs (m, n) != (0, 0);
    disc levels are (j'_{m,s}/R)² with multiplicity 2 for m >= 1 (cosine and
    sine azimuthal modes) and 1 for m = 0.  Coinciding levels are merged within
    a relative tolerance of ``MULTIPLICITY_REL_TOL``.
    """
    if k_squared_max <= 0.0:
        raise ValidationError("k_squared_max must be positive")

    if isinstance(cs, Tabulated):
        return [e for e in cs.entries if e.k_squared <= k_squared_max]

    raw: list[tuple[float, str]] = []
    if isinstance(cs, Rectangle):
        a, b = cs.side_a, cs.side_b
        m_max = int(a * math.sqrt(k_squared_max) / math.pi)
        for m in range(m_max + 1):
            base = math.pi**2 * m**2 / a**2
            if base > k_squared_max:
                break
            n_max = int(b * math.sqrt(max(k_squared_max - base, 0.0)) / math.pi)
            for n in range(n_max + 1):
                if m == 0 and n == 0:
                    continue
                k2 = base + math.pi**2 * n**2 / b**2
                if k2 <= k_squared_max:
                    raw.append((k2, f"{m},{n}"))
    elif isinstance(cs, Disc):
        upper = cs.radius * math.sqrt(k_squared_max)
        m = 0
        while True:
            zeros = bessel_derivative_zeros(m, upper)
            if m >= 1 and not zeros:
                break
            for s, root in enumerate(zeros, start=1):
                k2 = (root / cs.radius) ** 2
                if m == 0:
                    raw.append((k2, f"0,{s}"))
                else:
                    raw.append((k2, f"{m},{s},cos"))
                    raw.append((k2, f"{m},{s},sin"))
            m += 1
            if m > upper:  # j'_{m,1} > m, so no further levels can fit
                break
    else:
        raise UnsupportedVariantError(f"unsupported cross-section {type(cs).__name__}")

    return _merge_levels(raw)


def _parse_disc_mode(cs: Disc, mode_id: str):
    parts = mode_id.split(",")
    try:
        if len(parts) == 2:
            m, s, kind = int(parts[0]), int(parts[1]), "cos"
            if m != 0:
                raise ValueError
        elif len(parts) == 3:
            m, s, kind = int(parts[0]), int(parts[1]), parts[2]
            if m < 1 or kind not in ("cos", "sin"):
                raise ValueError
        else:
            raise ValueError
        if s < 1:
            raise ValueError
    except ValueError:
        raise ValidationError(f"invalid disc mode id {mode_id!r}") from None
    upper = m + (math.pi + 1.0) * (s + 1)
    roots = bessel_derivative_zeros(m, upper)
    while len(roots) < s:
        upper *= 1.5
        roots = bessel_derivative_zeros(m, upper)
    jprime = roots[s - 1]
    k = jprime / cs.radius
    # normalisation: int_D v^2 = |D| with int_0^R J_m(kr)^2 r dr
    #   = (R^2/2)(1 - m^2/j'^2) J_m(j')^2 at a derivative zero j'
    jm = jv(m, jprime)
    if m == 0:
        amp = 1.0 / abs(jm)
    else:
        amp = math.sqrt(2.0 / ((1.0 - m**2 / jprime**2) * jm**2))
    return m, kind, k, amp


def _parse_rect_mode(mode_id: str):
    try:
        m_str, n_str = mode_id.split(",")
        m, n = int(m_str), int(n_str)
        if m < 0 or n < 0 or (m == 0 and n == 0):
            raise ValueError
    except ValueError:
        raise ValidationError(f"invalid rectangle mode id {mode_id!r}") from None
    return m, n


def evaluate_mode(cs: CrossSection, mode_id: str, x) -> float:
    """Value of the membrane eigenfunction ``mode_id`` at point ``x`` in D.

    Normalised to ∫_D v² dx = |D|; every mode has zero mean over D.
    """
    x1, x2 = float(x[0]), float(x[1])
    if isinstance(cs, Rectangle):
        if not (0.0 <= x1 <= cs.side_a and 0.0 <= x2 <= cs.side_b):
            raise DomainError(f"point ({x1}, {x2}) outside rectangle")
        m, n = _parse_rect_mode(mode_id)
        amp = math.sqrt(2.0 ** ((m > 0) + (n > 0)))
        return amp * math.cos(m * math.pi * x1 / cs.side_a) * math.cos(n * math.pi * x2 / cs.side_b)
    if isinstance(cs, Disc):
        r = math.hypot(x1, x2)
        if r > cs.radius * (1.0 + 1e-12):
            raise DomainError(f"point ({x1}, {x2}) outside disc")
        m, kind, k, amp = _parse_disc_mode(cs, mode_id)
        theta = math.atan2(x2, x1)
        azim = math.cos(m * theta) if kind == "cos" else math.sin(m * theta)
        return amp * jv(m, k * r) * azim
    raise UnsupportedVariantError("tabulated cross-sections carry no eigenfunctions")


def evaluate_mode_gradient(cs: CrossSection, mode_id: str, x) -> tuple[float, float]:
    """Cartesian gradient of the membrane eigenfunction at ``x``."""
    x1, x2 = float(x[0]), float(x[1])
    if isinstance(cs, Rectangle):
        if not (0.0 <= x1 <= cs.side_a and 0.0 <= x2 <= cs.side_b):
            raise DomainError(f"point ({x1}, {x2}) outside rectangle")
        m, n = _parse_rect_mode(mode_id)
        amp = math.sqrt(2.0 ** ((m > 0) + (n > 0)))
        km, kn = m * math.pi / cs.side_a, n * math.pi / cs.side_b
        return (
            -amp * km * math.sin(km * x1) * math.cos(kn * x2),
            -amp * kn * math.cos(km * x1) * math.sin(kn * x2),
        )
    if isinstance(cs, Disc):
        r = math.hypot(x1, x2)
        if r > cs.radius * (1.0 + 1e-12):
            raise DomainError(f"point ({x1}, {x2}) outside disc")
        m, kind, k, amp = _parse_disc_mode(cs, mode_id)
        theta = math.atan2(x2, x1)
        az = math.cos(m * theta) if kind == "cos" else math.sin(m * theta)
        daz = -m * math.sin(m * theta) if kind == "cos" else m * math.cos(m * theta)
        dvdr = amp * k * jvp(m, k * r, 1) * az
        if r == 0.0:
            # J_m(kr)/r -> 0 for m >= 2, k J_1' (0)-type terms only for m=1
            dvdtheta_over_r = amp * k * 0.5 * daz if m == 1 else 0.0
        else:
            dvdtheta_over_r = amp * jv(m, k * r) * daz / r
        c, s = math.cos(theta), math.sin(theta)
        return (c * dvdr - s * dvdtheta_over_r, s * dvdr + c * dvdtheta_over_r)
    raise UnsupportedVariantError("tabulated cross-sections carry no eigenfunctions")


def mode_values(cs: CrossSection, mode_id: str, pts: np.ndarray) -> np.ndarray:
    """Vectorised eigenfunction values at an (N, 2) array of points.

    No domain check; intended for quadrature nodes generated inside D.
    """
    x1 = np.asarray(pts)[:, 0]
    x2 = np.asarray(pts)[:, 1]
    if isinstance(cs, Rectangle):
        m, n = _parse_rect_mode(mode_id)
        amp = math.sqrt(2.0 ** ((m > 0) + (n > 0)))
        return amp * np.cos(m * math.pi * x1 / cs.side_a) * np.cos(n * math.pi * x2 / cs.side_b)
    if isinstance(cs, Disc):
        m, kind, k, amp = _parse_disc_mode(cs, mode_id)
        r = np.hypot(x1, x2)
        theta = np.arctan2(x2, x1)
        azim = np.cos(m * theta) if kind == "cos" else np.sin(m * theta)
        return amp * jv(m, k * r) * azim
    raise UnsupportedVariantError("tabulated cross-sections carry no eigenfunctions")


def mode_gradient_squared(cs: CrossSection, mode_id: str, pts: np.ndarray) -> np.ndarray:
    """Vectorised |∇v|² at an (N, 2) array of points."""
    x1 = np.asarray(pts)[:, 0]
    x2 = np.asarray(pts)[:, 1]
    if isinstance(cs, Rectangle):
        m, n = _parse_rect_mode(mode_id)
        amp2 = 2.0 ** ((m > 0) + (n > 0))
        km, kn = m * math.pi / cs.side_a, n * math.pi / cs.side_b
        s1, c1 = np.sin(km * x1), np.cos(km * x1)
        s2, c2 = np.sin(kn * x2), np.cos(kn * x2)
        return amp2 * (km**2 * s1**2 * c2**2 + kn**2 * c1**2 * s2**2)
    if isinstance(cs, Disc):
        m, kind, k, amp = _parse_disc_mode(cs, mode_id)
        r = np.hypot(x1, x2)
        theta = np.arctan2(x2, x1)
        az = np.cos(m * theta) if kind == "cos" else np.sin(m * theta)
        daz = -m * np.sin(m * theta) if kind == "cos" else m * np.cos(m * theta)
        vr = amp * k * jvp(m, k * r, 1) * az
        r_safe = np.where(r > 0.0, r, 1.0)
        vth_over_r = amp * jv(m, k * r) * daz / r_safe
        if m == 1:  # J_1(kr)/r -> k/2 at the centre
            vth_over_r = np.where(r > 0.0, vth_over_r, amp * k * 0.5 * daz)
        else:
            vth_over_r = np.where(r > 0.0, vth_over_r, 0.0)
        return vr**2 + vth_over_r**2
    raise UnsupportedVariantError("tabulated cross-sections carry no eigenfunctions")


def fd_neumann_oracle(cs: CrossSection, grid_n: int, count: int) -> list[float]:
    """Lowest ``count`` nonzero eigenvalues of the 5-point Neumann Laplacian.

    Independent verification oracle for the closed-form rectangle spectrum.
    Cell-centred grid with mirror boundary conditions; converges to the
    continuous eigenvalues at rate O(grid_n⁻²).
    """
    if not isinstance(cs, Rectangle):
        raise UnsupportedVariantError("the finite-difference oracle supports rectangles only")
    if grid_n < 16:
        raise ValidationError("grid_n must be at least 16")
    if count < 1:
        raise ValidationError("count must be at least 1")

    def lap1d(n: int, length: float) -> sparse.csr_matrix:
        h = length / n
        main = np.full(n, 2.0)
        main[0] = main[-1] = 1.0  # mirror/Neumann closure
        off = np.full(n - 1, -1.0)
        return sparse.diags([off, main, off], [-1, 0, 1], format="csr") / h**2

    ax = lap1d(grid_n, cs.side_a)
    ay = lap1d(grid_n, cs.side_b)
    eye = sparse.identity(grid_n, format="csr")
    lap = sparse.kron(ax, eye) + sparse.kron(eye, ay)

    n_total = grid_n * grid_n
    rng = np.random.default_rng(0)
    v0 = rng.standard_normal(n_total)
    vals = eigsh(
        lap.tocsc(), k=count + 1, sigma=-1.0, which="LM", v0=v0, return_eigenvectors=False
    )
    vals = np.sort(vals)
    # drop the single zero mode (constant); connected domain guarantees exactly one
    return [float(v) for v in vals[1 : count + 1]]


def cluster_eigenvalues(values, rel_tol: float = 1e-6) -> list[tuple[float, int]]:
    """Group nearly equal eigenvalues into (mean, count) clusters."""
    out: list[list[float]] = []
    for v in sorted(values):
        if out and abs(v - out[-1][-1]) <= rel_tol * max(abs(v), 1e-300):
            out[-1].append(v)
        else:
            out.append([v])
    return [(float(np.mean(c)), len(c)) for c in out]


def cross_section_area(cs: CrossSection) -> float:
    return cs.area
