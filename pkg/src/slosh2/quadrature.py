"""Tensor-product quadrature over cross-sections and vertical intervals.

Composite rules with ``n`` cells per dimension: a 2-point Gauss-Legendre rule
per cell (order 4) on bounded non-periodic directions, plain midpoints on the
disc's azimuthal angle (periodic, hence trigonometrically exact for the modes
used here).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import UnsupportedVariantError, ValidationError
from .membrane import Disc, Rectangle


def gauss2_nodes(lo: float, hi: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite 2-point Gauss rule with n cells on (lo, hi)."""
    if n < 1:
        raise ValidationError("at least one quadrature cell required")
    h = (hi - lo) / n
    centers = lo + (np.arange(n) + 0.5) * h
    off = h / (2.0 * math.sqrt(3.0))
    nodes = np.concatenate([centers - off, centers + off])
    weights = np.full(2 * n, 0.5 * h)
    return nodes, weights


def midpoint_nodes(lo: float, hi: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    h = (hi - lo) / n
    return lo + (np.arange(n) + 0.5) * h, np.full(n, h)


def cross_section_nodes(cs, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature points (N, 2) and weights (N,) covering the cross-section."""
    if isinstance(cs, Rectangle):
        x1, w1 = gauss2_nodes(0.0, cs.side_a, n)
        x2, w2 = gauss2_nodes(0.0, cs.side_b, n)
        p1, p2 = np.meshgrid(x1, x2, indexing="ij")
        ww = np.outer(w1, w2)
        pts = np.column_stack([p1.ravel(), p2.ravel()])
        return pts, ww.ravel()
    if isinstance(cs, Disc):
        r, wr = gauss2_nodes(0.0, cs.radius, n)
        th, wth = midpoint_nodes(0.0, 2.0 * math.pi, n)
        rr, tt = np.meshgrid(r, th, indexing="ij")
        ww = np.outer(r * wr, wth)  # area element r dr dtheta
        pts = np.column_stack([(rr * np.cos(tt)).ravel(), (rr * np.sin(tt)).ravel()])
        return pts, ww.ravel()
    raise UnsupportedVariantError("quadrature needs a rectangle or disc cross-section")
