"""Truncated spherical-Bessel expansions of the Sturm-Liouville solutions.

The three solution families are represented by coefficient vectors over a
spherical-Bessel basis: even orders for the cosine-type solution, odd orders
(divided by the spectral parameter) for the two sine-type solutions.  The
leading coefficient carries the physics: the cross-section area and the
reduced potential are read off it directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bessel import spherical_j_table
from .errors import PhysicalityViolation

__all__ = [
    "EndpointCoeffs",
    "InteriorCoeffs",
    "eval_phi",
    "eval_S",
    "eval_T",
    "recover_F",
    "recover_q_h",
]


@dataclass
class EndpointCoeffs:
    """Expansion coefficients of phi and S at the right endpoint.

    ``g`` holds g_0(pi)..g_N1(pi), ``s`` holds s_0(pi)..s_N2(pi).  ``qn`` is
    the residual norm of the fit that produced them and ``rn`` the penalized
    variant used for model selection; ``table`` retains the full
    (N, Q_N, R_N) selection diagnostics when available.
    """

    N1: int
    N2: int
    g: np.ndarray
    s: np.ndarray
    qn: float
    rn: float
    table: np.ndarray | None = None
    rank: int = -1


@dataclass
class InteriorCoeffs:
    """Expansion coefficients recovered at one interior point x."""

    x: float
    N1: int
    N2: int
    g: np.ndarray
    t: np.ndarray
    residual_norm: float
    rank_used: int


def _alternating(coeffs):
    c = np.asarray(coeffs, dtype=float)
    signs = np.where(np.arange(c.size) % 2 == 1, -1.0, 1.0)
    return c * signs


def eval_phi(g, rho, x):
    """cos(rho*x) plus the even-order expansion with coefficients g at x."""
    g = np.asarray(g, dtype=float)
    rho_arr = np.asarray(rho, dtype=float)
    z = rho_arr * x
    table = spherical_j_table(2 * (g.size - 1) if g.size else 0, z)
    val = np.cos(z)
    if g.size:
        val = val + np.tensordot(_alternating(g), table[0::2], axes=(0, 0))
    return float(val) if rho_arr.ndim == 0 else val


def _odd_sum(coeffs, rho, offset):
    """sin(rho*offset)/rho + (1/rho) * sum of odd-order terms at rho*offset.

    At rho == 0 the exact limit offset*(1 + c0/3) is used; only the leading
    coefficient survives there.
    """
    c = np.asarray(coeffs, dtype=float)
    rho_arr = np.asarray(rho, dtype=float)
    scalar = rho_arr.ndim == 0
    rho_flat = np.atleast_1d(rho_arr).astype(float)
    out = np.empty_like(rho_flat)
    zero = rho_flat == 0.0
    if zero.any():
        c0 = c[0] if c.size else 0.0
        out[zero] = offset * (1.0 + c0 / 3.0)
    nz = ~zero
    if nz.any():
        r = rho_flat[nz]
        z = r * offset
        val = np.sin(z) / r
        if c.size:
            table = spherical_j_table(2 * c.size - 1, z)
            val = val + np.tensordot(_alternating(c), table[1::2], axes=(0, 0)) / r
        out[nz] = val
    if scalar:
        return float(out[0])
    return out.reshape(rho_arr.shape)


def eval_S(s, rho, x):
    """Sine-type solution normalized at the origin, truncated to coefficients s."""
    return _odd_sum(s, rho, x)


def eval_T(t, rho, x):
    """Sine-type solution normalized at the right endpoint, coefficients t."""
    return _odd_sum(t, rho, x - math.pi)


def recover_F(g0_grid, F0):
    """Cross-section area from the leading coefficient: F = F0*(g0 + 1)^2."""
    g0 = np.asarray(g0_grid, dtype=float)
    if np.any(g0 <= -1.0):
        raise PhysicalityViolation(
            "leading coefficient reaches -1; reconstructed area is not positive"
        )
    return F0 * (g0 + 1.0) ** 2


def recover_q_h(g0_grid, x_grid):
    """Potential q = g0''/(g0+1) and boundary constant h = g0'(0).

    Second derivatives use central differences (one-sided at the ends); the
    boundary slope uses a fourth-order one-sided stencil.  The grid must be
    uniform with at least five points.
    """
    g0 = np.asarray(g0_grid, dtype=float)
    x = np.asarray(x_grid, dtype=float)
    if g0.shape != x.shape or g0.ndim != 1 or g0.size < 5:
        raise ValueError("need matching 1-D grids with at least 5 points")
    steps = np.diff(x)
    dx = steps[0]
    if not np.allclose(steps, dx, rtol=1e-10, atol=1e-12):
        raise ValueError("x grid must be uniform")
    if np.any(np.abs(g0 + 1.0) <= 1e-8):
        raise PhysicalityViolation("g0 + 1 vanishes within tolerance")
    d2 = np.empty_like(g0)
    d2[1:-1] = (g0[:-2] - 2.0 * g0[1:-1] + g0[2:]) / dx**2
    d2[0] = (2.0 * g0[0] - 5.0 * g0[1] + 4.0 * g0[2] - g0[3]) / dx**2
    d2[-1] = (2.0 * g0[-1] - 5.0 * g0[-2] + 4.0 * g0[-3] - g0[-4]) / dx**2
    q = d2 / (g0 + 1.0)
    h = (-25.0 * g0[0] + 48.0 * g0[1] - 36.0 * g0[2] + 16.0 * g0[3] - 3.0 * g0[4]) / (
        12.0 * dx
    )
    return q, float(h)
