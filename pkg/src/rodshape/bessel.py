"""Spherical Bessel functions of the first kind for real arguments.

Evaluation is regime-switched for stability.  Orders at or below the
argument are reached by forward recurrence from the closed forms of j0 and
j1; orders above the argument use a downward Miller recurrence with
rescaling, normalized against j0 (or j1 where j0 sits near a zero of sin).
Tiny arguments go through the ascending power series, which is free of
cancellation.  Negative arguments are reduced by parity before evaluation,
so j_n(-z) == (-1)**n * j_n(z) holds exactly.

Each table entry depends only on its own order and argument, never on the
requested maximal order, so batched and single evaluations agree bitwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["BesselBatch", "spherical_j", "spherical_j_batch", "spherical_j_table"]

# |z| below _SERIES_CUTOFF*(n+1) is evaluated by the ascending series.
_SERIES_CUTOFF = 1e-4
# Downward recurrence values are rescaled once they exceed this bound.
_RESCALE_LIMIT = 1e250
_RESCALE = 1e-250
# Minimal start order of the downward recurrence.  Keeping it fixed for all
# n_max up to ~290 makes table entries independent of n_max.
_START_FLOOR = 360


@dataclass(frozen=True)
class BesselBatch:
    """Values j_0(z) .. j_{n_max}(z) at a single real argument."""

    n_max: int
    z: float
    values: np.ndarray


def _series_jn(n, z):
    """Ascending series j_n(z) = z^n/(2n+1)!! * (1 - t/(2n+3) + ...), t = z^2/2.

    Intended for |z| < _SERIES_CUTOFF*(n+1); six correction terms leave the
    truncation error far below double precision there.
    """
    lead = np.ones_like(z)
    for m in range(1, n + 1):
        lead = lead * (z / (2 * m + 1))
    t = 0.5 * z * z
    term = np.ones_like(z)
    total = np.ones_like(z)
    for k in range(1, 7):
        term = term * (-t / (k * (2 * (n + k) + 1)))
        total = total + term
    return lead * total


def _miller_block(n_max, z):
    """Downward Miller recurrence, valid for rows with order >= z.

    The fixed start order carries enough margin for the unwanted solution to
    be suppressed below double precision by the time order n_max is reached.
    Running values are rescaled on the fly; the final normalization anchors
    on the exact j0, or j1 when z sits near a zero of sin.
    """
    start = max(_START_FLOOR, n_max + 64 + int(4.0 * (n_max + 1) ** (1.0 / 3.0)))
    buf = np.zeros((n_max + 1, z.size))
    p_hi = np.zeros_like(z)
    p = np.full_like(z, 1e-30)
    for n in range(start, 0, -1):
        if n <= n_max:
            buf[n] = p
        p_lo = (2 * n + 1) / z * p - p_hi
        p_hi = p
        p = p_lo
        # One step grows |p| by at most (2*start+1)/z <= ~1e7 for the z this
        # branch sees, so checking every fourth step cannot overflow.
        if n % 4 == 0:
            big = np.abs(p) > _RESCALE_LIMIT
            if big.any():
                p[big] *= _RESCALE
                p_hi[big] *= _RESCALE
                buf[:, big] *= _RESCALE
    buf[0] = p
    j0 = np.sin(z) / z
    j1 = (j0 - np.cos(z)) / z
    use0 = np.abs(buf[0]) >= np.abs(buf[1])
    denom0 = np.where(buf[0] == 0.0, 1.0, buf[0])
    denom1 = np.where(buf[1] == 0.0, 1.0, buf[1])
    scale = np.where(use0, j0 / denom0, j1 / denom1)
    return buf * scale


def spherical_j_table(n_max, z):
    """Evaluate j_0(z) .. j_{n_max}(z) for every element of z.

    Returns an array of shape (n_max+1,) + shape(z).
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    z = np.asarray(z, dtype=float)
    shape = z.shape
    zr = np.atleast_1d(z).ravel()
    out = np.zeros((n_max + 1, zr.size))
    az = np.abs(zr)
    zero = az == 0.0
    out[0, zero] = 1.0
    pos = ~zero
    if pos.any():
        azp = az[pos]
        sub = np.zeros((n_max + 1, azp.size))
        s = np.sin(azp)
        c = np.cos(azp)
        sub[0] = s / azp
        if n_max >= 1:
            # Forward recurrence fills row n only where az >= n (the stable
            # regime); runaway values elsewhere are clipped and discarded.
            j_prev = sub[0].copy()
            j_cur = (sub[0] - c) / azp
            np.copyto(sub[1], j_cur, where=azp >= 1.0)
            for n in range(2, n_max + 1):
                j_next = np.clip((2 * n - 1) / azp * j_cur - j_prev, -1e30, 1e30)
                j_prev = j_cur
                j_cur = j_next
                np.copyto(sub[n], j_cur, where=azp >= n)
            mil = azp < n_max
            if mil.any():
                mvals = _miller_block(n_max, azp[mil])
                above = np.arange(n_max + 1)[:, None] > azp[mil][None, :]
                sub[:, mil] = np.where(above, mvals, sub[:, mil])
        n_lo = max(1, int(azp.min() / _SERIES_CUTOFF))
        for n in range(n_lo, n_max + 1):
            small = azp < _SERIES_CUTOFF * (n + 1)
            if small.any():
                sub[n, small] = _series_jn(n, azp[small])
        out[:, pos] = sub
    neg = zr < 0.0
    if neg.any():
        parity = np.where(np.arange(n_max + 1) % 2 == 1, -1.0, 1.0)
        out[:, neg] *= parity[:, None]
    return out.reshape((n_max + 1,) + shape)


def spherical_j(n, z):
    """Spherical Bessel function j_n(z) of the first kind, real z of either sign."""
    if n < 0:
        raise ValueError("order must be nonnegative")
    if not math.isfinite(z):
        raise ValueError("argument must be finite")
    return float(spherical_j_table(n, float(z))[n])


def spherical_j_batch(n_max, z):
    """All orders 0..n_max at a single argument, packed as a BesselBatch."""
    values = spherical_j_table(n_max, float(z))
    return BesselBatch(n_max=n_max, z=float(z), values=values)
