"""Independent oracles used by the tests.

Everything here is deliberately written from first principles (power
series, Jacobi rotations, finite differences) so the checks do not share
code paths with the implementation they verify.
"""

import math

import numpy as np


def series_spherical_j(n, z, terms=120):
    """Ascending power series of j_n summed in float to machine precision."""
    if z == 0.0:
        return 1.0 if n == 0 else 0.0
    sign = (-1.0) ** n if z < 0.0 else 1.0
    z = abs(z)
    lead = 1.0
    for m in range(1, n + 1):
        lead *= z / (2 * m + 1)
    total = 1.0
    term = 1.0
    for k in range(1, terms):
        term *= -0.5 * z * z / (k * (n + k + 0.5))
        total += term
        if abs(term) < 1e-18 * abs(total):
            break
    return sign * lead * total


def jacobi_singular_values(a, sweeps=60, tol=1e-14):
    """Singular values via one-sided Jacobi rotations on the columns."""
    a = np.array(a, dtype=float)
    n = a.shape[1]
    for _ in range(sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[:, p] @ a[:, q]
                app = a[:, p] @ a[:, p]
                aqq = a[:, q] @ a[:, q]
                denom = math.sqrt(app * aqq)
                if denom > 0.0:
                    off = max(off, abs(apq) / denom)
                if denom == 0.0 or abs(apq) <= tol * denom:
                    continue
                zeta = (aqq - app) / (2.0 * apq)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.hypot(1.0, zeta))
                c = 1.0 / math.hypot(1.0, t)
                s = c * t
                col_p = a[:, p].copy()
                a[:, p] = c * col_p - s * a[:, q]
                a[:, q] = s * col_p + c * a[:, q]
        if off < tol:
            break
    return np.sort(np.linalg.norm(a, axis=0))[::-1]


def second_derivative_stencil(y, dx):
    """Five-point second derivative on a uniform grid (interior only)."""
    y = np.asarray(y, dtype=float)
    return (-y[:-4] + 16 * y[1:-3] - 30 * y[2:-2] + 16 * y[3:-1] - y[4:]) / (
        12.0 * dx * dx
    )


def recompute_n_star(table):
    """Selection rule applied to a (N, Q_N, R_N) table: order-of-magnitude
    ties broken toward the smallest order."""
    table = np.asarray(table, dtype=float)
    rs = table[:, 2]
    tie = 10.0 * rs.min() + 1e-12 * (1.0 + rs.max())
    return int(table[np.argmax(rs <= tie), 0])
