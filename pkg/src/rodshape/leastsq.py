"""Dense least squares via singular value decomposition with rank truncation.

The overdetermined systems of the recovery pipeline are solved through the
Moore-Penrose pseudoinverse; singular values below a cutoff are discarded.
Two cutoff policies exist because the endpoint fit truncates relative to the
largest singular value while the interior solve uses a fixed absolute
threshold.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SvdFailure

__all__ = ["LstsqResult", "svd_lstsq", "rank_abs_tol"]


@dataclass
class LstsqResult:
    """Minimum-norm least-squares solution and its diagnostics."""

    solution: np.ndarray
    residual_norm: float
    singular_values: np.ndarray
    rank_used: int


def _svd(a):
    try:
        return np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise SvdFailure(str(exc)) from exc


def svd_lstsq(a, b, rel_cutoff=None, abs_cutoff=None):
    """Minimum-norm least-squares solution of a @ x = b.

    Exactly one cutoff policy applies: singular values above
    ``rel_cutoff * sigma_max`` (default ``m * machine epsilon``) or above the
    absolute threshold ``abs_cutoff`` are kept; the rest are truncated.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 2 or b.ndim != 1 or a.shape[0] != b.size:
        raise ValueError("need a 2-D matrix and a matching 1-D right-hand side")
    if rel_cutoff is not None and abs_cutoff is not None:
        raise ValueError("choose a single truncation policy")
    u, sigma, vt = _svd(a)
    ub = u.T @ b
    if abs_cutoff is not None:
        thresh = abs_cutoff
    else:
        rel = a.shape[0] * np.finfo(float).eps if rel_cutoff is None else rel_cutoff
        thresh = rel * (sigma[0] if sigma.size else 0.0)
    keep = sigma > thresh
    rank = int(np.count_nonzero(keep))
    x = vt[keep].T @ (ub[keep] / sigma[keep])
    residual = float(np.linalg.norm(a @ x - b))
    return LstsqResult(
        solution=x, residual_norm=residual, singular_values=sigma, rank_used=rank
    )


def rank_abs_tol(a, tau):
    """Number of singular values strictly greater than tau."""
    if tau <= 0.0:
        raise ValueError("tau must be positive")
    a = np.asarray(a, dtype=float)
    try:
        sigma = np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise SvdFailure(str(exc)) from exc
    return int(np.count_nonzero(sigma > tau))
