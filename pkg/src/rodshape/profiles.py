"""Experiment constants and cross-section profiles of the rod.

A profile is the square root a(x) of the cross-section area together with
its first two derivatives on [0, pi].  The reduced boundary-value problem
is derived from it: potential q = a''/a, boundary constant h = a'(0)/a(0),
and forcing constant c = -p/(E*a(0)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import NonPositiveProfile
from .series import eval_S, eval_phi

__all__ = [
    "RodParams",
    "Profile",
    "ProblemB",
    "ClosedFormSolutions",
    "PROFILE_KINDS",
    "make_profile",
    "to_problem_b",
    "omega_to_rho",
]

_VALIDATION_POINTS = 10_000
# exp(w) vanishes below double precision once w < -_EXP_FLOOR
_EXP_FLOOR = 745.0


@dataclass(frozen=True)
class RodParams:
    """Physical constants of the experiment.

    E: Young's modulus, r: density, p: load amplitude at the driven end,
    F0: cross-section area at x = 0.
    """

    E: float
    r: float
    p: float
    F0: float

    def __post_init__(self):
        if not (self.E > 0.0 and self.r > 0.0 and self.F0 > 0.0):
            raise ValueError("E, r and F0 must be positive")
        if self.p == 0.0:
            raise ValueError("load p must be nonzero")


@dataclass(frozen=True)
class ClosedFormSolutions:
    """Analytic solutions of the reduced equation, when the kind admits them."""

    phi: Callable[[float, float], float]
    S: Callable[[float, float], float]


@dataclass(frozen=True)
class Profile:
    """Square root of the cross-section area with analytic derivatives.

    ``scalar_q`` is a plain-float evaluation of a''/a used on the hot path
    of the adaptive integrator, where array dispatch would dominate.
    """

    kind: str
    params: dict
    eval_a: Callable[[np.ndarray], np.ndarray]
    eval_a1: Callable[[np.ndarray], np.ndarray]
    eval_a2: Callable[[np.ndarray], np.ndarray]
    junctions: tuple = ()
    closed_form: Optional[ClosedFormSolutions] = None
    scalar_q: Optional[Callable[[float], float]] = None

    def area(self, x):
        """Cross-section area F(x) = a(x)^2."""
        return np.asarray(self.eval_a(x)) ** 2


@dataclass(frozen=True)
class ProblemB:
    """Reduced inverse problem data derived from a profile."""

    q: Callable[[np.ndarray], np.ndarray]
    h: float
    c: float
    junctions: tuple = ()
    closed_form: Optional[ClosedFormSolutions] = None
    scalar_q: Optional[Callable[[float], float]] = None


def omega_to_rho(omega, params):
    """Map a drive frequency to the spectral variable: rho = omega*sqrt(r/E)."""
    return omega * math.sqrt(params.r / params.E)


def _trig_pair(kappa2, x):
    """(cos(k*x), sin(k*x)/k) for k = sqrt(kappa2), continued to kappa2 <= 0."""
    if kappa2 > 1e-8:
        k = math.sqrt(kappa2)
        return math.cos(k * x), math.sin(k * x) / k
    if kappa2 < -1e-8:
        m = math.sqrt(-kappa2)
        return math.cosh(m * x), math.sinh(m * x) / m
    w = kappa2 * x * x
    cos_like = 1.0 - w / 2.0 + w * w / 24.0
    sin_like = x * (1.0 - w / 6.0 + w * w / 120.0)
    return cos_like, sin_like


def _constant_profile(params):
    f0 = float(params.get("F0", 1.0))
    if f0 <= 0.0:
        raise NonPositiveProfile("constant profile needs F0 > 0")
    a0 = math.sqrt(f0)

    def a(x):
        return np.full_like(np.asarray(x, dtype=float), a0)

    def zero(x):
        return np.zeros_like(np.asarray(x, dtype=float))

    closed = ClosedFormSolutions(
        phi=lambda rho, x: _trig_pair(rho * rho, x)[0],
        S=lambda rho, x: _trig_pair(rho * rho, x)[1],
    )
    return a, zero, zero, (), closed, lambda x: 0.0


def _quartic_profile(params):
    pa = float(params["a"])
    pb = float(params["b"])

    def a(x):
        return (pa + pb * np.asarray(x, dtype=float)) ** 2

    def a1(x):
        return 2.0 * pb * (pa + pb * np.asarray(x, dtype=float))

    def a2(x):
        return np.full_like(np.asarray(x, dtype=float), 2.0 * pb * pb)

    # The expansions terminate: two even-order terms and one odd-order term.
    def g_coeffs(x):
        return np.array(
            [
                pb * x * (2.0 * pa + pb * x) / pa**2,
                -(pb**3) * x**3 / (pa**2 * (pa + pb * x)),
            ]
        )

    def s_coeffs(x):
        return np.array([pb**2 * x**2 / (pa * (pa + pb * x))])

    closed = ClosedFormSolutions(
        phi=lambda rho, x: eval_phi(g_coeffs(x), rho, x),
        S=lambda rho, x: eval_S(s_coeffs(x), rho, x),
    )
    return a, a1, a2, (), closed, lambda x: 2.0 * pb * pb / (pa + pb * x) ** 2


def _exponential_profile(params):
    pa = float(params["a"])
    pb = float(params["b"])

    def a(x):
        return np.exp(pa + pb * np.asarray(x, dtype=float))

    def a1(x):
        return pb * a(x)

    def a2(x):
        return pb * pb * a(x)

    def phi(rho, x):
        cos_like, sin_like = _trig_pair(rho * rho - pb * pb, x)
        return cos_like + pb * sin_like

    def s_sol(rho, x):
        return _trig_pair(rho * rho - pb * pb, x)[1]

    return a, a1, a2, (), ClosedFormSolutions(phi=phi, S=s_sol), lambda x: pb * pb


def _cos_bump(x, lo, hi, center, freq, amp):
    """amp*(1 + cos(freq*(x - center))) inside (lo, hi), with derivatives.

    The window ends are the zeros of 1 + cos, so the bump joins the
    background with continuous value and slope.
    """
    x = np.asarray(x, dtype=float)
    inside = (x > lo) & (x < hi)
    u = freq * (x - center)
    b = np.where(inside, amp * (1.0 + np.cos(u)), 0.0)
    b1 = np.where(inside, -amp * freq * np.sin(u), 0.0)
    b2 = np.where(inside, -amp * freq * freq * np.cos(u), 0.0)
    return b, b1, b2


def _bump_pair_cos_profile(params):
    # Two cosine impurities on an otherwise unit cross section: a bulge
    # centered at pi/3 and a constriction centered at 3*pi/4.
    seg1 = (math.pi / 6.0, math.pi / 2.0, math.pi / 3.0, 6.0, 0.25)
    seg2 = (5.0 * math.pi / 8.0, 7.0 * math.pi / 8.0, 3.0 * math.pi / 4.0, 8.0, -0.2)

    def parts(x):
        b1v, b1d, b1dd = _cos_bump(x, *seg1)
        b2v, b2d, b2dd = _cos_bump(x, *seg2)
        return b1v + b2v, b1d + b2d, b1dd + b2dd

    def a(x):
        return 1.0 + parts(x)[0]

    def a1(x):
        return parts(x)[1]

    def a2(x):
        return parts(x)[2]

    def scalar_q(x):
        for lo, hi, center, freq, amp in (seg1, seg2):
            if lo < x < hi:
                cu = math.cos(freq * (x - center))
                return -amp * freq * freq * cu / (1.0 + amp * (1.0 + cu))
        return 0.0

    junctions = (seg1[0], seg1[1], seg2[0], seg2[1])
    return a, a1, a2, junctions, None, scalar_q


def _exp_bump(x, k, c_hi, c_lo, amp):
    """amp*exp(1 - pi^2/P) with P = (c_hi - k*x)*(k*x - c_lo), supported on P > 0.

    All derivatives vanish at the window ends, so the bump is smooth.
    """
    x = np.asarray(x, dtype=float)
    p = (c_hi - k * x) * (k * x - c_lo)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        t = np.where(p > 0.0, math.pi**2 / p, np.inf)
    live = t < _EXP_FLOOR
    ps = np.where(live, p, 1.0)
    e = np.where(live, amp * np.exp(1.0 - math.pi**2 / ps), 0.0)
    p1 = -2.0 * k * k * x + k * (c_hi + c_lo)
    w1 = np.where(live, math.pi**2 * p1 / ps**2, 0.0)
    w2 = np.where(
        live, math.pi**2 * (-2.0 * k * k * ps - 2.0 * p1 * p1) / ps**3, 0.0
    )
    return e, e * w1, e * (w2 + w1 * w1)


def _bump_pair_exp_profile(params):
    # Two compact-support exponential impurities: a bulge centered at pi/3
    # and a constriction centered at 3*pi/4.
    seg1 = (12.0, 5.0 * math.pi, 3.0 * math.pi, 0.1)
    seg2 = (40.0, 31.0 * math.pi, 29.0 * math.pi, -1.0 / 15.0)

    def parts(x):
        b1v, b1d, b1dd = _exp_bump(x, *seg1)
        b2v, b2d, b2dd = _exp_bump(x, *seg2)
        return b1v + b2v, b1d + b2d, b1dd + b2dd

    def a(x):
        return 1.0 + parts(x)[0]

    def a1(x):
        return parts(x)[1]

    def a2(x):
        return parts(x)[2]

    def scalar_q(x):
        pi2 = math.pi**2
        for k, c_hi, c_lo, amp in (seg1, seg2):
            p = (c_hi - k * x) * (k * x - c_lo)
            if p <= 0.0 or pi2 / p >= _EXP_FLOOR:
                continue
            e = amp * math.exp(1.0 - pi2 / p)
            p1 = -2.0 * k * k * x + k * (c_hi + c_lo)
            w1 = pi2 * p1 / (p * p)
            w2 = pi2 * (-2.0 * k * k * p - 2.0 * p1 * p1) / p**3
            return e * (w2 + w1 * w1) / (1.0 + e)
        return 0.0

    junctions = (
        math.pi / 4.0,
        5.0 * math.pi / 12.0,
        29.0 * math.pi / 40.0,
        31.0 * math.pi / 40.0,
    )
    return a, a1, a2, junctions, None, scalar_q


def _tabulated_profile(params):
    from scipy.interpolate import CubicSpline

    x = np.asarray(params["x"], dtype=float)
    a_vals = np.asarray(params["a"], dtype=float)
    if x.ndim != 1 or x.shape != a_vals.shape or x.size < 4:
        raise ValueError("tabulated profile needs matching 1-D x and a, >= 4 points")
    spline = CubicSpline(x, a_vals, bc_type="natural")
    d1 = spline.derivative(1)
    d2 = spline.derivative(2)
    return (
        lambda xx: spline(np.asarray(xx, dtype=float)),
        lambda xx: d1(np.asarray(xx, dtype=float)),
        lambda xx: d2(np.asarray(xx, dtype=float)),
        (),
        None,
        lambda xx: float(d2(xx)) / float(spline(xx)),
    )


_BUILDERS = {
    "constant": _constant_profile,
    "quartic": _quartic_profile,
    "exponential": _exponential_profile,
    "bump_pair_cos": _bump_pair_cos_profile,
    "bump_pair_exp": _bump_pair_exp_profile,
    "tabulated": _tabulated_profile,
}

PROFILE_KINDS = tuple(_BUILDERS)


def make_profile(kind, params=None):
    """Build a profile of the given kind and validate its positivity."""
    if kind not in _BUILDERS:
        raise ValueError(f"unknown profile kind: {kind!r}")
    params = dict(params or {})
    a, a1, a2, junctions, closed, scalar_q = _BUILDERS[kind](params)
    grid = np.linspace(0.0, math.pi, _VALIDATION_POINTS)
    vals = np.asarray(a(grid), dtype=float)
    if not np.all(vals > 0.0):
        raise NonPositiveProfile(
            f"profile kind {kind!r} is not positive everywhere on [0, pi]"
        )
    return Profile(
        kind=kind,
        params=params,
        eval_a=a,
        eval_a1=a1,
        eval_a2=a2,
        junctions=junctions,
        closed_form=closed,
        scalar_q=scalar_q,
    )


def to_problem_b(profile, params):
    """Reduce the rod problem to potential form: q = a''/a, h = a'(0)/a(0)."""
    a0 = float(profile.eval_a(0.0))

    def q(x):
        return np.asarray(profile.eval_a2(x), dtype=float) / np.asarray(
            profile.eval_a(x), dtype=float
        )

    h = float(profile.eval_a1(0.0)) / a0
    c = -params.p / (params.E * a0)
    return ProblemB(
        q=q,
        h=h,
        c=c,
        junctions=profile.junctions,
        closed_form=profile.closed_form,
        scalar_q=profile.scalar_q,
    )
