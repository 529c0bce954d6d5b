import math

import numpy as np
import pytest

from rodshape import (
    PhysicalityViolation,
    RodParams,
    eval_phi,
    eval_S,
    eval_T,
    integrate_phi_S,
    integrate_solution,
    make_profile,
    recover_F,
    recover_q_h,
    to_problem_b,
)

PI = math.pi


def quartic_g(x, a=1.0, b=1.0):
    return np.array([b * x * (2 * a + b * x) / a**2, -(b**3) * x**3 / (a**2 * (a + b * x))])


def quartic_s(x, a=1.0, b=1.0):
    return np.array([b**2 * x**2 / (a * (a + b * x))])


def test_zero_coefficients_reduce_to_free_solutions():
    for rho in (0.3, 1.0, 7.9):
        for x in (0.1, 1.0, PI):
            assert abs(eval_phi([], rho, x) - math.cos(rho * x)) < 1e-15
            assert abs(eval_S([], rho, x) - math.sin(rho * x) / rho) < 1e-15
            assert abs(eval_T([], rho, x) - math.sin(rho * (x - PI)) / rho) < 1e-15


def test_phi_at_origin_is_one_plus_g0():
    g = [0.7, -0.3, 0.05]
    assert abs(eval_phi(g, 3.3, 0.0) - (1.0 + g[0])) < 1e-15


def test_quartic_two_term_series_is_exact():
    prof = make_profile("quartic", {"a": 1.0, "b": 1.0})
    pb = to_problem_b(prof, RodParams(E=3.0, r=4.0, p=2.0, F0=1.0))
    for rho in np.linspace(0.0, 20.0, 9):
        for x in (PI / 4, PI / 2, 3 * PI / 4, PI):
            sol = integrate_solution(pb, float(rho), 1.0, pb.h, x_to=float(x))
            assert abs(eval_phi(quartic_g(x), rho, x) - sol.y_end) < 1e-10
            s_sol = integrate_solution(pb, float(rho), 0.0, 1.0, x_to=float(x))
            assert abs(eval_S(quartic_s(x), rho, x) - s_sol.y_end) < 1e-10


def test_eval_S_zero_rho_limit():
    # limit value x*(1 + s0/3), cross-checked against the identity
    # s0(x) = 3*(S(0, x)/x - 1) on the quartic profile
    prof = make_profile("quartic", {"a": 1.0, "b": 1.0})
    pb = to_problem_b(prof, RodParams(E=3.0, r=4.0, p=2.0, F0=1.0))
    for x in (0.5, 1.2, PI):
        s0 = quartic_s(x)[0]
        got = eval_S([s0], 0.0, x)
        assert abs(got - x * (1.0 + s0 / 3.0)) < 1e-14
        s_sol = integrate_solution(pb, 0.0, 0.0, 1.0, x_to=float(x))
        assert abs(3.0 * (s_sol.y_end / x - 1.0) - s0) < 1e-9


def test_eval_T_structure():
    assert eval_T([0.4, 0.2], 2.0, PI) == 0.0
    # with zero coefficients T is the shifted sine for any potential-free case
    assert abs(eval_T([], 1.0, 0.0) - math.sin(-PI)) < 1e-15
    # zero-rho limit mirrors the S one around the right endpoint
    assert abs(eval_T([0.3], 0.0, 1.0) - (1.0 - PI) * (1.0 + 0.1)) < 1e-14


def test_recover_F():
    assert np.allclose(recover_F(np.zeros(5), 1.0), 1.0)
    xs = np.linspace(0.0, PI, 11)
    assert np.allclose(recover_F(xs * (2 + xs), 1.0), (1.0 + xs) ** 4, rtol=1e-14)
    assert abs(recover_F(np.array([-0.5]), 4.0)[0] - 1.0) < 1e-15
    with pytest.raises(PhysicalityViolation):
        recover_F(np.array([0.0, -1.0, 0.2]), 1.0)


def test_recover_q_h():
    xs = np.linspace(0.0, PI, 401)
    q, h = recover_q_h(np.zeros_like(xs), xs)
    assert np.allclose(q, 0.0, atol=1e-12) and abs(h) < 1e-12

    g0 = xs * (2.0 + xs)
    q, h = recover_q_h(g0, xs)
    assert np.max(np.abs(q - 2.0 / (1.0 + xs) ** 2)) < 1e-3
    assert abs(h - 2.0) < 1e-6

    g0 = np.exp(xs) - 1.0
    q, h = recover_q_h(g0, xs)
    assert np.max(np.abs(q - 1.0)) < 1e-3
    assert abs(h - 1.0) < 1e-6

    with pytest.raises(PhysicalityViolation):
        recover_q_h(np.full(7, -1.0), np.linspace(0, 1, 7))
    with pytest.raises(ValueError):
        recover_q_h(np.zeros(4), np.linspace(0, 1, 4))


def test_truncation_error_nonincreasing_for_exponential():
    # least-squares fits of increasing order against the oracle must not
    # lose sup accuracy on the fitted interval
    prof = make_profile("exponential", {"a": 1.0, "b": 1.0})
    pb = to_problem_b(prof, RodParams(E=3.0, r=4.0, p=2.0, F0=math.exp(2.0)))
    rhos = np.linspace(0.01, 10.0, 200)
    oracle = np.array([integrate_phi_S(pb, float(r))[0] for r in rhos])
    sups = []
    for n_ord in range(0, 6):
        from rodshape import spherical_j_table

        table = spherical_j_table(2 * n_ord, PI * rhos)
        signs = np.where(np.arange(n_ord + 1) % 2 == 1, -1.0, 1.0)
        design = (signs[:, None] * table[0::2]).T
        coef, *_ = np.linalg.lstsq(design, oracle - np.cos(PI * rhos), rcond=None)
        fit = np.array([eval_phi(coef, float(r), PI) for r in rhos])
        sups.append(np.max(np.abs(fit - oracle)))
    for lo, hi in zip(sups[1:], sups[:-1]):
        assert lo <= hi + 1e-12
