import math

import numpy as np
import pytest

from rodshape import SvdFailure, rank_abs_tol, svd_lstsq

from helpers import jacobi_singular_values


def test_identity_system():
    res = svd_lstsq(np.eye(3), np.array([1.0, 2.0, 3.0]))
    assert np.allclose(res.solution, [1.0, 2.0, 3.0])
    assert res.residual_norm < 1e-14
    assert res.rank_used == 3


def test_one_dimensional_projection():
    res = svd_lstsq(np.array([[1.0], [1.0]]), np.array([0.0, 2.0]))
    assert abs(res.solution[0] - 1.0) < 1e-14
    assert abs(res.residual_norm - math.sqrt(2.0)) < 1e-14


def test_planted_solution_with_orthogonal_perturbation():
    rng = np.random.default_rng(0)
    a = rng.standard_normal((40, 10))
    x_true = rng.standard_normal(10)
    w = rng.standard_normal(40)
    q, _ = np.linalg.qr(a)  # orthonormal basis of range(a)
    w -= q @ (q.T @ w)  # now w is orthogonal to range(a)
    res = svd_lstsq(a, a @ x_true + w)
    assert np.max(np.abs(res.solution - x_true)) < 1e-10
    assert abs(res.residual_norm - np.linalg.norm(w)) < 1e-10


def test_pseudoinverse_identities():
    rng = np.random.default_rng(1)
    for _ in range(10):
        a = rng.standard_normal((8, 5))
        b = rng.standard_normal(8)
        res = svd_lstsq(a, b)
        # reconstruct the pseudoinverse action and verify A A+ A = A
        u, s, vt = np.linalg.svd(a, full_matrices=False)
        a_pinv = vt.T @ np.diag(1.0 / s) @ u.T
        assert np.linalg.norm(a @ a_pinv @ a - a) <= 1e-11 * np.linalg.norm(a)
        resid = a @ res.solution - b
        assert np.linalg.norm(a.T @ resid) <= 1e-10 * np.linalg.norm(a) * np.linalg.norm(b)


def test_minimum_norm_choice():
    # rank-1 matrix with two unknowns: the minimum-norm solution splits evenly
    a = np.array([[1.0, 1.0]])
    res = svd_lstsq(a, np.array([2.0]))
    assert np.allclose(res.solution, [1.0, 1.0])


def test_truncation_policies():
    a = np.diag([1.0, 0.5, 1e-3])
    b = np.array([1.0, 1.0, 1.0])
    res_abs = svd_lstsq(a, b, abs_cutoff=1e-2)
    assert res_abs.rank_used == 2
    assert res_abs.solution[2] == 0.0
    res_rel = svd_lstsq(a, b, rel_cutoff=1e-8)
    assert res_rel.rank_used == 3
    with pytest.raises(ValueError):
        svd_lstsq(a, b, rel_cutoff=1e-8, abs_cutoff=1e-2)


def test_singular_values_sorted_and_residual_exact():
    rng = np.random.default_rng(2)
    a = rng.standard_normal((12, 6))
    b = rng.standard_normal(12)
    res = svd_lstsq(a, b)
    assert np.all(np.diff(res.singular_values) <= 0)
    assert abs(res.residual_norm - np.linalg.norm(a @ res.solution - b)) <= 1e-12 * max(
        1.0, res.residual_norm
    )


def test_rank_abs_tol_basics():
    assert rank_abs_tol(np.diag([1.0, 0.5, 1e-3]), 1e-2) == 2
    assert rank_abs_tol(np.zeros((4, 3)), 1e-2) == 0
    with pytest.raises(ValueError):
        rank_abs_tol(np.eye(2), 0.0)


def test_rank_monotone_in_tau():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((30, 8)) @ np.diag(10.0 ** -np.arange(8))
    ranks = [rank_abs_tol(a, t) for t in (1e-6, 1e-4, 1e-2, 1.0)]
    assert all(r1 >= r2 for r1, r2 in zip(ranks, ranks[1:]))


def test_step5_design_matrix_rank_against_jacobi_oracle():
    # trivial-potential eigendata, interior point pi/2, even-order block
    from rodshape import spherical_j_table

    mu = np.arange(1000) + 0.5
    x = math.pi / 2
    signs = np.where(np.arange(40) % 2 == 1, -1.0, 1.0)
    block = (signs[:, None] * spherical_j_table(78, mu * x)[0::2]).T
    got = rank_abs_tol(block, 1e-2)
    oracle = int(np.count_nonzero(jacobi_singular_values(block) > 1e-2))
    assert got == oracle
