import math

import numpy as np

from rodshape import spherical_j, spherical_j_batch, spherical_j_table

from helpers import series_spherical_j

PI = math.pi

# j_5(2.5) computed with the independent ascending-series oracle below.
J5_AT_2P5 = 0.007357638737768936


def test_series_oracle_reproduces_frozen_value():
    assert abs(series_spherical_j(5, 2.5) - J5_AT_2P5) < 1e-18


def test_closed_form_points():
    assert spherical_j(0, 0.0) == 1.0
    assert abs(spherical_j(1, PI) - 1.0 / PI) < 1e-15
    assert abs(spherical_j(5, 2.5) - J5_AT_2P5) < 1e-13


def test_batch_trivial_points():
    b = spherical_j_batch(3, 0.0)
    assert b.values.tolist() == [1.0, 0.0, 0.0, 0.0]

    b = spherical_j_batch(2, PI)
    # j2(pi) = (3/pi^3 - 1/pi) sin(pi) - (3/pi^2) cos(pi) = 3/pi^2
    want = [0.0, 1.0 / PI, 3.0 / PI**2]
    assert np.allclose(b.values, want, rtol=0, atol=1e-15)

    b = spherical_j_batch(50, 1e-8)
    dfact = 1.0
    for n in range(51):
        if n:
            dfact *= 2 * n + 1
        assert abs(b.values[n] - 1e-8**n / dfact) <= 1e-15 * abs(b.values[n]) + 1e-300


def test_small_argument_series_regime():
    # |z| < 1e-4*(n+1) must avoid the cancellation of the closed forms
    for n, z in [(1, 1e-4), (1, 1.9e-4), (3, 2.5e-4), (20, 1e-3), (7, 1e-12)]:
        got = spherical_j(n, z)
        want = series_spherical_j(n, z)
        assert abs(got - want) < 1e-16, (n, z)


def test_parity_exact():
    for n in range(61):
        for z in (0.1, 1.0, PI, 10.0):
            assert spherical_j(n, -z) == (-1.0) ** n * spherical_j(n, z)


def test_three_term_recurrence_residual():
    rng = np.random.default_rng(7)
    for _ in range(40):
        n_max = int(rng.integers(2, 120))
        z = float(rng.uniform(-60.0, 60.0))
        if abs(z) < 1e-6:
            continue
        vals = spherical_j_table(n_max, z)
        for n in range(1, n_max):
            resid = abs(vals[n - 1] + vals[n + 1] - (2 * n + 1) * vals[n] / z)
            assert resid <= 1e-12 * max(1.0, abs(vals[n]))


def test_closed_forms_low_orders_random():
    rng = np.random.default_rng(11)
    z = rng.uniform(-50.0, 50.0, size=1000)
    z = z[np.abs(z) > 1e-3]
    j0 = np.sin(z) / z
    j1 = np.sin(z) / z**2 - np.cos(z) / z
    j2 = (3.0 / z**3 - 1.0 / z) * np.sin(z) - 3.0 / z**2 * np.cos(z)
    table = spherical_j_table(2, z)
    assert np.max(np.abs(table[0] - j0)) < 1e-13
    assert np.max(np.abs(table[1] - j1)) < 1e-13
    assert np.max(np.abs(table[2] - j2)) < 1e-13


def test_batch_single_consistency():
    rng = np.random.default_rng(3)
    for _ in range(25):
        n_max = int(rng.integers(0, 90))
        z = float(rng.uniform(-80.0, 80.0))
        batch = spherical_j_batch(n_max, z)
        assert batch.values.shape == (n_max + 1,)
        for n in range(0, n_max + 1, max(1, n_max // 7)):
            single = spherical_j(n, z)
            assert batch.values[n] == single or abs(
                batch.values[n] - single
            ) <= 1e-14 * abs(single)


def test_magnitude_bound():
    rng = np.random.default_rng(5)
    for _ in range(30):
        n_max = int(rng.integers(0, 150))
        z = float(rng.uniform(-1e4, 1e4))
        assert np.all(np.abs(spherical_j_table(n_max, z)) <= 1.0 + 1e-15)


def test_against_series_oracle_wide_range():
    rng = np.random.default_rng(13)
    for _ in range(60):
        n = int(rng.integers(0, 201))
        z = float(rng.uniform(-30.0, 30.0))
        assert abs(spherical_j(n, z) - series_spherical_j(n, z)) < 1e-13


def test_large_arguments_against_scipy():
    from scipy.special import spherical_jn

    rng = np.random.default_rng(17)
    for _ in range(60):
        n = int(rng.integers(0, 201))
        z = float(rng.uniform(100.0, 1e4))
        assert abs(spherical_j(n, z) - spherical_jn(n, z)) < 1e-13


def test_invalid_inputs():
    import pytest

    with pytest.raises(ValueError):
        spherical_j(-1, 1.0)
    with pytest.raises(ValueError):
        spherical_j(0, math.inf)
