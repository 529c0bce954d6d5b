import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rodshape import RodParams, make_profile, run_inverse, synthesize_dataset


@pytest.fixture(scope="session")
def quartic_profile():
    return make_profile("quartic", {"a": 1.0, "b": 1.0})


@pytest.fixture(scope="session")
def quartic_params():
    return RodParams(E=3.0, r=4.0, p=2.0, F0=1.0)


@pytest.fixture(scope="session")
def example1_omegas():
    return np.linspace(1.0, 2.0, 12)


@pytest.fixture(scope="session")
def example1_clean_data(quartic_profile, quartic_params, example1_omegas):
    return synthesize_dataset(quartic_profile, quartic_params, example1_omegas)


@pytest.fixture(scope="session")
def example1_clean_run(quartic_profile, quartic_params, example1_clean_data):
    """Full-default inversion of the clean quartic dataset, with wall time."""
    start = time.perf_counter()
    recovered = run_inverse(example1_clean_data, quartic_params)
    elapsed = time.perf_counter() - start
    return recovered, elapsed
