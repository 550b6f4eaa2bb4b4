import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fuzzygh import TNorm, make_standard_space, make_stationary_space

from oracles import random_metric, random_safe_stationary_values


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


@pytest.fixture
def product():
    return TNorm.product()


@pytest.fixture
def line4(product):
    d = [[0, 1, 2, 3], [1, 0, 1, 2], [2, 1, 0, 1], [3, 2, 1, 0]]
    return make_standard_space(["a", "b", "c", "d"], d, product, name="line4")


@pytest.fixture
def two_point_half(product):
    return make_stationary_space(["x1", "x2"], [[1, 0.5], [0.5, 1]], product, name="half")


@pytest.fixture
def two_point_third(product):
    v = 1.0 / 3.0
    return make_stationary_space(["y1", "y2"], [[1, v], [v, 1]], product, name="third")


def make_random_standard(rng, n, norm, name="rnd"):
    return make_standard_space(
        [f"p{i}" for i in range(n)], random_metric(rng, n), norm, name=name
    )


def make_random_stationary(rng, n, norm, name="rnd"):
    return make_stationary_space(
        [f"p{i}" for i in range(n)], random_safe_stationary_values(rng, n), norm, name=name
    )
