import math

import numpy as np
import pytest

from entities.field import GridSpec
from entities.solution import AnalyticSolution


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def soliton_grid():
    return GridSpec(-20.0 * math.pi, 20.0 * math.pi, 1024)


@pytest.fixture
def small_grid():
    return GridSpec(0.0, 2.0 * math.pi, 64)


@pytest.fixture
def free_gaussian():
    """(1 + 4it)^(-1/2) exp(-x^2/(1 + 4it)), a solution of i u_t + u_xx = 0"""
    def u(t, x):
        s = 1.0 + 4.0j * t
        return np.exp(-x * x / s) / np.sqrt(s)

    def u_t(t, x):
        s = 1.0 + 4.0j * t
        return 4.0j * u(t, x) * (-0.5 / s + x * x / (s * s))

    def u_x(t, x):
        return -2.0 * x / (1.0 + 4.0j * t) * u(t, x)

    def u_xx(t, x):
        s = 1.0 + 4.0j * t
        return u(t, x) * (-2.0 / s + 4.0 * x * x / (s * s))

    return AnalyticSolution('free_gaussian', {}, u, u_t, u_x, u_xx)
