import math

import numpy as np
import pytest

import fractalhull as fh


@pytest.fixture(scope="session")
def twindragon_ifs():
    return fh.complex_base_ifs(1 + 1j, 2)


@pytest.fixture(scope="session")
def twindragon_sys():
    return fh.complex_base_system(1 + 1j, 2)


@pytest.fixture(scope="session")
def twindragon_width(twindragon_ifs):
    return fh.solve_width(twindragon_ifs, n_grid=4096, tol=1e-6)


@pytest.fixture(scope="session")
def twindragon_cloud(twindragon_ifs):
    return fh.chaos_game_sample(twindragon_ifs, 100_000, seed=11).points


@pytest.fixture(scope="session")
def square_ifs():
    a = 0.5 * np.eye(2)
    ts = [(0.0, 0.0), (0.5, 0.0), (0.0, 0.5), (0.5, 0.5)]
    return fh.validate_ifs([(a, t) for t in ts])


@pytest.fixture(scope="session")
def square_width(square_ifs):
    return fh.solve_width(square_ifs, n_grid=4096, tol=1e-8)


@pytest.fixture(scope="session")
def segment_ifs():
    return fh.complex_base_ifs(2 + 0j, 2)


def disk_width(radius=1.0, n=2048, base=(0.0, 0.0)):
    grid = fh.DirectionGrid(n)
    return fh.make_width_samples(grid, base, np.full(n, radius),
                                 iter_error=1e-12,
                                 interp_slack=radius * math.pi / n)
