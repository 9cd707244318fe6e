from pathlib import Path

import numpy as np
import pytest

from relhom import CrossDistanceMatrix, cross_distances, load_matrix, load_points

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def six_cycle() -> CrossDistanceMatrix:
    return load_matrix(str(FIXTURES / "six_cycle_matrix.csv"))


@pytest.fixture(scope="session")
def tetrahedron() -> CrossDistanceMatrix:
    X, Y = load_points(str(FIXTURES / "tetrahedron_points.csv"), "vertex", "midpoint")
    return cross_distances(X, Y)


def small_instance(seed: int, max_n: int = 8, max_m: int = 8) -> CrossDistanceMatrix:
    """Random cross-distance matrix from planar clouds, sizes 2..max."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, max_n + 1))
    m = int(rng.integers(2, max_m + 1))
    return cross_distances(rng.random((n, 2)), rng.random((m, 2)))
