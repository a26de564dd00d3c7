import os

import numpy as np
import pytest

from pyUSD.core import ProblemFile
from pyUSD.linalg import dual_vectors

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")

# Optimal coefficients of the three-state reference problem on the face k2 = 0
TRIAD_K1 = (1.28 - np.sqrt(0.256)) / 0.32
TRIAD_K = np.array([TRIAD_K1, 0.0, TRIAD_K1 - 1.8125])


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


def load_ensemble(name: str):
    return ProblemFile.from_file(fixture_path(name)).to_ensemble()


@pytest.fixture
def triad():
    return load_ensemble("triad.json")


@pytest.fixture
def triad_duals(triad):
    return dual_vectors(triad)


@pytest.fixture
def weighted():
    return load_ensemble("weighted.json")


@pytest.fixture
def orthonormal():
    return load_ensemble("orthonormal.json")


@pytest.fixture
def subspace():
    return load_ensemble("subspace.json")


@pytest.fixture
def rng():
    return np.random.default_rng(20221019)


@pytest.fixture
def triad_optimum():
    return TRIAD_K.copy()


@pytest.fixture
def fixture_file():
    return fixture_path
