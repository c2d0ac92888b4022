"""Shared fixtures: the bundled benchmark problems, loaded once per session."""

import numpy as np
import pytest

from helpers import load_fixture


@pytest.fixture(scope="session")
def p3():
    """3x3 quadratic with a quintuple eigenvalue at 1 and a simple one at -1."""
    return load_fixture("p3")


@pytest.fixture(scope="session")
def p4():
    """3x3 monic quadratic with spectrum {0, -1, 0.25 +- 3.8971i, +-5i}."""
    return load_fixture("p4")


@pytest.fixture(scope="session")
def p5():
    """2x2 ill-scaled quadratic with simple eigenvalues 1, 2, 3, 4."""
    return load_fixture("p5")


@pytest.fixture(scope="session")
def p6():
    """2x2 monic cubic with double eigenvalues at 0, 1, -1."""
    return load_fixture("p6")


@pytest.fixture(scope="session")
def p6q():
    """Boundary perturbation of the cubic fixture (admissible at eps=0.3)."""
    return load_fixture("p6_perturbed")


@pytest.fixture(scope="session")
def pz():
    """2x2 quadratic with a simple eigenvalue exactly at 0."""
    return load_fixture("pz_zero_eig")


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
