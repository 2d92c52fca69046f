import numpy as np
import pytest

from entwine.algebra import su_fundamental
from entwine.reps import adjoint_rep, build_irrep_catalog, conjugate_rep


@pytest.fixture(scope="session")
def su2():
    return su_fundamental(2)


@pytest.fixture(scope="session")
def su3():
    return su_fundamental(3)


@pytest.fixture(scope="session")
def su3_bar(su3):
    return conjugate_rep(su3)


@pytest.fixture(scope="session")
def su3_adjoint(su3):
    return adjoint_rep(su3.constants)


@pytest.fixture(scope="session")
def su2_catalog():
    return build_irrep_catalog("su2", 8)


@pytest.fixture(scope="session")
def su3_catalog():
    return build_irrep_catalog("su3", 27)


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)


def random_hermitian(rng, n: int) -> np.ndarray:
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (m + m.conj().T) / 2
