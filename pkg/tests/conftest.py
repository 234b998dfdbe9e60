import random

import pytest

from hopflab.expressions import parse_element
from hopflab.families import build
from hopflab.hopf import Tensor


@pytest.fixture(scope="session")
def en1():
    return build("en:1")


@pytest.fixture(scope="session")
def en2():
    return build("en:2")


@pytest.fixture(scope="session")
def en3():
    return build("en:3")


@pytest.fixture(scope="session")
def ac22():
    return build("ac2n:2")


@pytest.fixture(scope="session")
def h8():
    return build("h8")


@pytest.fixture(scope="session")
def h2n2_3():
    return build("h2n2:3")


@pytest.fixture(scope="session")
def radford22():
    return build("radford:2,2")


@pytest.fixture(scope="session")
def ac4dual():
    return build("ac4dual")


@pytest.fixture(scope="session")
def kc2():
    return build("group:2")


@pytest.fixture
def rng():
    return random.Random(20240811)


def pe(h, text):
    return parse_element(h, text)


def random_sparse_tensor(h, rng, legs=2, nnz=6, denom=7):
    """Deterministic sparse random tensor with small rational coefficients."""
    dim = h.dim**legs
    coeffs = {}
    for _ in range(nnz):
        idx = rng.randrange(dim)
        num = rng.randint(-9, 9)
        if num:
            from fractions import Fraction

            coeffs[idx] = h.field.from_fraction(Fraction(num, rng.randint(1, denom)))
    return Tensor(h, legs, coeffs)
