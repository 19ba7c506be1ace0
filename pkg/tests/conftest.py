import random

import pytest

from equichow import Poly, VarTable
from equichow.pipeline import Fixtures


@pytest.fixture
def gamma_table():
    return VarTable([("g1", 1), ("g2", 1), ("h", 1)])


@pytest.fixture
def boundary_table():
    return VarTable([("l1", 1), ("l2", 2), ("d1", 1), ("x", 1)])


@pytest.fixture
def ambient_table():
    return VarTable([("l1", 1), ("l2", 2), ("d1", 1)])


@pytest.fixture
def fixtures():
    return Fixtures.default()


def random_poly(table, rng, max_exp=2, terms=4, coeff=8):
    """A small random polynomial; may be zero."""
    acc = {}
    for _ in range(terms):
        mono = tuple(rng.randint(0, max_exp) for _ in table.names)
        acc[mono] = acc.get(mono, 0) + rng.randint(-coeff, coeff)
    return Poly(table, acc)


def random_homogeneous(table, rng, grade, coeff=6):
    """A random homogeneous polynomial of the given grade (possibly zero)."""
    monos = table.monomials_of_grade(grade)
    acc = {}
    for mono in monos:
        if rng.random() < 0.5:
            c = rng.randint(-coeff, coeff)
            if c:
                acc[mono] = c
    return Poly(table, acc)


@pytest.fixture
def rng():
    return random.Random(20240)
