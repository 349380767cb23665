import pathlib

import hypothesis
import pytest

import fvectortools
from fvectortools import fixtures
from fvectortools.monomial import Monomial


hypothesis.settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis.settings.register_profile("dev", max_examples=25, deadline=None)
hypothesis.settings.load_profile("dev")


@pytest.fixture
def square():
    return fixtures.square()


@pytest.fixture
def square_lprime():
    return fixtures.square_lprime()


@pytest.fixture
def three_lines():
    return fixtures.three_lines()


@pytest.fixture
def pencil():
    return fixtures.pencil()


@pytest.fixture
def c4():
    return fixtures.c4()


@pytest.fixture
def triangle_complex():
    return fixtures.triangle_complex()


@pytest.fixture
def chain3():
    return fvectortools.RankedPoset(
        {"0": 0, "a": 1, "b": 2}, [("0", "a"), ("a", "b")]
    )


@pytest.fixture
def monomials_1221():
    return fixtures.monomials_1221()


@pytest.fixture
def multicomplex_1221():
    return fixtures.multicomplex_1221()


@pytest.fixture
def x():
    # monomials in two variables x, y by exponent vector
    return lambda *e: Monomial(tuple(e))


@pytest.fixture
def data_path():
    return pathlib.Path(".") / "tests"


@pytest.fixture
def square_path(data_path):
    return data_path / "square.json"


@pytest.fixture
def tree_path(data_path):
    return data_path / "tree.json"


@pytest.fixture
def monomials_path(data_path):
    return data_path / "monomials.txt"


@pytest.fixture
def fixture_path(tmp_path):
    """Write a named fixture to a JSON file and return its path."""

    def write(name):
        path = tmp_path / f"{name}.json"
        fixtures.get(name).save(path, silent=True)
        return path

    return write
