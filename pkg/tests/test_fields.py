import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fvectortools import fields
from fvectortools.fields import GF2_64, PRIME_61, EchelonBasis, FiniteField


elements = st.integers(min_value=1, max_value=2**64 - 1)


@given(elements, elements)
def test_binary_field_inverse(a, b):
    assert GF2_64.mul(a, GF2_64.inv(a)) == 1
    assert GF2_64.mul(a, b) == GF2_64.mul(b, a)
    assert GF2_64.mul(a, b) < GF2_64.order


@given(elements, elements, elements)
def test_binary_field_distributive(a, b, c):
    F = GF2_64
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_small_binary_field():
    # GF(16) modulo x^4 + x + 1
    F = FiniteField(2**4, "x^4 + x + 1")
    assert F.mul(0b0010, 0b1000) == 0b0011
    assert all(F.mul(a, F.inv(a)) == 1 for a in range(1, 16))
    assert F.add(5, 5) == 0
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


@given(st.integers(min_value=1, max_value=PRIME_61.p - 1))
def test_prime_field_inverse(a):
    assert PRIME_61.mul(a, PRIME_61.inv(a)) == 1
    assert PRIME_61.add(a, PRIME_61.neg(a)) == 0


def test_echelon_basis():
    basis = EchelonBasis(PRIME_61, 3)
    assert basis.add([1, 2, 3])
    assert not basis.add([2, 4, 6])
    assert basis.add([0, 1, 1])
    assert basis.reduce([1, 3, 4]) == [0, 0, 0]
    assert basis.rank == 2
    assert basis.pivots == (0, 1)
    with pytest.raises(ValueError):
        basis.add([1, 2])


def test_rank_characteristic_two():
    rows = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
    assert fields.rank(GF2_64, rows, 3) == 2
    assert fields.rank(PRIME_61, rows, 3) == 3


def test_random_draws_are_ints():
    rng = np.random.default_rng(5)
    values = GF2_64.random(rng, 8)
    assert all(isinstance(v, int) and 0 <= v < 2**64 for v in values)


@pytest.mark.parametrize("field", [GF2_64, PRIME_61])
def test_generic_matrix(field):
    G = fields.GenericMatrix.draw(4, seed=7, field=field)
    assert G == fields.GenericMatrix.draw(4, seed=7, field=field)
    assert G != fields.GenericMatrix.draw(4, seed=8, field=field)
    assert fields.rank(field, G.entries, 4) == 4
    assert G[0, 3] == G.entries[0][3]


def test_generic_matrix_empty():
    assert fields.GenericMatrix.draw(0).entries == ()
    with pytest.raises(ValueError):
        fields.GenericMatrix.draw(-1)



def test_field_characteristics():
    assert GF2_64.characteristic == 2
    assert PRIME_61.characteristic == PRIME_61.p == 2**61 - 1
    assert GF2_64.neg(7) == 7
    assert PRIME_61.sub(1, 2) == PRIME_61.p - 1


def test_rank_of_empty_matrix():
    assert fields.rank(PRIME_61, [], 3) == 0
