import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fvectortools import bounds


@pytest.mark.parametrize(
    "n, k, terms",
    [(5, 2, ((3, 2), (2, 1))), (13, 3, ((5, 3), (3, 2))), (1, 4, ((4, 4),))],
)
def test_cascade_expand(n, k, terms):
    expansion = bounds.cascade_expand(n, k)
    assert expansion.terms == terms
    assert expansion.value == n


@given(st.integers(min_value=1, max_value=5000), st.integers(min_value=1, max_value=8))
def test_cascade_expand_is_strict(n, k):
    expansion = bounds.cascade_expand(n, k)
    tops = [n_j for n_j, _ in expansion]
    assert expansion.value == n
    assert tops == sorted(set(tops), reverse=True)
    assert all(n_j >= j >= 1 for n_j, j in expansion)


def test_cascade_expand_invalid():
    with pytest.raises(ValueError):
        bounds.cascade_expand(0, 2)


def test_kk_shadow_bound():
    assert bounds.kk_shadow_bound(0, 3) == 0
    assert bounds.kk_shadow_bound(5, 2) == 4
    assert bounds.kk_shadow_bound(math.comb(7, 3), 3) == math.comb(7, 2)


def test_macaulay_shadow_bound():
    assert bounds.macaulay_shadow_bound(0, 2) == 0
    assert bounds.macaulay_shadow_bound(5, 2) == 3
    assert bounds.macaulay_shadow_bound(13, 3) == 8
    assert bounds.macaulay_shadow_bound(8, 2) == 4


@pytest.mark.parametrize(
    "f, passed", [((1, 4, 4), True), ((1, 2, 4), False), ((1,), True)]
)
def test_check_kk(f, passed):
    verdict = bounds.check_kk(f)
    assert bool(verdict) is passed
    if not passed:
        assert verdict.witness == (1,)


def test_check_macaulay():
    verdict = bounds.check_macaulay((1, 4, 8, 13))
    assert verdict
    # equality at k=1 and k=2
    assert verdict.details[1] == (1, 8, 4, 4)
    assert verdict.details[2] == (2, 13, 8, 8)
    assert bounds.check_macaulay((1,) * 6)


def test_check_macaulay_violation():
    verdict = bounds.check_macaulay((1, 2, 4))
    assert not verdict
    assert verdict.witness == (1,)
    assert verdict.message == "violation at k=1: ∂¹(4)=3 > 2"


def test_kk_stricter_than_macaulay():
    assert not bounds.check_kk((1, 4, 8, 13))
    assert bounds.is_multicomplex_fvector((1, 4, 8, 13))
    assert not bounds.is_simplicial_fvector((1, 4, 8, 13))
    assert not bounds.is_simplicial_fvector((2, 1))


def test_bv_inequality_example():
    assert bounds.bv_inequality_holds((5, 3), 2)
    assert bounds.bv_sides((5, 3), 2) == (6, 6)
    assert bounds.bv_sides((0, 0, 0), 2, with_one=True) == (1, 1)
    assert bounds.bv_inequality_holds((0, 0, 0), 3)
    assert bounds.bv_inequality_holds((0, 0, 0), 2, with_one=True)
    assert bounds.bv_inequality_holds((3, 0), 1, with_one=True)


def test_bv_inequality_invalid():
    with pytest.raises(ValueError):
        bounds.bv_inequality_holds((1, 2, 3), 2)
    with pytest.raises(ValueError):
        bounds.bv_inequality_holds((1, 2), 2, with_one=True)


def bv_case(with_one):
    def entries(k):
        size = dict(min_size=k + 1, max_size=k + 1) if with_one else dict(
            min_size=1, max_size=k
        )
        return st.tuples(
            st.just(k), st.lists(st.integers(min_value=0, max_value=40), **size)
        )

    return st.integers(min_value=1, max_value=6).flatmap(entries)


@given(bv_case(with_one=False))
def test_bv_inequality_random(case):
    k, n_list = case
    assert bounds.bv_inequality_holds(n_list, k)


@given(bv_case(with_one=True))
def test_bv_inequality_with_one_random(case):
    k, n_list = case
    assert bounds.bv_inequality_holds(n_list, k, with_one=True)


@pytest.mark.slow
@pytest.mark.parametrize("with_one", [False, True])
def test_bv_inequality_sampled(with_one):
    rng = np.random.default_rng(2024)
    for _ in range(100_000):
        k = int(rng.integers(1, 7))
        size = k + 1 if with_one else int(rng.integers(1, k + 1))
        n_list = [int(n) for n in rng.integers(0, 41, size=size)]
        lhs, rhs = bounds.bv_sides(n_list, k, with_one)
        assert lhs <= rhs, (n_list, k)


@pytest.mark.parametrize("k", range(1, 5))
def test_shadow_bounds_order(k):
    for n in range(31):
        assert bounds.macaulay_shadow_bound(n, k) <= bounds.kk_shadow_bound(n, k)
        assert bounds.kk_shadow_bound(n, k) <= bounds.kk_shadow_bound(n + 1, k)
        assert bounds.macaulay_shadow_bound(n, k) <= (
            bounds.macaulay_shadow_bound(n + 1, k)
        )


@given(st.integers(min_value=0, max_value=3000), st.integers(min_value=1, max_value=8))
def test_shadow_bounds_order_random(n, k):
    assert bounds.macaulay_shadow_bound(n, k) <= bounds.kk_shadow_bound(n, k)
    assert bounds.kk_shadow_bound(n, k) <= bounds.kk_shadow_bound(n + 1, k)
    assert bounds.macaulay_shadow_bound(n, k) <= bounds.macaulay_shadow_bound(n + 1, k)


@pytest.mark.parametrize(
    "n, k, mode, universe, expected",
    [
        (5, 2, "sets", 6, 4),
        (5, 2, "monomials", 5, 3),
        (1, 3, "sets", 3, 3),
        (1, 3, "monomials", 3, 1),
    ],
)
def test_brute_min_shadow(n, k, mode, universe, expected):
    assert bounds.brute_min_shadow(n, k, mode, universe) == expected


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("k, sets_universe, monomial_universe", [(2, 5, 4), (3, 5, 3)])
def test_bounds_match_search(n, k, sets_universe, monomial_universe):
    assert bounds.brute_min_shadow(n, k, "sets", sets_universe) == (
        bounds.kk_shadow_bound(n, k)
    )
    assert bounds.brute_min_shadow(n, k, "monomials", monomial_universe) == (
        bounds.macaulay_shadow_bound(n, k)
    )


@pytest.mark.parametrize("mode", ["sets", "monomials"])
def test_compressed_search(mode):
    exhaustive = bounds.brute_min_shadow(5, 2, mode, 5)
    compressed = bounds.brute_min_shadow(5, 2, mode, 5, exhaustive_limit=0)
    assert exhaustive == compressed


def test_brute_min_shadow_infeasible():
    with pytest.raises(ValueError, match="infeasible"):
        bounds.brute_min_shadow(5, 2, "sets", 3)
    with pytest.raises(ValueError, match="unknown mode"):
        bounds.brute_min_shadow(1, 1, "graphs", 3)


@pytest.mark.slow
@pytest.mark.parametrize("n", range(1, 11))
def test_kk_bound_matches_search_slow(n):
    assert bounds.brute_min_shadow(n, 3, "sets", 7) == bounds.kk_shadow_bound(n, 3)


def oracle_universe(n, k, mode):
    # smallest ground set holding the extremal initial segment
    terms = bounds.cascade_expand(n, k).terms
    top = terms[0][0] if mode == "sets" else terms[0][0] - k + 1
    return top + (len(terms) > 1)


ORACLE_GRID = [
    (n, k, mode, oracle_universe(n, k, mode))
    for k in range(1, 5)
    for n in range(1, 31)
    for mode in ("sets", "monomials")
    if oracle_universe(n, k, mode) <= 8
]


@pytest.mark.slow
@pytest.mark.parametrize("n, k, mode, universe", ORACLE_GRID)
def test_bounds_match_search_grid(n, k, mode, universe):
    bound = bounds.kk_shadow_bound if mode == "sets" else bounds.macaulay_shadow_bound
    found = bounds.brute_min_shadow(n, k, mode, universe, exhaustive_limit=10_000)
    assert found == bound(n, k)
