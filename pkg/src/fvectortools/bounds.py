"""
Cascade expansions, the Kruskal-Katona and Macaulay boundary functions, and
exact minimum-shadow searches used as oracles for them.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import cachetools.func

from fvectortools.poset import FVector, Verdict


logger = logging.getLogger(__name__)

# Largest number of candidate families searched exhaustively by
# brute_min_shadow; above it only compressed families are enumerated.
EXHAUSTIVE_LIMIT = 10**7

_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
_SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def binomial(a, b):
    """C(a, b), taken to be 0 when a < b or either argument is negative."""
    if a < 0 or b < 0 or a < b:
        return 0
    return math.comb(a, b)


@dataclass(frozen=True)
class CascadeExpansion:
    """
    The unique expansion n = C(n_k, k) + C(n_{k-1}, k-1) + ... + C(n_i, i)
    with n_k > n_{k-1} > ... > n_i >= i >= 1.

    Attributes
    ----------
    k : int
        The expansion parameter.
    terms : tuple of (int, int)
        Pairs ``(n_j, j)`` for j = k down to i.
    """

    k: int
    terms: tuple

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def value(self):
        return sum(binomial(n_j, j) for n_j, j in self.terms)


def _largest_top(n, j):
    # largest m with C(m, j) <= n, by doubling then bisection
    high = j + 1
    while binomial(high, j) <= n:
        high *= 2
    low = j
    while low + 1 < high:
        mid = (low + high) // 2
        if binomial(mid, j) <= n:
            low = mid
        else:
            high = mid
    return low


@cachetools.func.lru_cache(maxsize=65536)
def cascade_expand(n, k):
    """
    Greedy cascade expansion of `n` with respect to `k`.

    Examples
    --------
    >>> cascade_expand(13, 3).terms
    ((5, 3), (3, 2))
    """
    if n < 1 or k < 1:
        raise ValueError(f"cascade expansion needs n >= 1 and k >= 1, got {n=}, {k=}")
    terms = []
    rest = n
    for j in range(k, 0, -1):
        top = _largest_top(rest, j)
        terms.append((top, j))
        rest -= binomial(top, j)
        if rest == 0:
            break
    return CascadeExpansion(k, tuple(terms))


@cachetools.func.lru_cache(maxsize=65536)
def kk_shadow_bound(n, k):
    """
    ∂_{k-1}(n): the least number of (k-1)-sets in the shadow of n k-sets.
    """
    if n == 0:
        return 0
    return sum(binomial(n_j, j - 1) for n_j, j in cascade_expand(n, k))


@cachetools.func.lru_cache(maxsize=65536)
def macaulay_shadow_bound(n, k):
    """
    ∂^{k-1}(n): the least number of degree k-1 divisors of n degree-k
    monomials.
    """
    if n == 0:
        return 0
    return sum(binomial(n_j - 1, j - 1) for n_j, j in cascade_expand(n, k))


def _check(f, kind):
    bound = kk_shadow_bound if kind == "kk" else macaulay_shadow_bound
    rows = []
    failure = None
    for k in range(0, f.top_index + 1):
        value = bound(f[k], k + 1)
        rows.append((k, f[k], value, f[k - 1]))
        if failure is None and value > f[k - 1]:
            failure = (k, f[k], value, f[k - 1])
    if failure is None:
        return Verdict(True, details=tuple(rows))
    k, f_k, value, previous = failure
    if kind == "kk":
        symbol = "∂" + str(k).translate(_SUBSCRIPTS)
    else:
        symbol = "∂" + str(k).translate(_SUPERSCRIPTS)
    message = f"violation at k={k}: {symbol}({f_k})={value} > {previous}"
    return Verdict(False, witness=(k,), message=message, details=tuple(rows))


def check_kk(f):
    """
    Test the Kruskal-Katona inequalities ∂_k(f_k) <= f_{k-1} for all k >= 0.

    Returns a `Verdict` whose witness is ``(k,)`` for the least violating k.
    """
    return _check(FVector(f), "kk")


def check_macaulay(f):
    """
    Test the Macaulay inequalities ∂^k(f_k) <= f_{k-1} for all k >= 0.

    Returns a `Verdict` whose witness is ``(k,)`` for the least violating k.
    """
    return _check(FVector(f), "macaulay")


def is_simplicial_fvector(f):
    """Whether `f` is the f-vector of some simplicial complex."""
    try:
        return bool(check_kk(f))
    except ValueError:
        return False


def is_multicomplex_fvector(f):
    """Whether `f` is the f-vector of some multicomplex."""
    try:
        return bool(check_macaulay(f))
    except ValueError:
        return False


class BvSides(NamedTuple):
    lhs: int
    rhs: int


def bv_inequality_holds(n_list, k, with_one=False):
    """Whether `bv_sides` satisfies lhs <= rhs."""
    lhs, rhs = bv_sides(n_list, k, with_one)
    return lhs <= rhs


def bv_sides(n_list, k, with_one=False):
    """
    Both sides of the superadditivity inequality for ∂^k.

    Without `with_one`, for r = len(n_list) - 1 < k and n_{r+1} = 0::

        ∂^k(Σ_{i<=r} n_i) <= Σ_{i<=r} max{n_{i+1}, ∂^{k-i}(n_i)}

    With `with_one`, for len(n_list) = k + 1::

        ∂^k(1 + Σ_{i<=k} n_i) <= 1 + Σ_{i<k} max{n_{i+1}, ∂^{k-i}(n_i)}

    Here ∂^j(n) is ``macaulay_shadow_bound(n, j + 1)``.

    Examples
    --------
    >>> bv_sides((5, 3), 2)
    BvSides(lhs=6, rhs=6)
    """
    n_list = [int(n) for n in n_list]
    if k < 1:
        raise ValueError(f"k must be positive, got {k=}")
    if any(n < 0 for n in n_list):
        raise ValueError(f"entries must be non-negative, got {n_list=}")
    if with_one:
        if len(n_list) != k + 1:
            raise ValueError(f"need k + 1 = {k + 1} entries, got {len(n_list)}")
        lhs = macaulay_shadow_bound(1 + sum(n_list), k + 1)
        rhs = 1 + sum(
            max(n_list[i + 1], macaulay_shadow_bound(n_list[i], k - i + 1))
            for i in range(k)
        )
    else:
        r = len(n_list) - 1
        if not 0 <= r < k:
            raise ValueError(f"need between 1 and k = {k} entries, got {len(n_list)}")
        padded = n_list + [0]
        lhs = macaulay_shadow_bound(sum(n_list), k + 1)
        rhs = sum(
            max(padded[i + 1], macaulay_shadow_bound(padded[i], k - i + 1))
            for i in range(r + 1)
        )
    return BvSides(lhs, rhs)


def _ground_family(k, mode, universe):
    # k-subsets as sorted tuples, or degree-k monomials as sorted tuples of
    # variables with repetition; both in colex-compatible lex order
    if mode == "sets":
        return list(itertools.combinations(range(universe), k))
    if mode == "monomials":
        return list(itertools.combinations_with_replacement(range(universe), k))
    raise ValueError(f"unknown mode {mode!r}, expected 'sets' or 'monomials'")


def _shadow_size(family):
    shadow = set()
    for member in family:
        for i in range(len(member)):
            shadow.add(member[:i] + member[i + 1 :])
    return len(shadow)


def _compressed_families(ground, n, mode):
    # Families closed under replacing an entry by a smaller one: shifted
    # families of sets, strongly stable families of monomials. Each such
    # family is listed once, by adding members in ground order.
    position = {member: i for i, member in enumerate(ground)}

    def predecessors(member):
        result = []
        for i, v in enumerate(member):
            if v == 0:
                continue
            smaller = member[:i] + (v - 1,) + member[i + 1 :]
            if mode == "sets" and i > 0 and member[i - 1] == v - 1:
                continue
            if mode == "monomials":
                smaller = tuple(sorted(smaller))
            result.append(smaller)
        return result

    lower = [tuple(position[p] for p in predecessors(member)) for member in ground]

    def extend(chosen, members, last):
        if len(members) == n:
            yield members
            return
        for j in range(last + 1, len(ground)):
            if all(p in chosen for p in lower[j]):
                chosen.add(j)
                members.append(ground[j])
                yield from extend(chosen, members, j)
                members.pop()
                chosen.discard(j)

    yield from extend(set(), [], -1)


def brute_min_shadow(n, k, mode="sets", universe=None, *, exhaustive_limit=None):
    """
    Exact minimum shadow size over all families of `n` k-subsets of a
    `universe`-element set (mode ``"sets"``), or of `n` degree-k monomials in
    `universe` variables (mode ``"monomials"``).

    Families are searched exhaustively when there are at most
    `exhaustive_limit` of them, and otherwise among compressed families only,
    which contain a minimizer.

    Examples
    --------
    >>> brute_min_shadow(5, 2, "sets", 6)
    4
    >>> brute_min_shadow(5, 2, "monomials", 5)
    3
    """
    if n < 1 or k < 1:
        raise ValueError(f"need n >= 1 and k >= 1, got {n=}, {k=}")
    if universe is None:
        universe = n + k
    if exhaustive_limit is None:
        exhaustive_limit = EXHAUSTIVE_LIMIT
    ground = _ground_family(k, mode, universe)
    if len(ground) < n:
        raise ValueError(
            f"infeasible: only {len(ground)} {mode} of size {k} over {universe}, "
            f"{n=} requested"
        )
    if math.comb(len(ground), n) <= exhaustive_limit:
        families = itertools.combinations(ground, n)
        strategy = "exhaustive"
    else:
        families = _compressed_families(ground, n, mode)
        strategy = "compressed"
    best = None
    searched = 0
    for family in families:
        searched += 1
        size = _shadow_size(family)
        if best is None or size < best:
            best = size
    logger.debug(
        "min shadow n=%d k=%d %s u=%d: %d (%s, %d families)",
        n,
        k,
        mode,
        universe,
        best,
        strategy,
        searched,
    )
    return best
