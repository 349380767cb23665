"""
Checkers for the structural hypotheses of the f-vector theorems (diamond,
condition (*), parallelogram, geometric) and for their conclusions.

Checkers return a `Verdict` and never raise on a failing property. Element
pairs and tuples are searched in element order, so witnesses are
reproducible.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

import cachetools.func
import numpy as np

from fvectortools import bounds
from fvectortools.monomial import Monomial
from fvectortools.poset import TOP, Verdict


logger = logging.getLogger(__name__)

PASS = Verdict(True)


class PreconditionError(ValueError):
    """
    Raised when an operation is applied to a poset that lacks one of its
    hypotheses. The failing verdict is kept in `verdict`.
    """

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


@cachetools.func.lru_cache(maxsize=256)
def check_diamond(P):
    """
    Every comparable pair x < y with rank gap 2 has at least two elements
    strictly between them.

    The witness of a failure is the pair ``(x, y)``.
    """
    leq = P.dominance
    for i, x in enumerate(P.elements):
        for y in P.elements_of_rank(P.rank[x] + 2):
            j = P.index(y)
            if not leq[i, j]:
                continue
            between = int((leq[i, :] & leq[:, j]).sum()) - 2
            if between < 2:
                return Verdict(
                    False,
                    (x, y),
                    f"open interval ({x}, {y}) has {between} element(s)",
                )
    return PASS


@cachetools.func.lru_cache(maxsize=256)
def check_condition_star(P):
    """
    For every x̂, every x covering x̂ and every y > x̂ in P(x̂) there is some
    y' in P(x̂) covered by y with x not below y'.

    The witness of a failure is the triple ``(x̂, x, y)``.
    """
    leq, cov = P.dominance, P.cover_matrix
    for h, xh in enumerate(P.elements):
        above = np.flatnonzero(leq[h, :])
        for x in np.flatnonzero(cov[h, :]):
            for y in above:
                if y == h:
                    continue
                candidates = cov[:, y] & leq[h, :] & ~leq[x, :]
                if not candidates.any():
                    witness = (xh, P.elements[x], P.elements[y])
                    return Verdict(
                        False,
                        witness,
                        "no element covered by {2} avoids {1} above {0}".format(
                            *witness
                        ),
                    )
    return PASS


def _chain_intervals(P, h):
    # all chains h = x_0 < x_1 < ... < x_r (r > 0) equal to the interval
    # [h, x_r], as index tuples; each is found once, from its prefix
    leq, cov = P.dominance, P.cover_matrix
    chains = []
    stack = [(h,)]
    while stack:
        chain = stack.pop()
        for z in np.flatnonzero(cov[chain[-1], :]):
            size = int((leq[h, :] & leq[:, z]).sum())
            if size == len(chain) + 1:
                extended = chain + (int(z),)
                chains.append(extended)
                stack.append(extended)
    chains.sort(key=lambda c: (len(c), c))
    return chains


@cachetools.func.lru_cache(maxsize=256)
def check_parallelogram(P):
    """
    Condition (**): for every x̂, every y in P(x̂) other than x̂, every chain
    x̂ = x_0 < ... < x_r (r > 0) that equals the interval [x̂, x_r] and is
    maximal under inclusion among such chains with r below the rank of y in
    P(x̂), and every 0 < i <= r with x_i < y and x_{i+1} not below y (for
    i = r: [x̂, y] is not a chain), some y' covered by y satisfies
    x_{i-1} < y' and x_i not below y'.

    The rank of y in P(x̂) is r(y) - r(x̂). The witness of a failure is
    ``(x̂, chain, y, i)``.
    """
    leq, cov = P.dominance, P.cover_matrix
    ranks = P.rank_array
    for h, xh in enumerate(P.elements):
        chains = _chain_intervals(P, h)
        if not chains:
            continue
        extendable = {c[:-1] for c in chains}
        for y in np.flatnonzero(leq[h, :]):
            if y == h:
                continue
            rank_y = int(ranks[y] - ranks[h])
            y_is_chain = int((leq[h, :] & leq[:, y]).sum()) == rank_y + 1
            for chain in chains:
                r = len(chain) - 1
                if r >= rank_y:
                    break
                if chain in extendable and r + 1 < rank_y:
                    continue
                for i in range(1, r + 1):
                    x_i = chain[i]
                    if x_i == y or not leq[x_i, y]:
                        continue
                    if i < r and leq[chain[i + 1], y]:
                        continue
                    if i == r and y_is_chain:
                        continue
                    candidates = cov[:, y] & leq[chain[i - 1], :] & ~leq[x_i, :]
                    candidates[chain[i - 1]] = False
                    if not candidates.any():
                        names = tuple(P.elements[k] for k in chain)
                        witness = (xh, names, P.elements[y], i)
                        return Verdict(
                            False,
                            witness,
                            f"no element covered by {P.elements[y]} lies above "
                            f"{names[i - 1]} and avoids {names[i]} (chain {names})",
                        )
    return PASS


@cachetools.func.lru_cache(maxsize=256)
def check_atomic(P):
    """
    Every element other than the bottom is the join of the atoms below it.
    """
    for x in P.elements[1:]:
        if P.join(P.atoms_below(x)) != x:
            return Verdict(False, (x,), f"{x} is not the join of the atoms below it")
    return PASS


@cachetools.func.lru_cache(maxsize=256)
def check_geometric(P):
    """
    P is atomic and r(x∧y) + r(x∨y) <= r(x) + r(y) whenever x∨y exists.

    The witness is ``(x,)`` for a non-atomic element and ``(x, y)`` for a
    violating pair.
    """
    atomic = check_atomic(P)
    if not atomic:
        return atomic
    rank = P.rank
    for x, y in itertools.combinations(P.elements, 2):
        top = P.join((x, y))
        if top is TOP:
            continue
        bottom = P.meet(x, y)
        if rank[bottom] + rank[top] > rank[x] + rank[y]:
            return Verdict(
                False,
                (x, y),
                f"r({bottom}) + r({top}) = {rank[bottom] + rank[top]} > "
                f"r({x}) + r({y}) = {rank[x] + rank[y]}",
            )
    return PASS


def minimal_generating_sets(P, x):
    """
    Inclusion-minimal sets of atoms whose join is `x`, as tuples in element
    order, by size and then lexicographically.
    """
    atoms = P.atoms_below(x)
    found = []
    for size in range(1, len(atoms) + 1):
        for subset in itertools.combinations(atoms, size):
            if P.join(subset) != x:
                continue
            if size > 1 and any(
                P.join(subset[:k] + subset[k + 1 :]) == x for k in range(size)
            ):
                continue
            found.append(subset)
    return found


@cachetools.func.lru_cache(maxsize=256)
def check_min_atom_rank(P):
    """
    Every inclusion-minimal set S of atoms with join l has |S| = r(l).

    For atomic P this holds iff P is geometric. The witness of a failure is
    ``(l, S)``.
    """
    atomic = check_atomic(P)
    if not atomic:
        raise PreconditionError(f"poset is not atomic: {atomic.message}", atomic)
    for x in P.elements[1:]:
        for subset in minimal_generating_sets(P, x):
            if len(subset) != P.rank[x]:
                return Verdict(
                    False,
                    (x, subset),
                    f"minimal atom set {subset} has join {x} of rank {P.rank[x]}",
                )
    return PASS


@dataclass(frozen=True)
class ShadowRow:
    k: int
    f_k: int
    bound: int
    actual: int
    margin: int


@dataclass(frozen=True)
class ShadowReport:
    """
    Lower bounds on shadows against the actual shadows of a poset, one row
    per rank k + 1 >= 1. The report passes iff no margin is negative.
    """

    kind: str
    rows: tuple

    def __bool__(self):
        return self.passed

    def __str__(self):
        lines = [f"   k    f_k  bound actual margin ({self.kind})"]
        for row in self.rows:
            lines.append(
                f"{row.k:>4} {row.f_k:>6} {row.bound:>6} {row.actual:>6} "
                f"{row.margin:>6}"
            )
        return "\n".join(lines)

    @property
    def passed(self):
        return all(row.margin >= 0 for row in self.rows)

    def as_dict(self):
        return {
            "kind": self.kind,
            "verdict": "PASS" if self.passed else "FAIL",
            "rows": [
                {
                    "k": row.k,
                    "f_k": row.f_k,
                    "bound": row.bound,
                    "actual": row.actual,
                    "margin": row.margin,
                }
                for row in self.rows
            ],
        }


def verify_shadow_theorem(P, kind):
    """
    Compare |shadow(P, k)| with the Kruskal-Katona (``kind="kk"``) or
    Macaulay (``kind="macaulay"``) bound of f_k, for every k.

    Raises
    ------
    PreconditionError
        If P lacks the diamond property (kk) or the parallelogram property
        (macaulay).
    """
    if kind == "kk":
        hypothesis, bound = check_diamond(P), bounds.kk_shadow_bound
    elif kind == "macaulay":
        hypothesis, bound = check_parallelogram(P), bounds.macaulay_shadow_bound
    else:
        raise ValueError(f"unknown kind {kind!r}, expected 'kk' or 'macaulay'")
    if not hypothesis:
        raise PreconditionError(
            f"hypothesis for {kind} shadows fails: {hypothesis.message}", hypothesis
        )
    f = P.f_vector()
    rows = []
    for k in range(P.max_rank):
        value = bound(f[k], k + 1)
        actual = len(P.shadow(k))
        rows.append(ShadowRow(k, f[k], value, actual, actual - value))
    report = ShadowReport(kind, tuple(rows))
    if not report:
        logger.warning("negative %s shadow margin: %s", kind, report.rows)
    return report


def check_shifted(family, start=1):
    """
    Closure of a family of finite integer sets under componentwise decrease
    (labels start at `start`).

    It suffices to test elementary moves replacing one member s by s - 1. The
    witness of a failure is ``(S, T)`` with T missing.

    Examples
    --------
    >>> check_shifted([{1, 2}, {1, 3}, {2, 4}]).witness
    ((2, 4), (1, 4))
    """
    members = {tuple(sorted(S)) for S in family}
    for S in sorted(members, key=lambda s: (len(s), s)):
        present = set(S)
        for s in S:
            t = s - 1
            if t < start or t in present:
                continue
            T = tuple(sorted((present - {s}) | {t}))
            if T not in members:
                return Verdict(False, (S, T), f"{T} is below {S} but missing")
    return PASS


def check_order_ideal(monomials):
    """
    Closure of a set of monomials under division. The witness of a failure is
    ``(m, d)`` with d = m / x_i missing.
    """
    monomials = set(monomials)
    for m in sorted(monomials, key=Monomial.sort_key):
        for i in sorted(m.support):
            d = m.over_variable(i)
            if d not in monomials:
                return Verdict(False, (m, d), f"{d} divides {m} but is missing")
    return PASS
