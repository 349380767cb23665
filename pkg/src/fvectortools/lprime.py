"""
The multichain construction L ↦ L′ and the tree lattices L(T).

An element of L′ is a multichain a = (a_m ≤ ... ≤ a_1 ≤ a_0) of non-bottom
elements of a carrier L, taken from a family F(l) of multichains in the
interval (0̂, l] for each l. Multichains are ordered by

    a ≤′ b  iff  m ≤ k and a_i ≤ b_i for all 0 <= i <= m,

and ranked by the sum of the ranks of their items. When L has the diamond
property, L′ has the parallelogram property.
"""
from __future__ import annotations

import enum
import itertools
import logging
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from fvectortools.monomial import multicomplex_poset
from fvectortools.poset import (
    BOTTOM_ID,
    PosetError,
    RankedPoset,
    Verdict,
    face_id,
    face_poset,
)
from fvectortools.properties import PreconditionError, check_order_ideal


logger = logging.getLogger(__name__)

EMPTY_LABEL = "()"


@dataclass(frozen=True)
class Multichain:
    """
    A multichain of non-bottom elements of a carrier poset.

    Attributes
    ----------
    items : tuple of str
        Element ids, largest first: ``items[0]`` is a₀.
    carrier : RankedPoset
        The poset the items belong to. Not part of equality.

    Examples
    --------
    >>> from fvectortools import fixtures
    >>> L = fixtures.square()
    >>> a = Multichain.from_label(L, "(1,14)")
    >>> a.items, a.rank, a.label
    (('14', '1'), 3, '(1,14)')
    """

    items: tuple
    carrier: RankedPoset = field(compare=False, repr=False)

    def __post_init__(self):
        items = tuple(self.items)
        object.__setattr__(self, "items", items)
        L = self.carrier
        for x in items:
            if x not in L:
                raise PosetError(f"unknown element {x!r} in multichain", (x,))
            if x == L.bottom:
                raise PosetError("a multichain cannot contain the bottom", (x,))
        for upper, lower in zip(items, items[1:]):
            if not L.leq(lower, upper):
                raise PosetError(
                    f"{lower!r} is not below {upper!r} in multichain {items}",
                    (lower, upper),
                )

    def __len__(self):
        return len(self.items)

    def __str__(self):
        return self.label

    @property
    def rank(self):
        return sum(self.carrier.rank[x] for x in self.items)

    @property
    def label(self):
        """Items smallest first, e.g. ``"(1,14)"``; ``"()"`` when empty."""
        return "(" + ",".join(reversed(self.items)) + ")"

    def sort_key(self):
        return (self.rank, tuple(self.carrier.index(x) for x in reversed(self.items)))

    @classmethod
    def from_label(cls, carrier, label):
        text = label.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"not a multichain label: {label!r}")
        inner = text[1:-1].strip()
        parts = [p.strip() for p in inner.split(",")] if inner else []
        return cls(tuple(reversed(parts)), carrier)

    @classmethod
    def empty(cls, carrier):
        return cls((), carrier)


def _same_carrier(a, b):
    if a.carrier is not b.carrier and a.carrier != b.carrier:
        raise ValueError(f"multichains {a} and {b} live over different posets")


def multichain_leq(a, b):
    """
    a ≤′ b: a is no longer than b and a_i <= b_i for every index i of a,
    counting from the largest item.
    """
    _same_carrier(a, b)
    if len(a) > len(b):
        return False
    L = a.carrier
    return all(L.leq(x, y) for x, y in zip(a.items, b.items))


def _below_chains(b):
    # all multichains c with c ≤′ b
    L = b.carrier
    result = [()]

    def extend(prefix):
        i = len(prefix)
        if i == len(b.items):
            return
        for x in L.below(b.items[i]):
            if x == L.bottom or (prefix and not L.leq(x, prefix[-1])):
                continue
            items = prefix + (x,)
            result.append(items)
            extend(items)

    extend(())
    chains = [Multichain(items, L) for items in result]
    chains.sort(key=Multichain.sort_key)
    return chains


def closure(L, generators):
    """
    The least family containing `generators` that is closed downwards
    under ≤′. It always contains the empty multichain.
    """
    closed = {Multichain.empty(L)}
    for b in generators:
        if b.carrier is not L and b.carrier != L:
            raise ValueError(f"multichain {b} does not live over the given poset")
        closed.update(_below_chains(b))
    return frozenset(closed)


class Variant(enum.Enum):
    RANK_BOUNDED = "rank-bounded"
    CHAINS = "chains"
    EXPLICIT = "explicit"
    IDENTITY = "identity"


@dataclass(frozen=True)
class FamilySpec:
    """
    Rule producing the family F(l) for every element l of a carrier.

    Use the constructors:

    - `rank_bounded(bound)`: all multichains in (0̂, l] of rank at most
      ``bound(L, l)``, or at most r(l) when `bound` is None.
    - `chains()`: all chains without repetition in (0̂, l]. The result is
      the barycentric subdivision: ordered by inclusion, ranked by length.
    - `identity()`: the singletons (l′) for 0̂ < l′ <= l.
    - `explicit(generators)`: the closure of ``generators[l]``.
    """

    variant: Variant
    bound: object = None
    generators: object = None

    @classmethod
    def rank_bounded(cls, bound=None):
        return cls(Variant.RANK_BOUNDED, bound=bound)

    @classmethod
    def chains(cls):
        return cls(Variant.CHAINS)

    @classmethod
    def identity(cls):
        return cls(Variant.IDENTITY)

    @classmethod
    def explicit(cls, generators):
        return cls(Variant.EXPLICIT, generators=generators)

    def families(self, L):
        """F(l) for every non-bottom l of `L`, as frozensets of multichains."""
        result = {}
        for l in L.elements[1:]:
            if self.variant is Variant.RANK_BOUNDED:
                budget = L.rank[l] if self.bound is None else self.bound(L, l)
                result[l] = _rank_bounded(L, l, budget)
            elif self.variant is Variant.CHAINS:
                result[l] = _strict_chains(L, l)
            elif self.variant is Variant.IDENTITY:
                result[l] = frozenset(
                    [Multichain.empty(L)]
                    + [Multichain((x,), L) for x in L.below(l) if x != L.bottom]
                )
            else:
                generators = (self.generators or {}).get(l, ())
                result[l] = closure(L, _as_multichains(L, generators))
        return result


def _as_multichains(L, generators):
    return [
        g if isinstance(g, Multichain) else Multichain.from_label(L, g)
        for g in generators
    ]


def _rank_bounded(L, l, budget):
    found = [()]

    def extend(prefix, remaining, top):
        for x in L.below(top):
            if x == L.bottom or L.rank[x] > remaining:
                continue
            items = prefix + (x,)
            found.append(items)
            extend(items, remaining - L.rank[x], x)

    extend((), budget, l)
    return frozenset(Multichain(items, L) for items in found)


def _strict_chains(L, l):
    found = [()]

    def extend(prefix, top):
        for x in L.below(top):
            if x == L.bottom or (prefix and x == top):
                continue
            items = prefix + (x,)
            found.append(items)
            extend(items, x)

    extend((), l)
    return frozenset(Multichain(items, L) for items in found)


def _sub_chains(b):
    # all chains obtained by deleting items of b
    L = b.carrier
    return [
        Multichain(tuple(b.items[i] for i in kept), L)
        for size in range(len(b))
        for kept in itertools.combinations(range(len(b)), size)
    ]


def validate_family(L, families, variant=None):
    """
    Check that every F(l) lies in (0̂, l] and is closed downwards: under ≤′,
    or under taking sub-chains for the `Variant.CHAINS` families.

    The witness of a failure is ``(b, l)`` for a multichain b outside
    (0̂, l], or ``(a, b)`` for a missing a below b.
    """
    below = _sub_chains if variant is Variant.CHAINS else _below_chains
    for l in L.elements:
        members = families.get(l, ())
        if not members:
            continue
        present = set(members)
        for b in sorted(present, key=Multichain.sort_key):
            if b.items and not L.leq(b.items[0], l):
                return Verdict(False, (b.label, l), f"{b} does not lie below {l}")
            for a in below(b):
                if a not in present:
                    return Verdict(
                        False,
                        (a.label, b.label),
                        f"F({l}) contains {b} but not {a}",
                    )
    return Verdict(True)


def _componentwise_meet(a, b):
    L = a.carrier
    items = []
    for x, y in zip(a.items, b.items):
        z = L.meet(x, y)
        if z == L.bottom:
            break
        items.append(z)
    return Multichain(tuple(items), L)


def build_lprime(L, spec):
    """
    The ranked meet semi-lattice L′ on the union of the families F(l).

    Element ids are multichain labels; the empty multichain ``()`` is the
    bottom. Covers are derived from the order, so a family whose order does
    not rank by the item-rank sum is rejected by the poset validation.

    Raises
    ------
    PosetError
        If a family is not closed, or the result is not a ranked meet
        semi-lattice, or its meets disagree with the componentwise formula.
    """
    families = spec.families(L)
    verdict = validate_family(L, families, spec.variant)
    if not verdict:
        raise PosetError(f"family is not closed: {verdict.message}", verdict.witness)
    members = {Multichain.empty(L)}
    for family in families.values():
        members.update(family)
    members = sorted(members, key=Multichain.sort_key)
    n = len(members)

    if spec.variant is Variant.CHAINS:
        ranks = {a.label: len(a) for a in members}
        sets = [frozenset(a.items) for a in members]
        leq = np.array([[s <= t for t in sets] for s in sets], dtype=bool)
    else:
        ranks = {a.label: a.rank for a in members}
        leq = np.array(
            [[multichain_leq(a, b) for b in members] for a in members], dtype=bool
        )
    lt = leq & ~np.eye(n, dtype=bool)
    cover = lt & ~((lt.astype(np.int64) @ lt.astype(np.int64)) > 0)
    covers = [
        (members[i].label, members[j].label) for i, j in zip(*np.nonzero(cover))
    ]
    P = RankedPoset(ranks, covers)

    order = [P.index(a.label) for a in members]
    if not (P.dominance[np.ix_(order, order)] == leq).all():
        raise PosetError("cover relation does not generate the multichain order")

    for a, b in itertools.combinations(members, 2):
        if spec.variant is Variant.CHAINS:
            expected = Multichain(
                tuple(x for x in a.items if x in set(b.items)), L
            ).label
        else:
            expected = _componentwise_meet(a, b).label
        if P.meet(a.label, b.label) != expected:
            raise PosetError(
                f"meet of {a} and {b} is {P.meet(a.label, b.label)}, "
                f"componentwise {expected}",
                (a.label, b.label),
            )
    logger.debug("built L' with f-vector %s from %s family", P.f_vector(), spec.variant)
    return P


def multichains_of(P, L):
    """The multichains over `L` labelling the elements of an L′ poset `P`."""
    return {x: Multichain.from_label(L, x) for x in P.elements}


def _cover_step(L, a, b):
    # "raise" when b lifts one item of a along a cover of L, "atom" when b
    # appends an atom below a, else None
    if len(b) == len(a) + 1 and b.items[: len(a)] == a.items:
        return "atom" if L.rank[b.items[-1]] == 1 else None
    if len(b) != len(a):
        return None
    changed = [(x, y) for x, y in zip(a.items, b.items) if x != y]
    if len(changed) == 1 and changed[0] in L.covers:
        return "raise"
    return None


def check_cover_types(P, L):
    """
    Every cover a ⋖′ b of an L′ poset built under ≤′ either raises one item
    of a along a cover of L or appends an atom of L at the lower end.

    The witness of a failure is the cover as a pair of labels.
    """
    chains = multichains_of(P, L)
    for lower, upper in P.covers:
        if _cover_step(L, chains[lower], chains[upper]) is None:
            return Verdict(
                False,
                (lower, upper),
                f"{lower} ⋖ {upper} neither raises an item nor adds an atom",
            )
    return Verdict(True)


def _chain_intervals(P):
    # every interval [a, c] that is a chain of at least three elements
    leq = P.dominance
    for start in P.elements:
        h = P.index(start)
        stack = [(h,)]
        while stack:
            path = stack.pop()
            for z in np.flatnonzero(P.cover_matrix[path[-1], :]):
                if int((leq[h, :] & leq[:, z]).sum()) != len(path) + 1:
                    continue
                extended = path + (int(z),)
                stack.append(extended)
                if len(extended) >= 3:
                    yield tuple(P.elements[k] for k in extended)


def chain_interval_types(P, L):
    """
    Sort the chain intervals of length at least 2 of an L′ poset into those
    grown by repeating one atom u of L at the lower end, (a, a·u, a·u·u, ...),
    and all others.

    Returns ``{"atom-grown": [...], "other": [...]}`` with every chain as a
    tuple of labels, bottom first.

    Examples
    --------
    >>> from fvectortools import fixtures
    >>> types = chain_interval_types(fixtures.square_lprime(), fixtures.square())
    >>> ("(1)", "(14)", "(4,14)") in types["other"]
    True
    """
    chains = multichains_of(P, L)
    result = {"atom-grown": [], "other": []}
    for names in _chain_intervals(P):
        base = chains[names[0]].items
        u = chains[names[1]].items[len(base) :]
        grown = (
            len(u) == 1
            and L.rank[u[0]] == 1
            and all(chains[x].items == base + u * k for k, x in enumerate(names))
        )
        result["atom-grown" if grown else "other"].append(names)
    return result


class MulticomplexEncoding(NamedTuple):
    carrier: RankedPoset
    families: dict
    lprime: RankedPoset
    bijection: dict


def encode_multicomplex(monomials):
    """
    Realize an order ideal M of monomials as L′ over the face poset of the
    supports, with F(σ) the closure of the layer multichains f(m) of the
    monomials with support σ.

    Returns the carrier, the families, L′ and the rank-preserving bijection
    ``str(m) -> label of f(m)``.

    Raises
    ------
    PreconditionError
        If `monomials` is not an order ideal.
    """
    monomials = set(monomials)
    verdict = check_order_ideal(monomials)
    if not verdict:
        raise PreconditionError(f"not an order ideal: {verdict.message}", verdict)
    supports = {m.support for m in monomials}
    L = face_poset(supports)
    generators = {}
    bijection = {}
    for m in monomials:
        chain = Multichain(tuple(face_id(s) for s in m.layers()), L)
        bijection[str(m)] = chain.label
        if m.degree:
            generators.setdefault(face_id(m.support), []).append(chain)
    spec = FamilySpec.explicit(generators)
    P = build_lprime(L, spec)
    families = spec.families(L)
    if len(set(bijection.values())) != len(bijection) or len(P) != len(bijection):
        raise PosetError("layer multichains do not match the monomials one to one")
    if multicomplex_poset(monomials).relabel(bijection) != P:
        raise PosetError("L' is not isomorphic to the divisor poset")
    return MulticomplexEncoding(L, families, P, bijection)


def tree_lattice(tree):
    """
    The lattice L(T) of a rooted tree whose leaves all have the same depth:
    the Hasse diagram of T with the root on top, plus a bottom below the
    leaves.

    Parameters
    ----------
    tree : dict
        ``{"root": id, "children": {id: [child ids]}}``; nodes without an
        entry are leaves.

    Examples
    --------
    >>> tree_lattice({"root": "r", "children": {"r": ["a", "b"]}}).f_vector()
    FVector((1, 2, 1))
    """
    try:
        root = str(tree["root"])
        children = {
            str(k): [str(c) for c in v] for k, v in tree.get("children", {}).items()
        }
    except (KeyError, TypeError, AttributeError):
        raise PosetError("tree document needs 'root' and 'children'")
    depth = {root: 0}
    queue = [root]
    while queue:
        node = queue.pop(0)
        for child in children.get(node, ()):
            if child in depth:
                raise PosetError(f"node {child!r} is reached twice", (child,))
            depth[child] = depth[node] + 1
            queue.append(child)
    unreachable = set(children) - set(depth)
    if unreachable:
        names = sorted(unreachable)
        raise PosetError(f"nodes not below the root: {names}", names)
    if BOTTOM_ID in depth:
        raise PosetError(f"node id {BOTTOM_ID!r} is reserved", (BOTTOM_ID,))
    leaves = [x for x in depth if not children.get(x)]
    leaf_depths = {depth[x] for x in leaves}
    if len(leaf_depths) > 1:
        raise PosetError(
            f"leaves at different depths {sorted(leaf_depths)}", tuple(sorted(leaves))
        )
    height = leaf_depths.pop()
    ranks = {x: height - d + 1 for x, d in depth.items()}
    ranks[BOTTOM_ID] = 0
    covers = [(c, p) for p, cs in children.items() for c in cs]
    covers += [(BOTTOM_ID, x) for x in leaves]
    return RankedPoset(ranks, covers)
