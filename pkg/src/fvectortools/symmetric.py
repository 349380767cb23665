"""
Generalized multicomplexes and their symmetric algebraic shifting.

A member of the family ℙ starts from a geometric semi-lattice L, each
element l labelled by the squarefree monomial of the atoms below it, and
grows by extension steps that add a monomial x_a·m one rank above m. The
Stanley-Reisner analogue k[P] kills the monomials whose exponents exceed the
variable caps, or whose prime powers have no join, or a join of the wrong
rank, and identifies monomials with the same join. Shifting it by a generic
change of variables gives an order ideal of monomials with the f-vector of
P.
"""
from __future__ import annotations

import json
import logging
from typing import NamedTuple

import cachetools
import cachetools.keys

from fvectortools import io
from fvectortools.fields import (
    DEFAULT_SEED,
    PRIME_61,
    EchelonBasis,
    GenericityError,
    GenericMatrix,
)
from fvectortools.monomial import Monomial, monomials_of_degree
from fvectortools.poset import (
    TOP,
    ZERO,
    FVector,
    PosetError,
    RankedPoset,
    TopExtension,
    face_poset,
)
from fvectortools.properties import (
    PreconditionError,
    check_geometric,
    check_order_ideal,
    check_parallelogram,
)


logger = logging.getLogger(__name__)


class ExtensionError(ValueError):
    """
    Raised when an extension step violates its side conditions. Every failed
    condition is listed in `failures`.
    """

    def __init__(self, message, failures=()):
        super().__init__(message)
        self.failures = tuple(failures)


class ExtensionStep(NamedTuple):
    monomial: str
    variable: int


class PPoset:
    """
    A member of ℙ: a ranked meet semi-lattice whose elements are monomials.

    Element ids of the carrier are ``str(m)`` of their monomial labels.

    Attributes
    ----------
    carrier : RankedPoset
    labels : dict
        Element id to `Monomial`.
    origin : RankedPoset or None
        The geometric semi-lattice the member was seeded from.
    log : tuple of ExtensionStep
        The extension steps applied to the seed, in order.
    """

    def __init__(self, carrier, labels, origin=None, log=()):
        labels = dict(labels)
        if set(labels) != set(carrier.elements):
            missing = sorted(set(carrier.elements) ^ set(labels))
            raise PosetError(f"labels do not match the elements: {missing}", missing)
        seen = {}
        for x in carrier.elements:
            m = labels[x]
            if m in seen:
                raise PosetError(
                    f"elements {seen[m]!r} and {x!r} share the label {m}", (seen[m], x)
                )
            seen[m] = x
        if len({m.nvars for m in labels.values()}) > 1:
            raise PosetError("labels use different numbers of variables")
        self.carrier = carrier
        self.labels = labels
        self.origin = origin
        self.log = tuple(ExtensionStep(str(m), int(a)) for m, a in log)
        self._by_monomial = seen

    def __repr__(self):
        return f"PPoset({self.carrier!r}, {self.labels!r})"

    def __str__(self):
        return str(self.carrier)

    def __eq__(self, other):
        if not isinstance(other, PPoset):
            return NotImplemented
        return self.carrier == other.carrier and self.labels == other.labels

    def __hash__(self):
        return hash(self.carrier)

    def __len__(self):
        return len(self.carrier)

    def __contains__(self, m):
        return m in self._by_monomial

    @property
    def nvars(self):
        return self.labels[self.carrier.bottom].nvars

    @property
    def monomials(self):
        return frozenset(self._by_monomial)

    def element(self, m):
        """Element id labelled by the monomial `m`."""
        try:
            return self._by_monomial[m]
        except KeyError:
            raise PosetError(f"{m} is not in the poset", (str(m),))

    def rank_of(self, m):
        return self.carrier.rank[self.element(m)]

    def f_vector(self):
        return self.carrier.f_vector()

    def validate(self):
        """Re-check the parallelogram property of the carrier."""
        verdict = check_parallelogram(self.carrier)
        if not verdict:
            raise PosetError(
                f"no parallelogram property: {verdict.message}", verdict.witness
            )
        return self

    def as_dict(self):
        d = self.carrier.as_dict()
        d["labels"] = {x: list(self.labels[x].exponents) for x in self.carrier}
        d["log"] = [list(step) for step in self.log]
        if self.origin is not None:
            d["origin"] = self.origin.as_dict()
        return d

    @classmethod
    def from_dict(cls, d):
        carrier = d if isinstance(d, RankedPoset) else RankedPoset.from_dict(d)
        try:
            labels = {x: Monomial(tuple(e)) for x, e in d["labels"].items()}
        except (KeyError, TypeError, AttributeError):
            raise PosetError("PPoset document needs 'labels'")
        origin = d.get("origin")
        if isinstance(origin, dict):
            origin = RankedPoset.from_dict(origin)
        return cls(carrier, labels, origin, d.get("log", ()))

    def save(self, file=None, *, silent=False, **kwargs):
        s = json.dumps(self, cls=io.JSONEncoder, indent=4)
        if file is not None:
            with open(file, "w", **kwargs) as handle:
                handle.write(s)
        if not silent:
            print(s)
        return s

    @classmethod
    def load(cls, file, **kwargs):
        with open(file, "r", **kwargs) as handle:
            obj = json.load(handle, cls=io.JSONDecoder)
        if not isinstance(obj, PPoset):
            raise PosetError(f"{file} is not a PPoset document")
        return obj

    @classmethod
    def from_multicomplex(cls, monomials):
        """
        Build an order ideal of monomials as a member of ℙ: the seed of the
        face complex of its squarefree part, extended once per remaining
        monomial in degree order.

        Every variable must occur in some monomial.
        """
        monomials = set(monomials)
        if not monomials:
            raise ValueError("no monomials given")
        verdict = check_order_ideal(monomials)
        if not verdict:
            raise PreconditionError(f"not an order ideal: {verdict.message}", verdict)
        nvars = {m.nvars for m in monomials}.pop()
        unused = [
            i
            for i in range(1, nvars + 1)
            if Monomial.variable(i, nvars) not in monomials
        ]
        if unused:
            raise ValueError(f"variables {unused} occur in no monomial")
        squarefree = [m.support for m in monomials if max(m.exponents, default=0) <= 1]
        P = seed_from_geometric(face_poset(squarefree))
        rest = sorted(
            (m for m in monomials if max(m.exponents, default=0) > 1),
            key=Monomial.sort_key,
        )
        for m in rest:
            a = next(i for i, e in enumerate(m.exponents, start=1) if e >= 2)
            P = extend(P, m.over_variable(a), a, validate=False)
        return P.validate()


def seed_from_geometric(L):
    """
    The member M₀ of ℙ seeded by a geometric semi-lattice: every l labelled by
    the product of the variables of the atoms below it, with rank r(l).
    Variables are numbered by the atoms in element order.

    Raises
    ------
    PreconditionError
        If L is not geometric.
    PosetError
        If two elements have the same atoms below them.
    """
    verdict = check_geometric(L)
    if not verdict:
        raise PreconditionError(f"poset is not geometric: {verdict.message}", verdict)
    atoms = L.atoms
    labels = {
        x: Monomial(tuple(1 if L.leq(a, x) else 0 for a in atoms)) for x in L.elements
    }
    seen = {}
    for x, m in labels.items():
        if m in seen:
            raise PosetError(
                f"elements {seen[m]!r} and {x!r} have the same atoms below them",
                (seen[m], x),
            )
        seen[m] = x
    mapping = {x: str(m) for x, m in labels.items()}
    carrier = L.relabel(mapping)
    return PPoset(carrier, {mapping[x]: m for x, m in labels.items()}, origin=L)


def extend(P, m, a, validate=True):
    """
    Add x_a·m one rank above m, covering every (x_a/x_b)·m with x_b | m.

    The step needs x_a | m, every (x_a/x_b)·m in P with the rank of m, and
    x_a·m not in P.

    Parameters
    ----------
    P : PPoset
    m : Monomial
    a : int
        Variable index, from 1.
    validate : bool
        Re-check the parallelogram property of the result.

    Raises
    ------
    ExtensionError
        Listing every failed condition.
    """
    if not isinstance(m, Monomial):
        raise TypeError(f"expected a Monomial, got {m!r}")
    if not 1 <= a <= P.nvars:
        raise ExtensionError(f"no variable x{a}", (f"no variable x{a}",))
    failures = []
    if m not in P:
        failures.append(f"{m} is not in the poset")
    if m.exponents[a - 1] == 0:
        failures.append(f"x{a} does not divide {m}")
    lower = []
    if m in P:
        rank = P.rank_of(m)
        for b in sorted(m.support):
            neighbour = m.times_variable(a).over_variable(b)
            if neighbour not in P:
                failures.append(f"(x{a}/x{b})·{m} = {neighbour} is not in the poset")
            elif P.rank_of(neighbour) != rank:
                failures.append(f"{neighbour} does not have the rank {rank} of {m}")
            else:
                lower.append(neighbour)
    new = m.times_variable(a)
    if new in P:
        failures.append(f"x{a}·{m} = {new} is already in the poset")
    if failures:
        raise ExtensionError(
            f"cannot extend {m} by x{a}: " + "; ".join(failures), failures
        )
    ranks = dict(P.carrier.rank)
    ranks[str(new)] = rank + 1
    covers = set(P.carrier.covers)
    covers.update((P.element(x), str(new)) for x in lower)
    labels = dict(P.labels)
    labels[str(new)] = new
    result = PPoset(
        RankedPoset(ranks, covers),
        labels,
        P.origin,
        P.log + (ExtensionStep(str(m), a),),
    )
    logger.debug("extended %s by x%d to %s at rank %d", m, a, new, rank + 1)
    if validate:
        verdict = check_parallelogram(result.carrier)
        if not verdict:
            raise ExtensionError(
                f"extension loses the parallelogram property: {verdict.message}",
                (verdict.message,),
            )
    return result


def variable_caps(P):
    """
    The largest exponent of every variable among the labels of P.

    Examples
    --------
    >>> from fvectortools.monomial import parse_monomials
    >>> M = parse_monomials("0,0\\n1,0\\n0,1\\n2,0")
    >>> variable_caps(PPoset.from_multicomplex(M))
    (2, 1)
    """
    caps = [0] * P.nvars
    for m in P.labels.values():
        caps = [max(c, e) for c, e in zip(caps, m.exponents)]
    return tuple(caps)


def _projector(P):
    caps = variable_caps(P)
    hat = TopExtension(P.carrier)
    nvars = P.nvars

    @cachetools.cached(cache={}, key=cachetools.keys.hashkey)
    def project(exponents):
        if len(exponents) != nvars:
            raise ValueError(f"expected {nvars} exponents, got {len(exponents)}")
        if any(e > c for e, c in zip(exponents, caps)):
            return ZERO
        powers = []
        for i, e in enumerate(exponents):
            if e == 0:
                continue
            power = Monomial(tuple(e if j == i else 0 for j in range(nvars)))
            if power not in P:
                raise PreconditionError(
                    f"prime power {power} is missing from the poset"
                )
            powers.append(P.element(power))
        top = hat.join(powers)
        if top is TOP or P.carrier.rank[top] != sum(exponents):
            return ZERO
        return top

    return project


def project_monomial(P, a):
    """
    The element of P representing the class of x^a in k[P], or `ZERO`.

    The class vanishes when some exponent exceeds its cap, when the prime
    powers x_i^{a_i} have no join in P, or when their join has a rank other
    than the degree of x^a.
    """
    exponents = tuple(a.exponents if isinstance(a, Monomial) else a)
    return _projector(P)(exponents)


def _times_linear_form(poly, row, field, caps):
    # poly * (Σ_j row[j] x_j), dropping terms above the caps
    result = {}
    for exponents, coefficient in poly.items():
        for j, g in enumerate(row):
            if not g or (caps is not None and exponents[j] >= caps[j]):
                continue
            term = exponents[:j] + (exponents[j] + 1,) + exponents[j + 1 :]
            value = field.add(result.get(term, 0), field.mul(coefficient, g))
            if value:
                result[term] = value
            else:
                result.pop(term, None)
    return result


def _greedy_symmetric(nvars, max_degree, G, columns_of, caps):
    field = G.field

    @cachetools.cached(cache={}, key=cachetools.keys.hashkey)
    def power_product(exponents):
        # Π y_i^{a_i}, expanded and capped
        if not any(exponents):
            return {exponents: 1}
        last = max(i for i, e in enumerate(exponents) if e)
        previous = exponents[:last] + (exponents[last] - 1,) + exponents[last + 1 :]
        return _times_linear_form(power_product(previous), G.entries[last], field, caps)

    kept = {Monomial.one(nvars)}
    for k in range(1, max_degree + 1):
        column, width = columns_of(k)
        if width == 0:
            continue
        basis = EchelonBasis(field, width)
        for a in monomials_of_degree(nvars, k):
            row = [0] * width
            for term, coefficient in power_product(a.exponents).items():
                j = column(term)
                if j is not None:
                    row[j] = field.add(row[j], coefficient)
            if basis.add(row):
                kept.add(a)
                if basis.rank == width:
                    break
        logger.debug("degree %d: %d columns, %d kept", k, width, basis.rank)
    return frozenset(kept)


def _degree_counts(monomials):
    counts = [0] * (max((m.degree for m in monomials), default=-1) + 1)
    for m in monomials:
        counts[m.degree] += 1
    return FVector(counts)


def _certify(result, expected_f, what):
    problems = []
    if not check_order_ideal(result):
        problems.append("not an order ideal")
    if _degree_counts(result) != expected_f:
        problems.append(f"f-vector {_degree_counts(result)} instead of {expected_f}")
    if problems:
        message = f"{what}: " + ", ".join(problems)
        logger.warning(message)
        raise GenericityError(message)


def shift_symmetric(P, seed=DEFAULT_SEED, seed2=None, *, field=PRIME_61):
    """
    The symmetric shifting Δ(P): the monomials y^a whose generic class in
    k[P] is independent of the classes of the lex-smaller monomials of the
    same degree, with y = G·x for a generic matrix G.

    Raises
    ------
    GenericityError
        If the result is not an order ideal with the f-vector of P, or the
        two seeds disagree.
    """
    nvars = P.nvars
    project = _projector(P)
    caps = variable_caps(P)

    def columns_of(k):
        index = {x: j for j, x in enumerate(P.carrier.elements_of_rank(k))}

        def column(term):
            x = project(term)
            return None if x is ZERO else index[x]

        return column, len(index)

    G = GenericMatrix.draw(nvars, seed, field)
    result = _greedy_symmetric(nvars, P.carrier.max_rank, G, columns_of, caps)
    _certify(result, P.f_vector(), f"symmetric shift with seed {seed}")
    if seed2 is not None:
        other = shift_symmetric(P, seed2, field=field)
        if other != result:
            message = f"seeds {seed} and {seed2} give different shifts"
            logger.warning(message)
            raise GenericityError(message)
    return result


def truncate(P, r):
    """The member of ℙ on the elements of rank at most `r`."""
    carrier = P.carrier.truncated(r)
    labels = {x: P.labels[x] for x in carrier}
    log = [
        step
        for step in P.log
        if str(P.labels[step.monomial].times_variable(step.variable)) in carrier
    ]
    return PPoset(carrier, labels, P.origin, log)


def shift_truncations(P, seed=DEFAULT_SEED):
    """
    Δ(P≤r) for r = 0, ..., max rank, checking that each is contained in the
    next.
    """
    shifts = []
    for r in range(P.carrier.max_rank + 1):
        current = shift_symmetric(truncate(P, r), seed)
        if shifts and not shifts[-1] <= current:
            missing = sorted(map(str, shifts[-1] - current))
            raise GenericityError(f"shift at rank {r} drops {missing}")
        shifts.append(current)
    return shifts


def classical_symmetric_shift(monomials, seed=DEFAULT_SEED, *, field=PRIME_61):
    """
    Generic initial segment of an order ideal of monomials, keeping the
    coefficients of members only. Used to cross-check `shift_symmetric` on
    multicomplexes.
    """
    monomials = set(monomials)
    verdict = check_order_ideal(monomials)
    if not verdict:
        raise PreconditionError(f"not an order ideal: {verdict.message}", verdict)
    nvars = {m.nvars for m in monomials}.pop()
    max_degree = max(m.degree for m in monomials)

    def columns_of(k):
        members = sorted(
            (m for m in monomials if m.degree == k), key=Monomial.sort_key
        )
        index = {m.exponents: j for j, m in enumerate(members)}
        return index.get, len(index)

    G = GenericMatrix.draw(nvars, seed, field)
    result = _greedy_symmetric(nvars, max_degree, G, columns_of, None)
    _certify(result, _degree_counts(monomials), f"classical shift with seed {seed}")
    return result
