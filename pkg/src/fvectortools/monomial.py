from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from fvectortools.poset import RankedPoset


@dataclass(frozen=True)
class Monomial:
    """
    A monomial x₁^e₁ ⋯ x_n^e_n over a fixed number of variables.

    Attributes
    ----------
    exponents : tuple of int
        Exponent of each variable; variables are numbered from 1.

    Examples
    --------
    >>> m = Monomial((5, 1, 0, 3))
    >>> str(m), m.degree, sorted(m.support)
    ('x1^5*x2*x4^3', 9, [1, 2, 4])
    """

    exponents: tuple

    def __post_init__(self):
        exponents = tuple(self.exponents)
        for e in exponents:
            if isinstance(e, bool) or not isinstance(e, (int, np.integer)) or e < 0:
                raise ValueError(f"exponents must be non-negative ints, got {e!r}")
        object.__setattr__(self, "exponents", tuple(int(e) for e in exponents))

    def __str__(self):
        factors = []
        for i, e in enumerate(self.exponents, start=1):
            if e == 1:
                factors.append(f"x{i}")
            elif e > 1:
                factors.append(f"x{i}^{e}")
        return "*".join(factors) if factors else "1"

    def __iter__(self):
        return iter(self.exponents)

    def __len__(self):
        return len(self.exponents)

    def __getitem__(self, i):
        return self.exponents[i]

    @property
    def nvars(self):
        return len(self.exponents)

    @property
    def degree(self):
        return sum(self.exponents)

    @property
    def support(self):
        """Variables (numbered from 1) with a positive exponent."""
        return frozenset(i for i, e in enumerate(self.exponents, start=1) if e)

    @classmethod
    def one(cls, nvars):
        return cls((0,) * nvars)

    @classmethod
    def variable(cls, i, nvars):
        exponents = [0] * nvars
        exponents[i - 1] = 1
        return cls(tuple(exponents))

    @classmethod
    def from_string(cls, s):
        """
        Parse a comma-separated exponent vector such as ``"5,1,0,3"``.
        """
        try:
            return cls(tuple(int(part) for part in s.split(",")))
        except ValueError:
            raise ValueError(f"not an exponent vector: {s!r}")

    def _check_compatible(self, other):
        if self.nvars != other.nvars:
            raise ValueError(f"monomials over different variables: {self} and {other}")

    def divides(self, other):
        self._check_compatible(other)
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __mul__(self, other):
        self._check_compatible(other)
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __truediv__(self, other):
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial(tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def times_variable(self, i):
        exponents = list(self.exponents)
        exponents[i - 1] += 1
        return Monomial(tuple(exponents))

    def over_variable(self, i):
        if self.exponents[i - 1] == 0:
            raise ValueError(f"x{i} does not divide {self}")
        exponents = list(self.exponents)
        exponents[i - 1] -= 1
        return Monomial(tuple(exponents))

    def lex_key(self):
        """
        Sort key for the monomial order in which b precedes a iff b has the
        larger exponent at the first index where they differ.
        """
        return tuple(-e for e in self.exponents)

    def sort_key(self):
        return (self.degree, self.lex_key())

    def layers(self):
        """
        The sets obtained by dividing repeatedly by the largest squarefree
        monomial, largest first.

        >>> [sorted(s) for s in Monomial((5, 1, 0, 3)).layers()]
        [[1, 2, 4], [1, 4], [1, 4], [1], [1]]
        """
        top = max(self.exponents, default=0)
        return [
            frozenset(i for i, e in enumerate(self.exponents, start=1) if e >= j)
            for j in range(1, top + 1)
        ]

    def divisors(self):
        """All monomials dividing this one, itself and 1 included."""
        ranges = [range(e + 1) for e in self.exponents]
        return [Monomial(e) for e in itertools.product(*ranges)]

    def as_dict(self):
        return {"exponents": list(self.exponents)}


def order_ideal(generators):
    """
    The smallest order ideal containing `generators`: all their divisors.

    >>> sorted(str(m) for m in order_ideal([Monomial((1, 1))]))
    ['1', 'x1', 'x1*x2', 'x2']
    """
    return {d for m in generators for d in m.divisors()}


def monomials_of_degree(nvars, degree):
    """
    All monomials of the given degree, in increasing lex order (x₁^degree
    first).
    """

    def vectors(n, k):
        if n == 1:
            yield (k,)
            return
        for e in range(k, -1, -1):
            for rest in vectors(n - 1, k - e):
                yield (e,) + rest

    if nvars == 0:
        return [Monomial(())] if degree == 0 else []
    return [Monomial(v) for v in vectors(nvars, degree)]


def parse_monomials(text):
    """
    Read a monomial file: one comma-separated exponent vector per line. Blank
    lines and lines starting with ``#`` are ignored.
    """
    monomials = set()
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            monomials.add(Monomial.from_string(line))
        except ValueError as err:
            raise ValueError(f"line {number}: {err}")
    nvars = {m.nvars for m in monomials}
    if len(nvars) > 1:
        raise ValueError(f"exponent vectors of different lengths: {sorted(nvars)}")
    return monomials


def multicomplex_poset(monomials):
    """
    The divisor poset of an order ideal of monomials: element ids are
    ``str(m)``, ranks are degrees and m covers m/x_i.
    """
    monomials = set(monomials)
    if len({m.nvars for m in monomials}) > 1:
        raise ValueError("monomials over different numbers of variables")
    ranks = {str(m): m.degree for m in monomials}
    covers = [
        (str(m.over_variable(i)), str(m))
        for m in monomials
        for i in m.support
        if m.over_variable(i) in monomials
    ]
    return RankedPoset(ranks, covers)
