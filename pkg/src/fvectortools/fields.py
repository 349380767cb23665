"""
Finite fields large enough for generic-matrix arguments, seeded generic
matrices and incremental row reduction.

Field arithmetic is done by `galois`; callers see field elements as plain
Python ints. `GF2_64` is the field with 2⁶⁴ elements, realized as GF(2)[x]
modulo x⁶⁴ + x⁴ + x³ + x + 1; `PRIME_61` is the prime field with
p = 2⁶¹ - 1.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import galois
import numpy as np


logger = logging.getLogger(__name__)

DEFAULT_SEED = 1
# Invertible matrices are drawn by rejection; over fields this large a
# second attempt is already astronomically unlikely.
MAX_ATTEMPTS = 16


class GenericityError(RuntimeError):
    """
    Raised when a computation that is independent of the generic matrix for
    almost every choice gives different results for two seeds, or violates a
    postcondition that holds generically.
    """


class FiniteField:
    """
    Scalar arithmetic of ``galois.GF(order)`` on ints.

    Parameters
    ----------
    order : int
        A prime power.
    irreducible_poly : str, optional
        The defining polynomial of an extension field, as accepted by
        `galois.GF`.

    Examples
    --------
    >>> F = FiniteField(2**4, "x^4 + x + 1")
    >>> F.mul(0b0010, 0b1000), F.add(5, 5)
    (3, 0)
    """

    def __init__(self, order, irreducible_poly=None):
        if irreducible_poly is None:
            self.gf = galois.GF(order)
        else:
            self.gf = galois.GF(order, irreducible_poly=irreducible_poly)
        self.order = order
        self.characteristic = int(self.gf.characteristic)
        self.irreducible_poly = irreducible_poly

    def __repr__(self):
        if self.irreducible_poly is None:
            return f"FiniteField({self.order!r})"
        return f"FiniteField({self.order!r}, {self.irreducible_poly!r})"

    @property
    def p(self):
        return self.characteristic

    def add(self, a, b):
        return int(self.gf(a) + self.gf(b))

    def sub(self, a, b):
        return int(self.gf(a) - self.gf(b))

    def neg(self, a):
        return int(-self.gf(a))

    def mul(self, a, b):
        return int(self.gf(a) * self.gf(b))

    def inv(self, a):
        if a % self.order == 0:
            raise ZeroDivisionError("zero has no inverse")
        return int(np.reciprocal(self.gf(a)))

    def random(self, rng, size):
        """`size` uniformly random elements drawn from the generator `rng`."""
        values = rng.integers(0, self.order, size=size, dtype=np.uint64)
        return [int(v) for v in self.gf(values.tolist())]

    def array(self, rows):
        return self.gf(rows)


GF2_64 = FiniteField(2**64, "x^64 + x^4 + x^3 + x + 1")
PRIME_61 = FiniteField(2**61 - 1)


class EchelonBasis:
    """
    Rows of a growing matrix kept in reduced form, for greedy rank
    selection.

    Examples
    --------
    >>> basis = EchelonBasis(PRIME_61, 2)
    >>> basis.add([1, 2]), basis.add([2, 4]), basis.add([0, 1])
    (True, False, True)
    """

    def __init__(self, field, width):
        self.field = field
        self.width = width
        self._rows = []
        self._pivots = []

    def __len__(self):
        return len(self._rows)

    @property
    def rank(self):
        return len(self._rows)

    @property
    def pivots(self):
        return tuple(self._pivots)

    def _reduced(self, row):
        row = self.field.array(list(row))
        if row.shape != (self.width,):
            raise ValueError(f"row has length {len(row)}, expected {self.width}")
        for pivot, kept in zip(self._pivots, self._rows):
            c = row[pivot]
            if c:
                row = row - c * kept
        return row

    def reduce(self, row):
        """The remainder of `row` modulo the span of the kept rows."""
        return [int(x) for x in self._reduced(row)]

    def add(self, row):
        """
        Keep `row` if it is independent of the kept rows. Returns whether it
        was kept.
        """
        row = self._reduced(row)
        nonzero = np.flatnonzero(row)
        if nonzero.size == 0:
            return False
        pivot = int(nonzero[0])
        self._rows.append(row / row[pivot])
        self._pivots.append(pivot)
        return True


def rank(field, rows, width):
    """Rank of a matrix with `width` columns, given as a sequence of rows."""
    rows = [list(row) for row in rows]
    if not rows or width == 0:
        return 0
    return int(np.linalg.matrix_rank(field.array(rows)))


@dataclass(frozen=True)
class GenericMatrix:
    """
    An invertible n×n matrix with uniformly random entries, reproducible
    from ``(n, seed, field)``.

    Entries are drawn from ``numpy.random.default_rng(seed)``; singular
    draws are rejected and the stream continues.
    """

    n: int
    seed: int
    field: object
    entries: tuple

    @classmethod
    def draw(cls, n, seed=DEFAULT_SEED, field=GF2_64):
        if n < 0:
            raise ValueError(f"matrix size must be non-negative, got {n=}")
        rng = np.random.default_rng(seed)
        for attempt in range(1, MAX_ATTEMPTS + 1):
            values = field.random(rng, n * n)
            entries = tuple(tuple(values[i * n : (i + 1) * n]) for i in range(n))
            if rank(field, entries, n) == n:
                return cls(n, seed, field, entries)
            logger.debug("rejected singular draw %d for n=%d seed=%d", attempt, n, seed)
        raise GenericityError(
            f"no invertible matrix in {MAX_ATTEMPTS} draws for {n=}, {seed=}"
        )

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]
