import itertools
import json
import logging
import re
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from fvectortools import io


logger = logging.getLogger(__name__)

BOTTOM_ID = "0"


class _Sentinel:
    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name

    def __str__(self):
        return self.name


# Synthetic maximum of the top extension; never stored among elements.
TOP = _Sentinel("TOP")
# Zero class of the quotient maps used by the shifting modules.
ZERO = _Sentinel("ZERO")


class PosetError(ValueError):
    """
    Raised for documents or constructions that do not describe a finite
    ranked meet semi-lattice. The offending elements are kept in `witnesses`.
    """

    def __init__(self, message, witnesses=()):
        super().__init__(message)
        self.witnesses = tuple(witnesses)


def natural_key(identifier):
    """
    Sort key comparing runs of digits numerically, so that "2" < "10".
    """
    parts = re.split(r"(\d+)", identifier)
    return tuple(int(part) if i % 2 else part for i, part in enumerate(parts))


def face_id(face):
    """
    Identifier of a face of a simplicial complex, e.g. ``{1, 2, 4} -> "124"``.

    Vertex labels are separated by dashes as soon as one of them has more than
    one digit. The empty face is the bottom element.
    """
    vertices = sorted(face)
    if not vertices:
        return BOTTOM_ID
    separator = "" if vertices[-1] < 10 else "-"
    return separator.join(str(v) for v in vertices)


class FVector:
    """
    The f-vector (f₋₁, f₀, f₁, ...) of a ranked poset, multicomplex or
    simplicial complex.

    Entries are indexed from -1, so that ``f[i]`` is the number of elements of
    rank i+1. Indices past the stored entries return 0.

    Parameters
    ----------
    entries : iterable of int
        The entries starting from f₋₁, which must equal 1.

    Examples
    --------
    >>> f = FVector((1, 4, 8, 13))
    >>> f[-1], f[2], f[7]
    (1, 13, 0)
    """

    def __init__(self, entries):
        entries = tuple(entries)
        if not entries or entries[0] != 1:
            raise ValueError(f"f-vector must start with f_-1 = 1, got {entries=}")
        for e in entries:
            if isinstance(e, bool) or not isinstance(e, (int, np.integer)) or e < 0:
                raise ValueError(f"f-vector entries must be non-negative, got {e!r}")
        self.entries = tuple(int(e) for e in entries)

    def __repr__(self):
        return f"FVector({self.entries!r})"

    def __str__(self):
        return "(" + ",".join(str(e) for e in self.entries) + ")"

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        if i < -1:
            raise IndexError(f"f-vector index out of range: {i}")
        return self.entries[i + 1] if i + 1 < len(self.entries) else 0

    def __eq__(self, other):
        if isinstance(other, FVector):
            return self.entries == other.entries
        if isinstance(other, (tuple, list)):
            return self.entries == tuple(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.entries)

    @property
    def top_index(self):
        """Largest index k with a stored entry f_k."""
        return len(self.entries) - 2

    def as_dict(self):
        return {"f_vector": list(self.entries)}

    @classmethod
    def from_string(cls, s):
        """
        Parse a comma-separated list such as ``"1,4,8,13"``.
        """
        try:
            entries = [int(part) for part in s.split(",")]
        except ValueError:
            raise ValueError(f"not a comma-separated list of integers: {s!r}")
        return cls(entries)


class Interval(NamedTuple):
    elements: frozenset
    is_chain: bool


@dataclass(frozen=True)
class Verdict:
    """
    Outcome of a property check: PASS, or FAIL with a witness.

    A verdict is truthy iff it passed. Witnesses are found in deterministic
    element order, so they are stable across runs.

    Attributes
    ----------
    passed : bool
    witness : tuple
        Elements (or indices) exhibiting the failure; empty on PASS.
    message : str
        Human-readable explanation of the failure.
    details : tuple
        Optional per-step data, e.g. one row per k for the f-vector checks.
    """

    passed: bool
    witness: tuple = ()
    message: str = ""
    details: tuple = ()

    def __bool__(self):
        return self.passed

    def __str__(self):
        return "PASS" if self.passed else f"FAIL: {self.message}"

    def as_dict(self):
        d = {
            "verdict": "PASS" if self.passed else "FAIL",
            "witness": list(self.witness),
            "message": self.message,
        }
        if self.details:
            d["details"] = [list(row) for row in self.details]
        return d


class RankedPoset:
    """
    A finite ranked meet semi-lattice.

    The order is generated by the cover pairs; ranks are stored explicitly and
    cross-checked against the covers. On construction the reachability order
    is materialized as a read-only boolean dominance matrix and all pairwise
    meets are computed from it, so that a poset that exists is valid.

    Attributes
    ----------
    elements : tuple of str
        Element identifiers, ordered by rank and then by `natural_key`.
    rank : dict
        Rank of every element.
    covers : frozenset of tuple
        Pairs ``(lower, upper)`` such that `upper` covers `lower`.
    bottom : str
        The unique element of rank 0.

    Parameters
    ----------
    ranks : mapping or iterable of pairs
        Element identifier to rank.
    covers : iterable of pairs
        Cover relations ``(lower, upper)``.

    Examples
    --------
    The three-element chain 0 < a < b.

    >>> P = RankedPoset({"0": 0, "a": 1, "b": 2}, [("0", "a"), ("a", "b")])
    >>> P.f_vector()
    FVector((1, 1, 1))
    """

    def __init__(self, ranks, covers):
        ranks = dict(ranks)
        for x, r in ranks.items():
            if not isinstance(x, str):
                raise PosetError(f"element ids must be strings, got {x!r}", (x,))
            if isinstance(r, bool) or not isinstance(r, (int, np.integer)) or r < 0:
                raise PosetError(f"rank of {x!r} must be a non-negative int", (x,))
        self.rank = {x: int(r) for x, r in ranks.items()}
        self.elements = tuple(
            sorted(self.rank, key=lambda x: (self.rank[x], natural_key(x)))
        )
        self._index = {x: i for i, x in enumerate(self.elements)}
        self._ranks = np.array([self.rank[x] for x in self.elements], dtype=np.int64)

        bottoms = [x for x in self.elements if self.rank[x] == 0]
        if not bottoms:
            raise PosetError("no element of rank 0")
        if len(bottoms) > 1:
            raise PosetError(f"duplicate bottom: {bottoms}", bottoms)
        self.bottom = bottoms[0]

        n = len(self.elements)
        cover = np.zeros((n, n), dtype=bool)
        pairs = set()
        for pair in covers:
            try:
                lower, upper = pair
            except (TypeError, ValueError):
                raise PosetError(f"cover must be a pair, got {pair!r}")
            for x in (lower, upper):
                if x not in self._index:
                    raise PosetError(
                        f"cover {pair!r} names unknown element {x!r}", (x,)
                    )
            if self.rank[upper] != self.rank[lower] + 1:
                raise PosetError(
                    f"cover ({lower!r}, {upper!r}) does not raise the rank by one: "
                    f"{self.rank[lower]} -> {self.rank[upper]}",
                    (lower, upper),
                )
            cover[self._index[lower], self._index[upper]] = True
            pairs.add((lower, upper))
        self.covers = frozenset(pairs)

        for x in self.elements[1:]:
            if not cover[:, self._index[x]].any():
                raise PosetError(f"element {x!r} covers nothing", (x,))

        cover.flags.writeable = False
        self._cover = cover
        self._leq = self._closure(cover)
        self._meet = self._meet_table()
        self._hash = None
        logger.debug("validated ranked poset with %d elements", n)

    @staticmethod
    def _closure(cover):
        # ranks strictly increase along covers, so the cover graph is acyclic
        leq = np.eye(len(cover), dtype=bool) | cover
        while True:
            step = leq | (leq @ leq)
            if (step == leq).all():
                break
            leq = step
        leq.flags.writeable = False
        return leq

    def _meet_table(self):
        n = len(self.elements)
        leq = self._leq
        meet = np.empty((n, n), dtype=np.int64)
        for i in range(n):
            meet[i, i] = i
            for j in range(i + 1, n):
                lower = np.flatnonzero(leq[:, i] & leq[:, j])
                top = lower[np.argmax(self._ranks[lower])]
                if not leq[lower, top].all():
                    x, y = self.elements[i], self.elements[j]
                    maximal = [
                        self.elements[k]
                        for k in lower
                        if not (leq[k, lower].sum() > 1)
                    ]
                    raise PosetError(
                        f"elements {x!r} and {y!r} have no meet: "
                        f"maximal common lower bounds {maximal}",
                        (x, y),
                    )
                meet[i, j] = meet[j, i] = top
        meet.flags.writeable = False
        return meet

    def __repr__(self):
        covers = sorted(self.covers, key=self._pair_key)
        return f"RankedPoset({self.rank!r}, {covers!r})"

    def __str__(self):
        lines = ["Rank Elements", "---- --------"]
        for r in range(self.max_rank + 1):
            members = " ".join(self.elements_of_rank(r))
            lines.append(f"{r:>4} {members}")
        return "\n".join(lines)

    def __eq__(self, other):
        if not isinstance(other, RankedPoset):
            return NotImplemented
        return self.rank == other.rank and self.covers == other.covers

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.rank.items()), self.covers))
        return self._hash

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._index

    def _pair_key(self, pair):
        return (self._index[pair[0]], self._index[pair[1]])

    def index(self, x):
        """Position of `x` in `elements`."""
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise PosetError(f"unknown element {x!r}", (x,))

    @property
    def dominance(self):
        """Read-only boolean matrix with ``[i, j]`` true iff x_i <= x_j."""
        return self._leq

    @property
    def cover_matrix(self):
        """Read-only boolean matrix with ``[i, j]`` true iff x_j covers x_i."""
        return self._cover

    @property
    def rank_array(self):
        return self._ranks

    @property
    def max_rank(self):
        return int(self._ranks[-1])

    @property
    def atoms(self):
        return self.elements_of_rank(1)

    def elements_of_rank(self, r):
        return tuple(x for x in self.elements if self.rank[x] == r)

    def leq(self, x, y):
        return bool(self._leq[self.index(x), self.index(y)])

    def lt(self, x, y):
        return x != y and self.leq(x, y)

    def lower_covers(self, x):
        column = self._cover[:, self.index(x)]
        return tuple(self.elements[k] for k in np.flatnonzero(column))

    def upper_covers(self, x):
        row = self._cover[self.index(x), :]
        return tuple(self.elements[k] for k in np.flatnonzero(row))

    def below(self, x):
        """All elements y with y <= x, in element order."""
        column = self._leq[:, self.index(x)]
        return tuple(self.elements[k] for k in np.flatnonzero(column))

    def above(self, x):
        """All elements y with x <= y, in element order."""
        row = self._leq[self.index(x), :]
        return tuple(self.elements[k] for k in np.flatnonzero(row))

    def atoms_below(self, x):
        return tuple(a for a in self.below(x) if self.rank[a] == 1)

    def meet(self, x, y):
        """
        Greatest common lower bound of `x` and `y`.
        """
        return self.elements[self._meet[self.index(x), self.index(y)]]

    def join(self, elements):
        """
        Least common upper bound of a nonempty collection of elements.

        Returns `TOP` when the elements have no common upper bound, i.e. when
        their join only exists in the top extension.
        """
        idx = [self.index(x) for x in elements]
        if not idx:
            raise ValueError("join of an empty collection")
        upper = np.logical_and.reduce(self._leq[idx, :], axis=0)
        candidates = np.flatnonzero(upper)
        if candidates.size == 0:
            return TOP
        low = candidates[np.argmin(self._ranks[candidates])]
        if not self._leq[low, candidates].all():
            names = [self.elements[k] for k in idx]
            raise PosetError(f"{names} have two minimal upper bounds", names)
        return self.elements[low]

    def f_vector(self):
        return FVector(np.bincount(self._ranks).tolist())

    def up_set(self, x):
        """
        The induced poset P(x) = {y : x <= y} with ranks re-based so that `x`
        has rank 0.
        """
        members = self.above(x)
        offset = self.rank[x]
        ranks = {y: self.rank[y] - offset for y in members}
        covers = [
            (a, b) for (a, b) in self.covers if a in ranks and b in ranks
        ]
        return RankedPoset(ranks, covers)

    def truncated(self, r):
        """
        The induced poset on the elements of rank at most `r`.
        """
        ranks = {y: s for y, s in self.rank.items() if s <= r}
        covers = [(a, b) for (a, b) in self.covers if b in ranks]
        return RankedPoset(ranks, covers)

    def shadow(self, k):
        """
        Elements covered by some element of rank k+1.
        """
        upper = np.flatnonzero(self._ranks == k + 1)
        if upper.size == 0:
            return frozenset()
        lower = np.flatnonzero(self._cover[:, upper].any(axis=1))
        return frozenset(self.elements[i] for i in lower)

    def interval(self, x, y):
        """
        The closed interval [x, y] and whether it is totally ordered.
        """
        i, j = self.index(x), self.index(y)
        if not self._leq[i, j]:
            raise PosetError(f"{x!r} is not below {y!r}", (x, y))
        members = np.flatnonzero(self._leq[i, :] & self._leq[:, j])
        is_chain = members.size == self.rank[y] - self.rank[x] + 1
        return Interval(frozenset(self.elements[k] for k in members), bool(is_chain))

    def relabel(self, mapping):
        """
        Return an isomorphic copy with every element `x` renamed `mapping[x]`.
        """
        ranks = {mapping[x]: r for x, r in self.rank.items()}
        if len(ranks) != len(self.rank):
            raise ValueError("relabelling is not injective")
        covers = [(mapping[a], mapping[b]) for (a, b) in self.covers]
        return RankedPoset(ranks, covers)

    def as_dict(self):
        return {
            "elements": [{"id": x, "rank": self.rank[x]} for x in self.elements],
            "covers": [list(p) for p in sorted(self.covers, key=self._pair_key)],
        }

    @classmethod
    def from_dict(cls, d):
        """
        Construct a RankedPoset from a dictionary in the JSON poset format.
        """
        try:
            records = d["elements"]
            covers = d["covers"]
        except (KeyError, TypeError):
            raise PosetError("poset document needs 'elements' and 'covers'")
        ranks = {}
        for record in records:
            try:
                x, r = record["id"], record["rank"]
            except (KeyError, TypeError):
                raise PosetError(f"malformed element record {record!r}")
            if x in ranks:
                raise PosetError(f"duplicate element id {x!r}", (x,))
            ranks[x] = r
        return cls(ranks, [tuple(c) if isinstance(c, list) else c for c in covers])

    def save(self, file=None, *, silent=False, **kwargs):
        """
        Return the poset as a JSON string and optionally save it to file and/or
        print it to stdout.

        See also
        --------
        load
        """
        s = json.dumps(self, cls=io.JSONEncoder, indent=4)
        if file is not None:
            with open(file, "w", **kwargs) as handle:
                handle.write(s)
        if not silent:
            print(s)
        return s

    @classmethod
    def load(cls, file, **kwargs):
        """
        Construct a poset from a JSON file in the poset format.

        See also
        --------
        save
        """
        with open(file, "r", **kwargs) as handle:
            return load_poset(handle.read())


@dataclass(frozen=True)
class TopExtension:
    """
    The lattice obtained by adjoining the sentinel `TOP` above every element
    of a ranked meet semi-lattice. `TOP` carries no rank.
    """

    base: RankedPoset

    @property
    def elements(self):
        return self.base.elements + (TOP,)

    def rank(self, x):
        return None if x is TOP else self.base.rank[x]

    def leq(self, x, y):
        if y is TOP:
            return True
        if x is TOP:
            return False
        return self.base.leq(x, y)

    def join(self, elements):
        elements = list(elements)
        if any(x is TOP for x in elements):
            return TOP
        if not elements:
            return self.base.bottom
        return self.base.join(elements)


def load_poset(document):
    """
    Parse a JSON poset document and validate it.

    Parameters
    ----------
    document : str
        Text of the form ``{"elements": [{"id": ..., "rank": ...}, ...],
        "covers": [[lower, upper], ...]}``.

    Raises
    ------
    PosetError
        If the text is not JSON, not a poset document, or describes something
        other than a finite ranked meet semi-lattice.
    """
    try:
        obj = json.loads(document, cls=io.JSONDecoder)
    except json.JSONDecodeError as err:
        raise PosetError(f"not a JSON document: {err}")
    if not isinstance(obj, RankedPoset):
        carrier = getattr(obj, "carrier", None)
        if isinstance(carrier, RankedPoset):
            return carrier
        raise PosetError("document is not a poset")
    return obj


def face_poset(faces):
    """
    Face poset of the simplicial complex generated by `faces`.

    Every subset of a given face is included. Vertices must be positive
    integers; the empty face is the bottom element.

    Examples
    --------
    >>> face_poset([(1, 2), (2, 3)]).f_vector()
    FVector((1, 3, 2))
    """
    closed = set()
    for face in faces:
        face = frozenset(face)
        for v in face:
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v < 1:
                raise ValueError(f"vertices must be positive integers, got {v!r}")
        for size in range(len(face) + 1):
            closed.update(frozenset(s) for s in itertools.combinations(face, size))
    closed.add(frozenset())
    ranks = {face_id(face): len(face) for face in closed}
    if len(ranks) != len(closed):
        ids = sorted(face_id(face) for face in closed)
        clashes = sorted({x for x, y in zip(ids, ids[1:]) if x == y})
        raise PosetError(f"faces share the ids {clashes}", clashes)
    covers = [
        (face_id(face - {v}), face_id(face)) for face in closed for v in face
    ]
    return RankedPoset(ranks, covers)
