"""
Exterior algebraic shifting of geometric meet semi-lattices.

The atoms of a geometric semi-lattice L are labelled 1..n in element order.
The exterior face ring of L identifies every squarefree class e_T with the
element ∨T when r(∨T) = |T| and kills it otherwise, so that its graded
dimensions are the f-vector of L. Shifting changes basis by a generic matrix
over a field of characteristic 2 and keeps, greedily in lex order, the sets
S whose generic class is independent of the lex-smaller ones.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

import cachetools
import cachetools.keys

from fvectortools.fields import (
    DEFAULT_SEED,
    GF2_64,
    EchelonBasis,
    GenericityError,
    GenericMatrix,
)
from fvectortools.poset import TOP, ZERO, FVector
from fvectortools.properties import (
    PreconditionError,
    check_atomic,
    check_geometric,
    check_shifted,
)


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimplicialFamily:
    """
    A family of finite sets of positive integers, graded by size.

    Examples
    --------
    >>> F = SimplicialFamily.from_faces([(), (1,), (2,), (1, 2)])
    >>> F.f_vector(), F.is_complex()
    (FVector((1, 2, 1)), True)
    """

    faces: frozenset

    @classmethod
    def from_faces(cls, faces):
        return cls(frozenset(frozenset(face) for face in faces))

    def __len__(self):
        return len(self.faces)

    def __iter__(self):
        return iter(self.sorted_faces())

    def __contains__(self, face):
        return frozenset(face) in self.faces

    def __str__(self):
        return "{" + ",".join(self.labels()) + "}"

    def sorted_faces(self):
        return sorted(self.faces, key=lambda face: (len(face), sorted(face)))

    def vertices(self):
        return frozenset().union(*self.faces)

    def labels(self):
        """Face labels in `sorted_faces` order, ``∅`` for the empty face."""
        separator = label_separator(self.vertices())
        return [
            face_label(face, separator) if face else "∅"
            for face in self.sorted_faces()
        ]

    def by_degree(self):
        """Faces grouped by size, as sorted tuples."""
        degrees = {}
        for face in self.sorted_faces():
            degrees.setdefault(len(face), []).append(tuple(sorted(face)))
        return degrees

    def f_vector(self):
        sizes = [len(face) for face in self.faces]
        counts = [0] * (max(sizes, default=-1) + 1)
        for size in sizes:
            counts[size] += 1
        return FVector(counts)

    def is_complex(self):
        return all(
            face - {v} in self.faces for face in self.faces for v in face
        ) and (not self.faces or frozenset() in self.faces)

    def is_shifted(self):
        return bool(check_shifted(self.faces))

    def as_dict(self):
        return {
            "faces": [sorted(face) for face in self.sorted_faces()],
            "f_vector": list(self.f_vector()),
        }


def label_separator(vertices):
    """``""`` when every vertex is below 10, ``"-"`` otherwise."""
    return "" if all(v < 10 for v in vertices) else "-"


def face_label(face, separator=None):
    """
    The vertices of `face` in increasing order, joined by `separator`.

    The separator defaults to ``label_separator(face)``. Families pass the
    separator of their whole vertex set, so that all labels of one family
    are written the same way: ``12`` next to ``23``, but ``1-2`` next to
    ``3-11``.
    """
    vertices = sorted(face)
    if separator is None:
        separator = label_separator(vertices)
    return separator.join(str(v) for v in vertices)


def atom_labels(L):
    """Atom id -> label 1..n, in element order."""
    return {a: i for i, a in enumerate(L.atoms, start=1)}


def _require_geometric(L):
    verdict = check_geometric(L)
    if not verdict:
        raise PreconditionError(f"poset is not geometric: {verdict.message}", verdict)


def project_subset(L, T):
    """
    The element ∨T of L when the join exists and has rank |T|, otherwise
    `ZERO`.

    Parameters
    ----------
    L : RankedPoset
        A geometric semi-lattice.
    T : iterable of str
        Atoms of L.
    """
    _require_geometric(L)
    T = tuple(T)
    atoms = set(L.atoms)
    for a in T:
        if a not in atoms:
            raise ValueError(f"{a!r} is not an atom")
    if not T:
        return L.bottom
    top = L.join(T)
    if top is TOP or L.rank[top] != len(set(T)):
        return ZERO
    return top


def graded_dimensions(L):
    """
    Dimensions of the graded pieces of the exterior face ring of L: the
    number of distinct nonzero classes of k-sets of atoms, for every k.

    Raises
    ------
    GenericityError
        If the dimensions differ from the f-vector of L.
    """
    _require_geometric(L)
    atoms = L.atoms
    dims = [1]
    for k in range(1, L.max_rank + 1):
        classes = {project_subset(L, T) for T in itertools.combinations(atoms, k)}
        classes.discard(ZERO)
        dims.append(len(classes))
    f = FVector(dims)
    if f != L.f_vector():
        raise GenericityError(f"graded dimensions {f} differ from {L.f_vector()}")
    return f


def _minor_function(G):
    field = G.field
    if field.characteristic != 2:
        raise ValueError(f"exterior shifting needs characteristic 2, got {field!r}")

    @cachetools.cached(cache={}, key=cachetools.keys.hashkey)
    def minor(rows, cols):
        # Laplace expansion along the first row; no signs in characteristic 2
        if not rows:
            return 1
        head, rest = rows[0], rows[1:]
        total = 0
        for j, col in enumerate(cols):
            entry = G[head, col]
            if entry:
                sub = minor(rest, cols[:j] + cols[j + 1 :])
                if sub:
                    total = field.add(total, field.mul(entry, sub))
        return total

    return minor


def _greedy_shift(n, degrees, G):
    # degrees: k -> (number of columns, {T: column}) over 0-based atom tuples
    minor = _minor_function(G)
    field = G.field
    faces = {frozenset()}
    for k, (width, targets) in sorted(degrees.items()):
        if width == 0:
            continue
        basis = EchelonBasis(field, width)
        for S in itertools.combinations(range(n), k):
            row = [0] * width
            for T, column in targets.items():
                value = minor(S, T)
                if value:
                    row[column] = field.add(row[column], value)
            if basis.add(row):
                faces.add(frozenset(i + 1 for i in S))
                if basis.rank == width:
                    break
        logger.debug(
            "degree %d: %d columns, %d classes, %d kept",
            k,
            width,
            len(targets),
            basis.rank,
        )
    return SimplicialFamily(frozenset(faces))


def _certify(result, expected_f, what):
    problems = []
    if result.f_vector() != expected_f:
        problems.append(f"f-vector {result.f_vector()} instead of {expected_f}")
    if not result.is_complex():
        problems.append("not a simplicial complex")
    if not result.is_shifted():
        problems.append("not shifted")
    if problems:
        message = f"{what}: " + ", ".join(problems)
        logger.warning(message)
        raise GenericityError(message)


def _compare_seeds(first, second, seed, seed2):
    if first != second:
        message = f"seeds {seed} and {seed2} give different shifts: {first} != {second}"
        logger.warning(message)
        raise GenericityError(message)


def shift_exterior(L, seed=DEFAULT_SEED, seed2=None, *, field=GF2_64):
    """
    The exterior shifting Δ(L) of a geometric semi-lattice.

    For every k, the row of a k-set S of atom labels (in lex order) has in
    the column of each rank-k element l the sum of the minors det G[S, T]
    over the k-sets T with ∨T = l. S is kept iff its row is independent of
    the rows kept before it.

    Parameters
    ----------
    L : RankedPoset
        A geometric semi-lattice.
    seed : int
        Seed of the generic matrix.
    seed2 : int, optional
        A second seed; the two shifts must agree.

    Raises
    ------
    PreconditionError
        If L is not geometric.
    GenericityError
        If the result is not a shifted complex with the f-vector of L, or the
        two seeds disagree.

    Examples
    --------
    >>> from fvectortools import fixtures
    >>> str(shift_exterior(fixtures.pencil()))
    '{∅,1,2,3,12}'
    """
    _require_geometric(L)
    atoms = L.atoms
    n = len(atoms)
    degrees = {}
    for k in range(1, L.max_rank + 1):
        columns = {l: j for j, l in enumerate(L.elements_of_rank(k))}
        targets = {}
        for T in itertools.combinations(range(n), k):
            l = project_subset(L, [atoms[i] for i in T])
            if l is not ZERO:
                targets[T] = columns[l]
        degrees[k] = (len(columns), targets)
    G = GenericMatrix.draw(n, seed, field)
    result = _greedy_shift(n, degrees, G)
    _certify(result, L.f_vector(), f"exterior shift with seed {seed}")
    if seed2 is not None:
        _compare_seeds(result, shift_exterior(L, seed2, field=field), seed, seed2)
    return result


def classical_exterior_shift(faces, seed=DEFAULT_SEED, *, field=GF2_64):
    """
    Exterior shifting of the simplicial complex generated by `faces`, with
    one column per face. Vertices are relabelled 1..n in increasing order.
    """
    closed = set()
    for face in faces:
        face = frozenset(face)
        for size in range(len(face) + 1):
            closed.update(frozenset(s) for s in itertools.combinations(face, size))
    vertices = sorted(set().union(*closed)) if closed else []
    position = {v: i for i, v in enumerate(vertices)}
    degrees = {}
    top = max((len(face) for face in closed), default=0)
    for k in range(1, top + 1):
        members = sorted(
            tuple(sorted(position[v] for v in face))
            for face in closed
            if len(face) == k
        )
        degrees[k] = (len(members), {T: j for j, T in enumerate(members)})
    G = GenericMatrix.draw(len(vertices), seed, field)
    result = _greedy_shift(len(vertices), degrees, G)
    expected = SimplicialFamily.from_faces(
        frozenset(position[v] + 1 for v in face) for face in closed | {frozenset()}
    )
    _certify(result, expected.f_vector(), f"classical exterior shift with seed {seed}")
    return result


def bjorner_delta(L, ordering=None):
    """
    The complex {S_x : x in L}, where S_x is the lexicographically least set
    of r(x) atoms with join x under the given atom `ordering`.

    Faces are reported with the fixed atom labels of `atom_labels`; the
    ordering only decides which set is least.

    Raises
    ------
    PreconditionError
        If L is not atomic, or some x has no generating set of r(x) atoms, or
        the sets do not form a complex with the f-vector of L.
    """
    atomic = check_atomic(L)
    if not atomic:
        raise PreconditionError(f"poset is not atomic: {atomic.message}", atomic)
    labels = atom_labels(L)
    if ordering is None:
        ordering = L.atoms
    ordering = tuple(ordering)
    if sorted(ordering, key=L.index) != list(L.atoms):
        raise ValueError(f"ordering {ordering} is not a permutation of the atoms")
    faces = {frozenset()}
    for x in L.elements[1:]:
        below = [a for a in ordering if L.leq(a, x)]
        for S in itertools.combinations(below, L.rank[x]):
            if L.join(S) == x:
                faces.add(frozenset(labels[a] for a in S))
                break
        else:
            raise PreconditionError(f"no set of {L.rank[x]} atoms has join {x}")
    result = SimplicialFamily(frozenset(faces))
    if not result.is_complex() or result.f_vector() != L.f_vector():
        raise PreconditionError(
            f"{result} is not a complex with f-vector {L.f_vector()}"
        )
    return result
