"""
Small posets with known answers, emitted by ``fixtures emit`` and
re-checked by ``fixtures verify``.
"""
from __future__ import annotations

import logging
from dataclasses import astuple
from typing import NamedTuple

from fvectortools import bounds, exterior, lprime, properties, symmetric
from fvectortools.monomial import Monomial
from fvectortools.poset import ZERO, RankedPoset, face_poset


logger = logging.getLogger(__name__)


def square():
    """A square: four vertices, four edges 12, 23, 34, 14 and one 2-cell."""
    edges = ["12", "23", "34", "14"]
    ranks = {"0": 0, "1": 1, "2": 1, "3": 1, "4": 1, "1234": 3}
    ranks.update({e: 2 for e in edges})
    covers = [("0", a) for a in "1234"]
    covers += [(a, e) for e in edges for a in e]
    covers += [(e, "1234") for e in edges]
    return RankedPoset(ranks, covers)


def square_lprime():
    return lprime.build_lprime(square(), lprime.FamilySpec.rank_bounded())


def c4():
    """The 4-cycle as a simplicial complex."""
    return face_poset([(1, 2), (2, 3), (3, 4), (1, 4)])


def triangle():
    """Boundary of a triangle."""
    return face_poset([(1, 2), (2, 3), (1, 3)])


def triangle_complex():
    """The full 2-simplex."""
    return face_poset([(1, 2, 3)])


def three_lines():
    """Three lines in general position in the plane and their meeting points."""
    ranks = {"0": 0, "l1": 1, "l2": 1, "l3": 1, "p12": 2, "p13": 2, "p23": 2}
    covers = [("0", "l1"), ("0", "l2"), ("0", "l3")]
    covers += [(f"l{i}", f"p{i}{j}") for i, j in [(1, 2), (1, 3), (2, 3)]]
    covers += [(f"l{j}", f"p{i}{j}") for i, j in [(1, 2), (1, 3), (2, 3)]]
    return RankedPoset(ranks, covers)


def pencil():
    """Three lines through one point."""
    ranks = {"0": 0, "l1": 1, "l2": 1, "l3": 1, "p": 2}
    covers = [("0", "l1"), ("0", "l2"), ("0", "l3")]
    covers += [("l1", "p"), ("l2", "p"), ("l3", "p")]
    return RankedPoset(ranks, covers)


TREE = {
    "root": "r",
    "children": {"r": ["a", "b"], "a": ["a1", "a2"], "b": ["b1", "b2"]},
}


def tree():
    """L(T) of the full binary tree of depth 2."""
    return lprime.tree_lattice(TREE)


def monomials_1221():
    """The multicomplex {1, x, y, x², xy, x³}."""
    return {
        Monomial(e) for e in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (3, 0)]
    }


def multicomplex_1221():
    return symmetric.PPoset.from_multicomplex(monomials_1221())


def pencil_extended():
    """The seed of the pencil, extended by x₁ → x₁² and then x₂ → x₂²."""
    P = symmetric.seed_from_geometric(pencil())
    P = symmetric.extend(P, Monomial((1, 0, 0)), 1)
    return symmetric.extend(P, Monomial((0, 1, 0)), 2)


FIXTURES = {
    "square": square,
    "square-lprime": square_lprime,
    "c4": c4,
    "triangle": triangle,
    "triangle-complex": triangle_complex,
    "3lines": three_lines,
    "pencil": pencil,
    "tree": tree,
    "multicomplex-1221": multicomplex_1221,
    "pencil-extended": pencil_extended,
}


def get(name):
    try:
        builder = FIXTURES[name]
    except KeyError:
        raise ValueError(f"unknown fixture {name!r}, choose from {sorted(FIXTURES)}")
    return builder()


def emit(name):
    """JSON document of a fixture."""
    return get(name).save(silent=True)


class Check(NamedTuple):
    name: str
    passed: bool
    detail: str


SQUARE_LPRIME_RANK_3 = {
    "(1,1,1)",
    "(1,14)",
    "(4,14)",
    "(1,12)",
    "(2,12)",
    "(2,2,2)",
    "(1234)",
    "(2,23)",
    "(3,23)",
    "(3,3,3)",
    "(3,34)",
    "(4,34)",
    "(4,4,4)",
}


def _faces(*labels):
    return exterior.SimplicialFamily.from_faces(
        [int(v) for v in label] for label in labels
    )


def _shadow_rows(P, kind, ks):
    rows = properties.verify_shadow_theorem(P, kind).rows
    return tuple(astuple(row) for row in rows if row.k in ks)


# (name, computation taking the seed, expected value)
EXPECTATIONS = [
    ("square f-vector", lambda s: square().f_vector(), (1, 4, 4, 1)),
    ("square diamond", lambda s: bool(properties.check_diamond(square())), True),
    (
        "square minimal atom set",
        lambda s: properties.check_min_atom_rank(square()).witness,
        ("1234", ("1", "3")),
    ),
    ("square-lprime f-vector", lambda s: square_lprime().f_vector(), (1, 4, 8, 13)),
    (
        "square-lprime rank 3",
        lambda s: set(square_lprime().elements_of_rank(3)),
        SQUARE_LPRIME_RANK_3,
    ),
    (
        "square-lprime parallelogram",
        lambda s: bool(properties.check_parallelogram(square_lprime())),
        True,
    ),
    (
        "square-lprime Macaulay shadows",
        lambda s: _shadow_rows(square_lprime(), "macaulay", (1, 2)),
        ((1, 8, 4, 4, 0), (2, 13, 8, 8, 0)),
    ),
    ("BV sides (5,3), k=2", lambda s: bounds.bv_sides((5, 3), 2), (6, 6)),
    (
        "Macaulay violation (1,2,4)",
        lambda s: bounds.check_macaulay((1, 2, 4)).message,
        "violation at k=1: ∂¹(4)=3 > 2",
    ),
    ("kk (1,4,8,13)", lambda s: bool(bounds.check_kk((1, 4, 8, 13))), False),
    (
        "Macaulay (1,4,8,13)",
        lambda s: bool(bounds.check_macaulay((1, 4, 8, 13))),
        True,
    ),
    (
        "c4 exterior shift",
        lambda s: exterior.shift_exterior(c4(), s),
        _faces("", "1", "2", "3", "4", "12", "13", "14", "23"),
    ),
    (
        "c4 Björner complex",
        lambda s: exterior.bjorner_delta(c4()),
        _faces("", "1", "2", "3", "4", "12", "23", "34", "14"),
    ),
    (
        "triangle-complex exterior shift",
        lambda s: exterior.shift_exterior(triangle_complex(), s),
        _faces("", "1", "2", "3", "12", "13", "23", "123"),
    ),
    (
        "pencil exterior shift",
        lambda s: exterior.shift_exterior(pencil(), s),
        _faces("", "1", "2", "3", "12"),
    ),
    (
        "3lines Björner complex",
        lambda s: exterior.bjorner_delta(three_lines()),
        _faces("", "1", "2", "3", "12", "13", "23"),
    ),
    (
        "3lines join of l1, l2",
        lambda s: exterior.project_subset(three_lines(), ["l1", "l2"]),
        "p12",
    ),
    (
        "pencil join of all lines",
        lambda s: exterior.project_subset(pencil(), ["l1", "l2", "l3"]),
        ZERO,
    ),
    (
        "3lines graded dimensions",
        lambda s: exterior.graded_dimensions(three_lines()),
        (1, 3, 3),
    ),
    (
        "barycentric subdivision of the 2-simplex",
        lambda s: lprime.build_lprime(
            triangle_complex(), lprime.FamilySpec.chains()
        ).f_vector(),
        (1, 7, 12, 6),
    ),
    ("tree f-vector", lambda s: tree().f_vector(), (1, 4, 2, 1)),
    (
        "pencil seed x1*x2*x3",
        lambda s: symmetric.project_monomial(
            symmetric.seed_from_geometric(pencil()), (1, 1, 1)
        ),
        ZERO,
    ),
    (
        "pencil-extended parallelogram",
        lambda s: bool(properties.check_parallelogram(pencil_extended().carrier)),
        True,
    ),
    (
        "multicomplex-1221 symmetric shift f-vector",
        lambda s: sorted(
            m.degree
            for m in symmetric.shift_symmetric(multicomplex_1221(), s, s + 1)
        ),
        [0, 1, 1, 2, 2, 3],
    ),
]


def verify(seed=1):
    """
    Recompute the documented facts about the fixtures. Returns one `Check`
    per fact; a computation that raises counts as failed.
    """
    checks = []
    for name, compute, expected in EXPECTATIONS:
        try:
            value = compute(seed)
        except (ValueError, RuntimeError) as err:
            checks.append(Check(name, False, f"{type(err).__name__}: {err}"))
            logger.info("%s: error %s", name, err)
            continue
        passed = value == expected
        checks.append(Check(name, passed, str(value)))
        logger.info("%s: %s", name, "PASS" if passed else "FAIL")
    return checks
