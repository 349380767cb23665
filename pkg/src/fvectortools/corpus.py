"""
Random corpora of ranked meet semi-lattices, and the fuzzer that runs the
implications between the structural properties and the shadow bounds on
them.

Every failed implication is an implementation bug, so a fuzz run with any
violation fails.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

import galois
import numpy as np

from fvectortools import bounds, lprime, properties
from fvectortools.monomial import Monomial, order_ideal
from fvectortools.poset import PosetError, RankedPoset, face_id, face_poset


logger = logging.getLogger(__name__)

DEFAULT_SEED = 1
MAX_ATTEMPTS = 100


def random_ranked_poset(rng, max_elements=12, max_rank=4, max_width=4):
    """
    A random ranked meet semi-lattice with at most `max_elements` elements,
    built rank by rank: every new element covers a random nonempty set of
    elements one rank below. Candidates without meets are discarded.

    Returns None if no candidate survives `MAX_ATTEMPTS` draws.
    """
    if max_elements < 1:
        raise ValueError(f"need at least one element, got {max_elements=}")
    for attempt in range(MAX_ATTEMPTS):
        ranks = {"0": 0}
        covers = []
        layer = ["0"]
        count = 1
        height = int(rng.integers(0, max_rank + 1))
        for r in range(1, height + 1):
            room = max_elements - count
            if room <= 0:
                break
            width = int(rng.integers(1, min(max_width, room) + 1))
            new_layer = []
            for _ in range(width):
                x = f"v{count}"
                count += 1
                size = int(rng.integers(1, min(3, len(layer)) + 1))
                below = rng.choice(len(layer), size=size, replace=False)
                ranks[x] = r
                covers.extend((layer[int(i)], x) for i in sorted(below))
                new_layer.append(x)
            layer = new_layer
        try:
            return RankedPoset(ranks, covers)
        except PosetError as err:
            logger.debug("rejected candidate %d: %s", attempt, err)
    return None


def _gf2_rank(vectors):
    # rank over GF(2) of int bitsets
    vectors = list(vectors)
    width = max((v.bit_length() for v in vectors), default=0)
    if width == 0:
        return 0
    rows = [[v >> i & 1 for i in range(width)] for v in vectors]
    return int(np.linalg.matrix_rank(galois.GF2(rows)))


def flats_poset(vectors, max_rank=None):
    """
    The lattice of flats of distinct nonzero vectors over GF(2), given as int
    bitsets, truncated above `max_rank`. Flats are named by the 1-based
    positions of their vectors.
    """
    vectors = list(vectors)
    if len(set(vectors)) != len(vectors) or 0 in vectors:
        raise ValueError("vectors must be distinct and nonzero")
    n = len(vectors)
    flats = {}
    for size in range(n + 1):
        for subset in itertools.combinations(range(n), size):
            r = _gf2_rank([vectors[i] for i in subset])
            if max_rank is not None and r > max_rank:
                continue
            closed = frozenset(
                i
                for i in range(n)
                if _gf2_rank([vectors[j] for j in subset] + [vectors[i]]) == r
            )
            flats[closed] = r
    ranks = {face_id({i + 1 for i in F}): r for F, r in flats.items()}
    covers = [
        (face_id({i + 1 for i in F}), face_id({i + 1 for i in G}))
        for F, G in itertools.permutations(flats, 2)
        if F < G and flats[G] == flats[F] + 1
    ]
    return RankedPoset(ranks, covers)


def random_geometric(rng, max_atoms=6, max_rank=3):
    """
    A random geometric semi-lattice: either a rank-truncated lattice of flats
    of distinct nonzero vectors over GF(2), or the face poset of a random
    simplicial complex.
    """
    n = int(rng.integers(1, max_atoms + 1))
    if rng.random() < 0.5:
        dimension = max(1, int(n).bit_length())
        pool = rng.permutation(np.arange(1, 2**dimension))[:n]
        return flats_poset([int(v) for v in pool], max_rank)
    facets = []
    for _ in range(int(rng.integers(1, n + 1))):
        size = int(rng.integers(1, min(n, max_rank) + 1))
        chosen = rng.choice(n, size=size, replace=False)
        facets.append(tuple(int(v) + 1 for v in chosen))
    return face_poset(facets)


def random_multicomplex(rng, nvars=3, max_degree=4, max_generators=4):
    """
    A random order ideal of monomials of degree at most `max_degree` in which
    every variable occurs: the divisors of the variables and of up to
    `max_generators` random monomials.
    """
    if nvars < 1 or max_degree < 1:
        raise ValueError(f"need {nvars=} >= 1 and {max_degree=} >= 1")
    generators = [Monomial.variable(i, nvars) for i in range(1, nvars + 1)]
    for _ in range(int(rng.integers(1, max_generators + 1))):
        degree = int(rng.integers(0, max_degree + 1))
        cuts = np.sort(rng.integers(0, degree + 1, size=nvars - 1))
        exponents = np.diff(np.concatenate(([0], cuts, [degree])))
        generators.append(Monomial(tuple(int(e) for e in exponents)))
    return order_ideal(generators)


@dataclass
class FuzzSummary:
    """Counts and violations of a fuzz run."""

    seed: int
    count: int
    generated: int = 0
    skipped: int = 0
    passes: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.passed

    def __str__(self):
        lines = [
            f"seed {self.seed}: {self.generated} posets generated, "
            f"{self.skipped} skipped, {len(self.violations)} violations"
        ]
        for name in sorted(self.passes):
            lines.append(f"  {name:<24} {self.passes[name]:>6} PASS")
        for name in sorted(self.notes):
            lines.append(f"  {name:<24} {self.notes[name]:>6}")
        for v in self.violations:
            lines.append(f"  VIOLATION #{v['instance']} {v['check']}: {v['message']}")
        return "\n".join(lines)

    @property
    def passed(self):
        return not self.violations

    def tally(self, name, verdict):
        if verdict:
            self.passes[name] = self.passes.get(name, 0) + 1

    def note(self, name, amount=1):
        self.notes[name] = self.notes.get(name, 0) + amount

    def violation(self, instance, check, message, poset, witness=None):
        logger.warning("violation #%d %s: %s", instance, check, message)
        self.violations.append(
            {
                "instance": instance,
                "check": check,
                "message": message,
                "poset": poset,
                "witness": witness,
            }
        )

    def as_dict(self):
        return {
            "seed": self.seed,
            "count": self.count,
            "generated": self.generated,
            "skipped": self.skipped,
            "passes": dict(self.passes),
            "notes": dict(self.notes),
            "violations": list(self.violations),
            "verdict": "PASS" if self.passed else "FAIL",
        }


LPRIME_SPECS = {
    "identity": lprime.FamilySpec.identity,
    "chains": lprime.FamilySpec.chains,
    "rank-bounded": lprime.FamilySpec.rank_bounded,
}


def _check_instance(i, P, summary, lprime_specs):
    diamond = properties.check_diamond(P)
    star = properties.check_condition_star(P)
    parallelogram = properties.check_parallelogram(P)
    for name, verdict in [
        ("diamond", diamond),
        ("condition-star", star),
        ("parallelogram", parallelogram),
    ]:
        summary.tally(name, verdict)
    if bool(diamond) != bool(star):
        summary.violation(i, "diamond-star", f"{diamond} vs {star}", P)
    if star and not parallelogram:
        summary.violation(i, "star-parallelogram", parallelogram.message, P)

    f = P.f_vector()
    if diamond:
        report = properties.verify_shadow_theorem(P, "kk")
        summary.tally("kk-shadows", report)
        if not report or not bounds.check_kk(f):
            summary.violation(i, "kk", str(report), P)
    if parallelogram:
        report = properties.verify_shadow_theorem(P, "macaulay")
        summary.tally("macaulay-shadows", report)
        if not report or not bounds.check_macaulay(f):
            summary.violation(i, "macaulay", str(report), P)

    atomic = properties.check_atomic(P)
    if atomic:
        geometric = properties.check_geometric(P)
        summary.tally("geometric", geometric)
        if bool(geometric) != bool(properties.check_min_atom_rank(P)):
            summary.violation(i, "geometric-min-atom-rank", geometric.message, P)

    if not diamond:
        return
    for name, spec in lprime_specs.items():
        try:
            family = spec()
            Lp = lprime.build_lprime(P, family)
        except PosetError as err:
            summary.violation(i, f"lprime-{name}", str(err), P, err.witnesses)
            continue
        verdict = properties.check_parallelogram(Lp)
        summary.tally(f"lprime-{name}", verdict)
        if not verdict:
            summary.violation(
                i, f"lprime-{name}", verdict.message, P, verdict.witness
            )
        if name == "identity" and Lp.relabel(
            {x: x[1:-1] or P.bottom for x in Lp.elements}
        ) != P:
            summary.violation(i, "lprime-identity", "not isomorphic to L", P)
        if family.variant is lprime.Variant.CHAINS:
            continue
        steps = lprime.check_cover_types(Lp, P)
        summary.tally(f"lprime-{name}-covers", steps)
        if not steps:
            summary.violation(
                i, f"lprime-{name}-covers", steps.message, P, steps.witness
            )
        if family.variant is lprime.Variant.RANK_BOUNDED:
            for kind, found in lprime.chain_interval_types(Lp, P).items():
                summary.note(f"{kind} chain intervals", len(found))


def fuzz_corpus(
    seed=DEFAULT_SEED,
    count=100,
    max_elements=12,
    max_rank=4,
    max_width=4,
    *,
    with_lprime=True,
    lprime_specs=None,
):
    """
    Generate `count` random ranked meet semi-lattices and check on each:

    - diamond property iff condition (*), and (*) implies the parallelogram
      property;
    - the Kruskal-Katona (diamond) and Macaulay (parallelogram) shadow bounds
      and f-vector inequalities;
    - geometric iff minimal atom sets have the rank of their join, for
      atomic members;
    - for diamond members, the parallelogram property of L′ for the identity,
      chain and rank-bounded families, L′ ≅ L for the identity family, and
      the cover steps of the ≤′ families. Chain intervals of the
      rank-bounded L′ are counted by type, not checked.

    `lprime_specs` maps names to `FamilySpec` factories and defaults to
    `LPRIME_SPECS`. A family that fails to build counts as a violation.
    """
    if lprime_specs is None:
        lprime_specs = LPRIME_SPECS
    if not with_lprime:
        lprime_specs = {}
    rng = np.random.default_rng(seed)
    summary = FuzzSummary(seed, count)
    for i in range(count):
        P = random_ranked_poset(rng, max_elements, max_rank, max_width)
        if P is None:
            summary.skipped += 1
            continue
        summary.generated += 1
        _check_instance(i, P, summary, lprime_specs)
        logger.info("instance %d: %d elements, f=%s", i, len(P), P.f_vector())
    return summary
