import numpy as np
import pytest

from fvectortools import corpus, fixtures, lprime, properties
from fvectortools.lprime import FamilySpec
from fvectortools.poset import PosetError


@pytest.mark.parametrize("seed", range(5))
def test_random_ranked_poset(seed):
    rng = np.random.default_rng(seed)
    P = corpus.random_ranked_poset(rng, max_elements=10, max_rank=3)
    if P is not None:
        assert len(P) <= 10
        assert P.max_rank <= 3


def test_random_chains():
    rng = np.random.default_rng(2)
    for _ in range(5):
        P = corpus.random_ranked_poset(rng, max_width=1)
        assert set(P.f_vector()) == {1}


def test_random_ranked_poset_invalid():
    with pytest.raises(ValueError):
        corpus.random_ranked_poset(np.random.default_rng(), max_elements=0)


def test_flats_poset():
    # the three points of the line over GF(2) form a pencil
    P = corpus.flats_poset([1, 2, 3])
    assert P.f_vector() == (1, 3, 1)
    assert P.atoms == ("1", "2", "3")
    assert corpus.flats_poset([1, 2, 4]).f_vector() == (1, 3, 3, 1)
    assert corpus.flats_poset([1, 2, 4, 3], max_rank=2).f_vector() == (1, 4, 4)
    with pytest.raises(ValueError):
        corpus.flats_poset([1, 1])


@pytest.mark.parametrize("seed", range(8))
def test_random_geometric(seed):
    L = corpus.random_geometric(np.random.default_rng(seed))
    assert properties.check_geometric(L)
    assert properties.check_min_atom_rank(L)


def test_fuzz_corpus():
    summary = corpus.fuzz_corpus(seed=1, count=25, max_elements=9, max_rank=3)
    assert summary.passed, str(summary)
    assert summary.generated + summary.skipped == 25
    assert summary.passes.get("diamond", 0) <= summary.generated
    assert summary.as_dict()["verdict"] == "PASS"


def test_fuzz_chains():
    summary = corpus.fuzz_corpus(seed=3, count=10, max_width=1, with_lprime=False)
    assert summary
    # chains of rank at least 2 fail the diamond property
    assert summary.passes.get("parallelogram", 0) == summary.generated


def test_fuzz_summary():
    summary = corpus.FuzzSummary(seed=1, count=1)
    summary.tally("diamond", properties.PASS)
    summary.tally("diamond", properties.check_diamond(fixtures.triangle()))
    assert summary.passes == {"diamond": 2}
    summary.note("other chain intervals", 3)
    summary.note("other chain intervals")
    assert summary.notes == {"other chain intervals": 4}
    assert summary
    summary.violation(0, "diamond-star", "made up", fixtures.square())
    assert not summary
    assert "VIOLATION #0 diamond-star: made up" in str(summary)


def broken_family():
    raise PosetError("no family for this poset", ("0",))


def test_fuzz_lprime_failure():
    specs = {"broken": broken_family, "identity": FamilySpec.identity}
    summary = corpus.fuzz_corpus(
        seed=1, count=25, max_elements=9, max_rank=3, lprime_specs=specs
    )
    assert summary.generated + summary.skipped == 25
    diamonds = summary.passes["diamond"]
    assert diamonds > 0
    assert len(summary.violations) == diamonds
    assert {v["check"] for v in summary.violations} == {"lprime-broken"}
    assert all(v["witness"] == ("0",) for v in summary.violations)
    # the families after a failing one are still built
    assert summary.passes["lprime-identity"] == diamonds


def test_fuzz_notes():
    summary = corpus.fuzz_corpus(seed=1, count=25, max_elements=9, max_rank=3)
    notes = summary.as_dict()["notes"]
    assert set(notes) <= {"atom-grown chain intervals", "other chain intervals"}
    assert summary.passes["lprime-rank-bounded-covers"] == summary.passes["diamond"]


@pytest.mark.slow
def test_fuzz_corpus_long():
    assert corpus.fuzz_corpus(seed=11, count=300)


@pytest.mark.slow
def test_fuzz_diamond_star_long():
    summary = corpus.fuzz_corpus(seed=5, count=1000, with_lprime=False)
    assert summary.passed, str(summary)
    assert summary.generated + summary.skipped == 1000


@pytest.mark.slow
def test_rank_bounded_lprime_parallelogram():
    rng = np.random.default_rng(7)
    found = 0
    for _ in range(20_000):
        P = corpus.random_ranked_poset(rng, max_elements=8, max_rank=3)
        if P is None or not properties.check_diamond(P):
            continue
        Lp = lprime.build_lprime(P, FamilySpec.rank_bounded())
        assert properties.check_parallelogram(Lp), P.save(silent=True)
        found += 1
        if found == 200:
            break
    assert found == 200


@pytest.mark.parametrize("seed", range(6))
def test_random_multicomplex(seed):
    M = corpus.random_multicomplex(np.random.default_rng(seed))
    assert properties.check_order_ideal(M)
    assert max(m.degree for m in M) <= 4
    assert all(any(m[i] for m in M) for i in range(3))


def test_fixture_facts():
    checks = fixtures.verify(seed=1)
    failed = [f"{c.name}: {c.detail}" for c in checks if not c.passed]
    assert not failed
    assert len(checks) == len(fixtures.EXPECTATIONS)


def test_fixture_names():
    assert sorted(fixtures.FIXTURES) == [
        "3lines",
        "c4",
        "multicomplex-1221",
        "pencil",
        "pencil-extended",
        "square",
        "square-lprime",
        "tree",
        "triangle",
        "triangle-complex",
    ]
    with pytest.raises(ValueError, match="unknown fixture"):
        fixtures.get("octahedron")
