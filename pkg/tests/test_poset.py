import json

import pytest

import fvectortools
from fvectortools import io
from fvectortools.poset import (
    TOP,
    FVector,
    PosetError,
    RankedPoset,
    face_id,
    face_poset,
    load_poset,
    natural_key,
)


def test_load_square(square_path, square):
    """Test parsing a poset document from file"""
    P = RankedPoset.load(square_path)
    assert len(P) == 10
    assert P == square
    assert P.bottom == "0"
    assert P.atoms == ("1", "2", "3", "4")


def test_minimum_only():
    P = load_poset('{"elements": [{"id": "0", "rank": 0}], "covers": []}')
    assert P.f_vector() == (1,)
    assert P.max_rank == 0


def test_elements_natural_order():
    P = face_poset([(1, 10), (2, 10)])
    assert P.elements_of_rank(1) == ("1", "2", "10")
    assert natural_key("v10") > natural_key("v9")


def test_no_meet():
    # a and b have the two maximal common lower bounds c and d
    ranks = {"0": 0, "c": 1, "d": 1, "a": 2, "b": 2}
    covers = [("0", "c"), ("0", "d"), ("c", "a"), ("d", "a"), ("c", "b"), ("d", "b")]
    with pytest.raises(PosetError, match="no meet") as info:
        RankedPoset(ranks, covers)
    assert info.value.witnesses == ("a", "b")


@pytest.mark.parametrize(
    "document, message",
    [
        ("not json", "not a JSON document"),
        ('{"elements": []}', "not a poset"),
        ('{"elements": [{"id": "a", "rank": 1}], "covers": []}', "rank 0"),
        (
            '{"elements": [{"id": "0", "rank": 0}, {"id": "1", "rank": 0}],'
            ' "covers": []}',
            "duplicate bottom",
        ),
        (
            '{"elements": [{"id": "0", "rank": 0}, {"id": "a", "rank": 2}],'
            ' "covers": [["0", "a"]]}',
            "does not raise the rank",
        ),
        (
            '{"elements": [{"id": "0", "rank": 0}, {"id": "a", "rank": 1}],'
            ' "covers": []}',
            "covers nothing",
        ),
        (
            '{"elements": [{"id": "0", "rank": 0}], "covers": [["0", "z"]]}',
            "unknown element",
        ),
    ],
)
def test_invalid_documents(document, message):
    with pytest.raises(PosetError, match=message):
        load_poset(document)


def test_meet(three_lines):
    P = three_lines
    assert P.meet("p12", "p13") == "l1"
    assert P.meet("p12", "p13") == P.meet("p13", "p12")
    assert P.meet("l2", P.bottom) == P.bottom
    assert P.meet("p23", "p23") == "p23"


def test_join(three_lines):
    P = three_lines
    assert P.join(["l1", "l2"]) == "p12"
    assert P.join(["l1", "l2", "l3"]) is TOP
    assert P.join(["l3"]) == "l3"
    with pytest.raises(ValueError):
        P.join([])


def test_f_vector(square, square_lprime):
    assert square.f_vector() == (1, 4, 4, 1)
    assert square_lprime.f_vector() == FVector((1, 4, 8, 13))


def test_fvector_indexing():
    f = FVector((1, 4, 8, 13))
    assert f[-1] == 1
    assert f[2] == 13
    assert f[5] == 0
    assert str(f) == "(1,4,8,13)"
    assert FVector.from_string("1,4,8,13") == f
    with pytest.raises(ValueError):
        FVector((2, 1))
    with pytest.raises(ValueError):
        FVector.from_string("1,x")


def test_up_set(square, three_lines):
    assert square.up_set(square.bottom) == square
    Q = three_lines.up_set("l1")
    assert Q.rank == {"l1": 0, "p12": 1, "p13": 1}
    R = square.up_set("1")
    assert R.rank == {"1": 0, "12": 1, "14": 1, "1234": 2}


def test_shadow(square, square_lprime):
    assert square.shadow(2) == {"12", "14", "23", "34"}
    assert square.shadow(3) == frozenset()
    assert square_lprime.shadow(2) == set(square_lprime.elements_of_rank(2))
    assert len(square_lprime.shadow(2)) == 8


def test_interval(square, three_lines):
    assert square.interval("12", "12") == ({"12"}, True)
    interval = square.interval(square.bottom, "12")
    assert interval.elements == {"0", "1", "2", "12"}
    assert not interval.is_chain
    assert three_lines.interval("0", "l1").is_chain
    with pytest.raises(PosetError):
        square.interval("1", "3")


def test_truncated(square):
    assert square.truncated(1).f_vector() == (1, 4)


def test_relabel(three_lines):
    Q = three_lines.relabel({x: x.upper() for x in three_lines})
    assert Q.join(["L1", "L3"]) == "P13"
    with pytest.raises(ValueError):
        three_lines.relabel({x: "same" for x in three_lines})


def test_face_poset():
    P = face_poset([(1, 2, 3)])
    assert P.f_vector() == (1, 3, 3, 1)
    assert face_id({1, 2, 4}) == "124"
    assert face_id({2, 11}) == "2-11"
    assert face_id(set()) == "0"
    with pytest.raises(PosetError, match="share the ids"):
        face_poset([(1, 2), (12,)])


def test_save_load(tmp_path, square):
    file = tmp_path / "square.json"
    text = square.save(file, silent=True)
    assert RankedPoset.load(file) == square
    assert json.loads(text, cls=io.JSONDecoder) == square
    assert set(json.loads(text)) == {"elements", "covers"}


def test_save_prints(capsys, square):
    text = square.save()
    out, err = capsys.readouterr()
    assert out.strip() == text
    assert err == ""


def test_namespace():
    assert fvectortools.RankedPoset is RankedPoset
    assert isinstance(fvectortools.__version__, str)
