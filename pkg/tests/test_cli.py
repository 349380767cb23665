import json
import logging

import pytest

from fvectortools import cli, fixtures, io


def run(capsys, args):
    code = cli.main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("option", ("-h", "--help"))
def test_help(capsys, option):
    try:
        cli.main([option])
    except SystemExit:
        pass
    out, err = capsys.readouterr()
    assert "usage: python -m fvectortools" in out
    assert "show this help message and exit" in out
    assert err == ""


def test_missing_command(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main([])
    assert info.value.code == 2
    out, err = capsys.readouterr()
    assert "usage:" in err


def test_bounds_macaulay(capsys):
    code, out, err = run(capsys, ["bounds", "macaulay", "--fvector", "1,4,8,13"])
    assert code == cli.EXIT_OK
    assert out.strip().endswith("PASS")
    assert "   2     13      8      8" in out
    assert err == ""


def test_bounds_violation(capsys):
    code, out, err = run(capsys, ["bounds", "macaulay", "--fvector", "1,2,4"])
    assert code == cli.EXIT_VIOLATION
    assert "FAIL: violation at k=1: ∂¹(4)=3 > 2" in out
    code, out, err = run(capsys, ["bounds", "kk", "--fvector", "1,4,8,13"])
    assert code == cli.EXIT_VIOLATION


def test_bounds_json(capsys):
    code, out, err = run(capsys, ["bounds", "kk", "--fvector", "1,4,4", "--json"])
    assert code == cli.EXIT_OK
    report = json.loads(out)
    assert report["verdict"] == "PASS"
    assert report["f_vector"] == [1, 4, 4]
    assert report["kind"] == "kk"


def test_bounds_bad_input(capsys):
    code, out, err = run(capsys, ["bounds", "kk", "--fvector", "1,x"])
    assert code == cli.EXIT_INPUT
    assert out == ""
    assert err.startswith("error:")


def test_bounds_expand(capsys):
    code, out, err = run(capsys, ["bounds", "expand", 13, 3])
    assert code == cli.EXIT_OK
    assert out.splitlines() == [
        "13 = C(5,3) + C(3,2)",
        "kk shadow bound: 13",
        "macaulay shadow bound: 8",
    ]


def test_bounds_min_shadow(capsys):
    args = ["bounds", "min-shadow", 5, 2, "--mode", "monomials", "--universe", 5]
    code, out, err = run(capsys, args + ["--json"])
    assert json.loads(out)["min_shadow"] == 3


def test_check_pass(capsys, square_path):
    code, out, err = run(capsys, ["check", "diamond", square_path])
    assert code == cli.EXIT_OK
    assert out.strip() == "diamond: PASS"
    assert err == ""


def test_check_fail(capsys, square_path):
    code, out, err = run(capsys, ["check", "geometric", square_path])
    assert code == cli.EXIT_VIOLATION
    assert "witness: ('1', '3')" in out
    code, out, err = run(capsys, ["check", "min-atom-rank", square_path, "--json"])
    assert json.loads(out)["witness"] == ["1234", ["1", "3"]]


def test_check_shadows(capsys, fixture_path):
    path = fixture_path("square-lprime")
    code, out, err = run(capsys, ["check", "shadow-macaulay", path])
    assert code == cli.EXIT_OK
    assert "shadow-macaulay: PASS" in out
    code, out, err = run(capsys, ["check", "shadow-kk", path])
    assert code == cli.EXIT_INPUT
    assert "hypothesis" in err


def test_check_families(capsys, tmp_path, monomials_path):
    path = tmp_path / "faces.json"
    path.write_text(json.dumps({"faces": [[1, 2], [1, 3], [2, 4]]}))
    code, out, err = run(capsys, ["check", "shifted", path])
    assert code == cli.EXIT_VIOLATION
    assert "witness: ((2, 4), (1, 4))" in out
    code, out, err = run(capsys, ["check", "order-ideal", monomials_path])
    assert code == cli.EXIT_OK


def test_check_missing_file(capsys, tmp_path):
    code, out, err = run(capsys, ["check", "diamond", tmp_path / "nothing.json"])
    assert code == cli.EXIT_INPUT
    assert err.startswith("error:")


def test_check_invalid_poset(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"elements": [{"id": "a", "rank": 1}], "covers": []}')
    code, out, err = run(capsys, ["check", "diamond", path])
    assert code == cli.EXIT_INPUT
    assert "rank 0" in err


def test_lprime_build(capsys, square_path, fixture_path):
    code, out, err = run(capsys, ["lprime", "build", square_path])
    assert code == cli.EXIT_OK
    assert "f-vector: (1,4,8,13)" in out
    path = fixture_path("triangle-complex")
    code, out, err = run(capsys, ["lprime", "build", path, "--family", "chains"])
    assert "f-vector: (1,7,12,6)" in out
    code, out, err = run(capsys, ["lprime", "build", path, "--family", "bogus"])
    assert code == cli.EXIT_INPUT


def test_lprime_explicit(capsys, tmp_path, square_path):
    generators = tmp_path / "generators.json"
    generators.write_text(json.dumps({"14": ["(1,14)"]}))
    args = ["lprime", "build", square_path, "--family", f"explicit:{generators}"]
    code, out, err = run(capsys, args)
    assert code == cli.EXIT_OK
    assert "f-vector: (1,2,2,1)" in out


def test_lprime_tree(capsys, tree_path):
    code, out, err = run(capsys, ["lprime", "tree", tree_path])
    assert "f-vector: (1,4,2,1)" in out


def test_lprime_encode(capsys, monomials_path):
    code, out, err = run(capsys, ["lprime", "encode-multicomplex", monomials_path])
    assert code == cli.EXIT_OK
    assert "x1^3 -> (1,1,1)" in out
    code, out, err = run(
        capsys, ["lprime", "encode-multicomplex", monomials_path, "--json"]
    )
    assert json.loads(out)["bijection"]["x1*x2"] == "(12)"


def test_shift_exterior(capsys, fixture_path):
    path = fixture_path("c4")
    code, out, err = run(capsys, ["shift", "exterior", path, "--seed2", 2])
    assert code == cli.EXIT_OK
    assert "2: 12 13 14 23" in out
    assert "f-vector: (1,4,4)" in out
    code, out, err = run(capsys, ["shift", "exterior", path, "--json"])
    report = json.loads(out)
    assert report["f_vector"] == [1, 4, 4]
    assert [1, 4] in report["faces"]


def test_shift_exterior_not_geometric(capsys, square_path):
    code, out, err = run(capsys, ["shift", "exterior", square_path])
    assert code == cli.EXIT_INPUT
    assert "not geometric" in err


def test_shift_bjorner(capsys, fixture_path):
    path = fixture_path("pencil")
    code, out, err = run(capsys, ["shift", "bjorner", path, "--order", "l3,l1,l2"])
    assert "2: 13" in out
    code, out, err = run(capsys, ["shift", "bjorner", path, "--json"])
    assert json.loads(out)["ordering"] == ["l1", "l2", "l3"]


def test_shift_symmetric(capsys, fixture_path):
    path = fixture_path("multicomplex-1221")
    code, out, err = run(capsys, ["shift", "symmetric", path, "--seed2", 3])
    assert code == cli.EXIT_OK
    assert "f-vector: (1,2,2,1)" in out
    code, out, err = run(capsys, ["shift", "symmetric", path, "--json"])
    assert len(json.loads(out)["monomials"]) == 6


def test_shift_truncations(capsys, fixture_path):
    path = fixture_path("pencil-extended")
    code, out, err = run(capsys, ["shift", "symmetric", path, "--truncations"])
    assert code == cli.EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "r=0: 1"
    assert lines[1] == "r=1: 1 y1 y2 y3"
    assert len(lines) == 3


def test_pposet_seed(capsys, fixture_path):
    code, out, err = run(capsys, ["pposet", "seed", fixture_path("3lines")])
    assert "x1*x2: rank 2" in out
    assert "f-vector: (1,3,3)" in out


def test_pposet_extend(capsys, fixture_path):
    path = fixture_path("multicomplex-1221")
    code, out, err = run(capsys, ["pposet", "extend", path, "0,1", 2])
    assert code == cli.EXIT_OK
    assert "x2^2: rank 2" in out
    code, out, err = run(capsys, ["pposet", "extend", path, "1,0", 1])
    assert code == cli.EXIT_INPUT
    assert "already in the poset" in err


def test_pposet_from_multicomplex(capsys, monomials_path, tmp_path):
    file = tmp_path / "pposet.json"
    args = ["pposet", "from-multicomplex", monomials_path, "-o", file]
    code, out, err = run(capsys, args)
    assert out == ""
    with open(file, "r") as handle:
        P = json.load(handle, cls=io.JSONDecoder)
    assert P == fixtures.multicomplex_1221()


def test_corpus_fuzz(capsys):
    args = ["corpus", "fuzz", "--count", 5, "--max-elements", 8, "--no-lprime"]
    code, out, err = run(capsys, args)
    assert code == cli.EXIT_OK
    assert out.startswith("seed 1: ")
    assert "0 violations" in out


def test_corpus_geometric(capsys):
    code, out, err = run(capsys, ["corpus", "geometric", "--seed", 4, "--json"])
    assert code == cli.EXIT_OK
    assert set(json.loads(out)) == {"elements", "covers"}


def test_fixtures_list(capsys):
    code, out, err = run(capsys, ["fixtures", "list"])
    assert out.split() == sorted(fixtures.FIXTURES)


def test_fixtures_emit(capsys):
    code, out, err = run(capsys, ["fixtures", "emit", "square"])
    assert json.loads(out, cls=io.JSONDecoder) == fixtures.square()


def test_fixtures_verify(capsys):
    code, out, err = run(capsys, ["fixtures", "verify"])
    assert code == cli.EXIT_OK
    assert "FAIL" not in out
    assert len(out.splitlines()) == len(fixtures.EXPECTATIONS)


@pytest.mark.parametrize("option", ("-o", "--output"))
def test_output(capsys, option, square_path, tmp_path):
    file = tmp_path / "out.json"
    code, out, err = run(capsys, ["check", "atomic", square_path, option, file])
    assert out == ""
    assert err == ""
    with open(file, "r") as handle:
        written = json.load(handle)
    assert written["verdict"] == "PASS"
    assert written["property"] == "atomic"


def test_output_plain(capsys, square_path, tmp_path):
    file = tmp_path / "out.txt"
    args = ["check", "atomic", square_path, "--no-json", "-o", file]
    code, out, err = run(capsys, args)
    assert out == ""
    with open(file, "r") as handle:
        assert handle.read() == "atomic: PASS"


def test_verbose(caplog, capsys):
    code, out, err = run(capsys, ["bounds", "min-shadow", 3, 2, "-vv"])
    assert code == cli.EXIT_OK
    assert "min shadow n=3 k=2" in caplog.text
    logging.getLogger("fvectortools").setLevel(logging.NOTSET)
