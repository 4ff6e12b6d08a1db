import json

import pytest

from weylquant import fileio
from weylquant.errors import InputError, MalformedPointError
from weylquant.fixtures import BUILTIN, builtin_fixture
from weylquant.quantize import main_formula_character

DATA = fileio.Path(fileio.__file__).parent / "data"


@pytest.mark.parametrize("name", sorted(BUILTIN))
def test_packaged_data_matches_builtin(name):
    fx = builtin_fixture(name)
    doc = fileio.read_json(DATA / f"{name}.json")
    assert doc == fileio.fixture_to_dict(fx.pair, fx.points, fx.coadjoint_lambda)
    assert main_formula_character(fileio.fixture_from_dict(doc)).character == main_formula_character(fx.ingest()).character


def test_round_trip(tmp_path):
    fx = builtin_fixture("a2_product")
    path = tmp_path / "a.json"
    path.write_text(fileio.dumps(fileio.fixture_to_dict(fx.pair, fx.points)))
    fps = fileio.load_fixture(path)
    assert [p.key() for p in fps.points] == [p.key() for p in fx.ingest().points]


def test_coadjoint_lambda_survives(tmp_path):
    fx = builtin_fixture("su3")
    doc = fileio.fixture_to_dict(fx.pair, fx.points, fx.coadjoint_lambda)
    assert fileio.fixture_from_dict(doc).meta["coadjoint_lambda"] == (0, 6)


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.pop("points"),
        lambda d: d.update(format=99),
        lambda d: d["points"][0].update(mu="x"),
        lambda d: d["points"][0].update(tangent_weights=[]),
        lambda d: d["group"].pop("type"),
        lambda d: d["group"].update(k_simple_roots=[[1.5, 0]]),
    ],
)
def test_schema_errors(mutate):
    fx = builtin_fixture("su3")
    doc = fileio.fixture_to_dict(fx.pair, fx.points)
    mutate(doc)
    with pytest.raises(InputError):
        fileio.fixture_from_dict(doc)


def test_wrong_rank_point_is_malformed():
    fx = builtin_fixture("su3")
    doc = fileio.fixture_to_dict(fx.pair, fx.points)
    doc["points"][0]["mu"] = [0, 6, 0]
    with pytest.raises(MalformedPointError):
        fileio.fixture_from_dict(doc)


def test_unreadable_files(tmp_path):
    with pytest.raises(InputError):
        fileio.read_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InputError):
        fileio.read_json(bad)


def test_dumps_keeps_weights_on_one_line():
    text = fileio.dumps({"a": [[2, 2], [4, -2]], "b": [[[0, 6], 1]], "c": [{"x": 1}]})
    assert '"a": [[2, 2], [4, -2]]' in text
    # character terms go one per line, each kept whole
    assert '\n    [[0, 6], 1]\n' in text
    assert json.loads(text) == {"a": [[2, 2], [4, -2]], "b": [[[0, 6], 1]], "c": [{"x": 1}]}


def test_csv_rows():
    rows = [{"lambda": [0, 6], "multiplicity": 1}, {"lambda": [2, 2], "multiplicity": -1}]
    assert fileio.rows_to_csv(rows) == "lambda,multiplicity\n0 6,1\n2 2,-1\n"
    assert fileio.rows_to_csv([]) == ""
