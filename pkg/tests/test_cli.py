"""Tests for the ``pezzo`` command line."""

import json

import pytest

from pezzo.cli import EXIT_INVALID, EXIT_OK, EXIT_UNKNOWN, main


@pytest.fixture
def broken_catalog(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    return path


def test_lct(capsys):
    assert main(["lct", "--surface", "d7-A1"]) == EXIT_OK
    assert capsys.readouterr().out == "1/4\n"


def test_lct_json(capsys):
    assert main(["lct", "--surface", "d7-A1", "--format", "json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["value"] == "1/4"
    assert data["witness"]["source"] == "e2"


def test_lct_smooth_catalog_entry(tmp_path, capsys):
    path = tmp_path / "catalog.json"
    curves = [
        {"name": "E1", "class": [0, -1, 0], "self_int": -1},
        {"name": "E2", "class": [0, 0, -1], "self_int": -1},
        {"name": "L", "class": [1, 1, 1], "self_int": -1},
    ]
    path.write_text(json.dumps({"version": 1, "surfaces": [{"id": "s", "degree": 7, "singularity": "", "curves": curves}]}))
    assert main(["--catalog", str(path), "lct", "--surface", "s"]) == EXIT_INVALID
    assert "smooth surface" in capsys.readouterr().err


def test_table_csv(capsys):
    assert main(["table", "--degree", "6", "--format", "csv"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "degree,sigma,expected,computed,witness,match"
    assert len(lines) == 5
    assert lines[-1].startswith("6,A1+A2,1/6,1/6,")
    assert all(line.endswith(",true") for line in lines[1:])


def test_catalog_listing(capsys):
    assert main(["catalog", "--degree", "7", "--format", "csv"]) == EXIT_OK
    assert capsys.readouterr().out == "id,degree,sigma\nd7-A1,7,A1\n"


def test_show(capsys):
    assert main(["show", "--surface", "d7-A1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("d7-A1: degree 7, A1, 2 (-1)-curves")
    assert "e1-e2" in out


def test_enumerate_dot(capsys):
    assert main(["enumerate", "--surface", "d7-A1", "--format", "dot"]) == EXIT_OK
    assert capsys.readouterr().out.startswith('graph "d7-A1-1" {')


def test_unknown_surface(capsys):
    assert main(["lct", "--surface", "nope"]) == EXIT_UNKNOWN
    assert "unknown surface id 'nope'" in capsys.readouterr().err


def test_bad_catalog(broken_catalog, capsys):
    assert main(["--catalog", str(broken_catalog), "catalog"]) == EXIT_INVALID
    assert capsys.readouterr().err.startswith("invalid: cannot read catalog")


def test_catalog_from_env(broken_catalog, monkeypatch):
    monkeypatch.setenv("PEZZO_CATALOG", str(broken_catalog))
    assert main(["catalog"]) == EXIT_INVALID


def test_export_empty_degree(capsys):
    assert main(["export", "--degree", "8"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out) == {"surfaces": []}


def test_export_to_file(tmp_path):
    out = tmp_path / "d6.json"
    assert main(["export", "--degree", "6", "--out", str(out)]) == EXIT_OK
    doc = json.loads(out.read_text())
    assert [s["id"] for s in doc["surfaces"]] == ["d6-A1", "d6-2A1", "d6-A2", "d6-A1A2"]


def test_export_unknown_surface():
    assert main(["export", "--surface", "nope"]) == EXIT_UNKNOWN


def test_output_deterministic(capsys):
    main(["enumerate", "--surface", "d5-A2", "--format", "json"])
    first = capsys.readouterr().out
    main(["enumerate", "--surface", "d5-A2", "--format", "json"])
    assert capsys.readouterr().out == first


def test_propagate_stratum_choices():
    with pytest.raises(SystemExit):
        main(["propagate", "--stratum", "5"])


def test_propagate_json(capsys):
    assert main(["propagate", "--stratum", "6", "--max-degree", "3", "--format", "json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert sorted(doc) == ["1", "2", "3"]
    assert len(doc["2"]) == 1
