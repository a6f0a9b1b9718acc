"""Tests for catalog loading and the built-in catalog."""

import json
from fractions import Fraction

import pytest

from pezzo._catalog import BUILTIN_CATALOG, CATALOG_ENV, Catalog, catalog_get, catalog_list, load_catalog
from pezzo._errors import UnknownSurfaceError, ValidationError
from pezzo._plane import PlaneSpec, validate_plane_spec
from pezzo._surface import SingularityType, is_admissible

_D7_CURVES = [
    {"name": "C", "class": [0, -1, 1], "self_int": -2},
    {"name": "E", "class": [0, 0, -1], "self_int": -1},
    {"name": "F", "class": [1, 1, 1], "self_int": -1},
]


def _write(tmp_path, surfaces, name="catalog.json"):
    path = tmp_path / name
    path.write_text(json.dumps({"version": 1, "surfaces": surfaces}))
    return path


# ------------------------------------------------------------------
# Built-in catalog
# ------------------------------------------------------------------


def test_builtin_listing():
    entries = catalog_list()
    assert entries[0] == ("d7-A1", 7, SingularityType.parse("A1"))
    ids = [e[0] for e in entries]
    assert len(ids) == len(set(ids))
    assert {e[1] for e in entries} == {2, 3, 4, 5, 6, 7}


def test_builtin_entries_admissible():
    for _, degree, sigma in catalog_list():
        assert is_admissible(degree, sigma.unrefined()), (degree, sigma)


def test_builtin_plane_specs_valid():
    data = json.loads(BUILTIN_CATALOG.read_text())
    for raw in data["surfaces"]:
        if "points" in raw:
            assert validate_plane_spec(PlaneSpec.from_dict(raw)) == [], raw["id"]


def test_builtin_catalog_builds():
    """Every entry builds, validates and has its declared type."""
    assert load_catalog().validate() == {}


@pytest.mark.parametrize(
    "surface_id, label",
    [
        ("d2-A5-prime", "A5'"),
        ("d2-3A1-dblprime", "(3A1)''"),
        ("d2-4A1-dblprime", "(4A1)''"),
    ],
)
def test_degree2_marks(surface_id, label):
    assert catalog_get(surface_id).singularity == SingularityType.parse(label)


def test_recorded_value():
    catalog = load_catalog()
    assert catalog.entry("d2-4A1-dblprime").recorded_lct1 == Fraction(3, 4)
    assert catalog.entry("d2-4A1-dblprime").to_dict()["recorded_lct1"] == "3/4"
    assert catalog.entry("d7-A1").recorded_lct1 is None


def test_unknown_id():
    with pytest.raises(UnknownSurfaceError, match="unknown surface id 'nope'"):
        catalog_get("nope")
    with pytest.raises(KeyError):
        catalog_get("nope")


# ------------------------------------------------------------------
# Custom catalogs
# ------------------------------------------------------------------


def test_env_override(tmp_path, monkeypatch):
    path = _write(tmp_path, [{"id": "mine", "degree": 7, "singularity": "A1", "curves": _D7_CURVES}])
    monkeypatch.setenv(CATALOG_ENV, str(path))
    assert [e[0] for e in catalog_list()] == ["mine"]
    model = catalog_get("mine")
    assert [c.name for c in model.roots] == ["C"]


def test_explicit_path_wins(tmp_path, monkeypatch):
    monkeypatch.setenv(CATALOG_ENV, str(tmp_path / "missing.json"))
    assert catalog_list(BUILTIN_CATALOG)[0][0] == "d7-A1"


def test_declared_label_mismatch(tmp_path):
    path = _write(tmp_path, [{"id": "bad", "degree": 7, "singularity": "A2", "curves": _D7_CURVES}])
    with pytest.raises(ValidationError, match="singularity A1 != declared A2"):
        catalog_get("bad", path)


def test_incomplete_curve_list(tmp_path):
    path = _write(tmp_path, [{"id": "bad", "degree": 7, "singularity": "A1", "curves": _D7_CURVES[:2]}])
    catalog = Catalog.from_file(path)
    failures = catalog.validate()
    assert list(failures) == ["bad"]
    assert any(f.startswith("completeness") for f in failures["bad"])


def test_duplicate_id(tmp_path):
    entry = {"id": "x", "degree": 7, "singularity": "A1", "curves": _D7_CURVES}
    with pytest.raises(ValidationError, match="duplicate id x"):
        Catalog.from_file(_write(tmp_path, [entry, entry]))


def test_unreadable_catalog(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ValidationError, match="cannot read catalog"):
        load_catalog(path)
    with pytest.raises(ValidationError, match="cannot read catalog"):
        load_catalog(tmp_path / "missing.json")
