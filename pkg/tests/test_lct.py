"""Tests for thresholds of configs and the lct_1 of catalog surfaces."""

from fractions import Fraction
from unittest import mock

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pezzo._anticanon import DivisorConfig, ExtraComponent, enumerate_anticanonical, special_configs
from pezzo._catalog import catalog_get, catalog_list, load_catalog
from pezzo._expected import expected_lct1
from pezzo._lattice import DivisorClass
from pezzo._lct import Mode, config_lct, config_points, format_fraction, surface_configs, surface_lct1
from pezzo._plane import PlaneSpec, PointRecord
from pezzo._surface import build_from_plane_spec


_CATALOG_IDS = [s for s, _, _ in catalog_list()]


def _root_configs(surface_id):
    return [c for c in enumerate_anticanonical(catalog_get(surface_id)) if c.has_root]


@pytest.fixture
def d7():
    return catalog_get("d7-A1")


@pytest.fixture
def d7_config(d7):
    (config,) = enumerate_anticanonical(d7)
    return config


# ------------------------------------------------------------------
# Single configs
# ------------------------------------------------------------------


def test_degree7_config(d7_config):
    report = config_lct(d7_config)
    assert report.value == Fraction(1, 4)
    assert report.witness.kind == "component"
    assert report.witness.source == "e2"
    assert report.witness.detail == "a=4"
    points = [c for c in report.breakdown if c.kind == "point"]
    assert sorted(c.value for c in points) == [Fraction(2, 7), Fraction(1, 3)]


def test_triple_point_config(d7):
    (config,) = special_configs(d7)
    report = config_lct(config)
    assert report.value == Fraction(2, 3)
    assert report.witness.kind == "point"
    assert report.witness.detail == "m=3 ell=2"


def test_value_capped_at_one(d7):
    extra = ExtraComponent("X", DivisorClass(3, (1, 1)), 7, 1)
    report = config_lct(DivisorConfig(d7, {}, (extra,), label="smooth-cubic"))
    assert report.value == report.uncapped == 1
    assert report.to_dict()["value"] == "1"


def test_report_to_dict(d7_config):
    data = config_lct(d7_config).to_dict()
    assert data["surface"] == "d7-A1"
    assert data["value"] == "1/4"
    assert data["witness"] == {"kind": "component", "source": "e2", "value": "1/4", "detail": "a=4"}


@pytest.mark.parametrize("surface_id", _CATALOG_IDS)
def test_snc_tree_value_is_largest_coefficient(surface_id):
    for config in _root_configs(surface_id):
        g = config.support_graph()
        if not nx.is_tree(g) or any(t != 1 for _, _, t in g.edges(data="intersection")):
            continue
        assert config_lct(config).uncapped == Fraction(1, config.max_coefficient)


@given(st.integers(1, 5))
def test_scaling(k):
    (config,) = enumerate_anticanonical(catalog_get("d7-A1"))
    assert config_lct(config.scaled(k)).uncapped == config_lct(config).uncapped / k


@pytest.mark.parametrize("surface_id", _CATALOG_IDS)
@pytest.mark.parametrize("k", [2, 3])
def test_scaling_catalog_configs(surface_id, k):
    for config in _root_configs(surface_id):
        assert config_lct(config.scaled(k)).uncapped == config_lct(config).uncapped / k


@pytest.mark.parametrize("name", ["e1-e2", "e2", "L-e1-e2"])
def test_raising_a_coefficient_never_increases(d7_config, name):
    assert config_lct(d7_config.raised(name)).uncapped <= config_lct(d7_config).uncapped


@pytest.mark.parametrize("surface_id", _CATALOG_IDS)
def test_raising_catalog_configs_never_increases(surface_id):
    for config in _root_configs(surface_id):
        base = config_lct(config).uncapped
        for name in config.mult:
            assert config_lct(config.raised(name)).uncapped <= base, name


@pytest.mark.parametrize("surface_id", _CATALOG_IDS)
def test_adding_a_component_never_increases(surface_id):
    model = catalog_get(surface_id)
    for config in _root_configs(surface_id):
        base = config_lct(config).uncapped
        outside = [c.name for c in model.curves if c.name not in config.mult][:3]
        for name in outside:
            assert config_lct(config.raised(name)).uncapped <= base, name


def test_empty_config(d7):
    with pytest.raises(ValueError, match="config has no components"):
        config_lct(DivisorConfig(d7, {}))


# ------------------------------------------------------------------
# Modes
# ------------------------------------------------------------------


def test_pessimistic_needs_points_for_extras(d7):
    extra = ExtraComponent("X", DivisorClass(3, (2, 1)), 4, 1)
    config = DivisorConfig(d7, {"e1-e2": 1, "e2": 1}, (extra,), label="bare")
    with pytest.raises(ValueError, match="pessimistic mode needs explicit points"):
        config_points(config, Mode.PESSIMISTIC)


def test_pessimistic_never_above_default(d7_config):
    default = config_lct(d7_config, Mode.DEFAULT_SNC).uncapped
    assert config_lct(d7_config, "pessimistic").uncapped <= default


def test_default_points_are_nodes(d7_config):
    points = config_points(d7_config)
    assert len(points) == 2
    assert all(len(p.items) == 2 for p in points)


# ------------------------------------------------------------------
# Surfaces
# ------------------------------------------------------------------


def test_surface_degree7(d7):
    report = surface_lct1(d7)
    assert report.value == Fraction(1, 4)
    assert report.config == "enumerated"


def test_surface_cubic_a1():
    report = surface_lct1(catalog_get("d3-A1"))
    assert report.value == Fraction(2, 3)
    assert report.config == "triple-point(1)"


def test_smooth_surface():
    model = build_from_plane_spec(PlaneSpec((PointRecord("p1"), PointRecord("p2"))), id="d7-smooth")
    with pytest.raises(ValueError, match="smooth surface"):
        surface_lct1(model)


@pytest.mark.parametrize("entry", load_catalog().entries(), ids=lambda e: e.id)
def test_catalog_matches_table(entry):
    value = surface_lct1(catalog_get(entry.id)).value
    if entry.recorded_lct1 is not None:
        assert value == entry.recorded_lct1
    else:
        assert value == expected_lct1(entry.degree, entry.singularity)


def test_quadrilateral_uses_tangent_member():
    model = catalog_get("d2-4A1-dblprime")
    assert [c.label for c in special_configs(model)] == ["tangent-point"]
    report = surface_lct1(model)
    assert report.value == Fraction(3, 4)
    assert report.config == "tangent-point"
    assert expected_lct1(2, model.singularity) == Fraction(2, 3)


@pytest.mark.parametrize("surface_id", _CATALOG_IDS)
def test_surface_configs_pass_through_a_root(surface_id):
    configs = surface_configs(catalog_get(surface_id))
    assert configs
    assert all(c.has_root for c in configs)


def test_rootless_configs_are_skipped(d7, d7_config):
    rootless = DivisorConfig(d7, {"e2": 6}, label="rootless")
    with mock.patch("pezzo._lct.enumerate_anticanonical", return_value=[rootless, d7_config]):
        report = surface_lct1(d7)
    assert report.value == Fraction(1, 4)
    assert report.config == "enumerated"


# ------------------------------------------------------------------
# Formatting
# ------------------------------------------------------------------


@pytest.mark.parametrize(
    "q, text",
    [(Fraction(1, 4), "1/4"), (Fraction(2, 6), "1/3"), (Fraction(1), "1"), (Fraction(4, 2), "2")],
)
def test_format_fraction(q, text):
    assert format_fraction(q) == text
