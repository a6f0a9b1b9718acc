"""Tests for anticanonical configs: enumeration, adjunction, reduction, triple points."""

import logging
from fractions import Fraction

import pytest

from pezzo._anticanon import (
    DivisorConfig,
    ExtraComponent,
    adjunction_config,
    brute_force_solutions,
    config_violations,
    decompose,
    enumerate_anticanonical,
    minus_one_decompositions,
    reduce_to_negative_support,
    special_configs,
)
from pezzo._catalog import catalog_get, catalog_list
from pezzo._errors import ReductionBlockedError
from pezzo._graph import dual_graph
from pezzo._lattice import DivisorClass, enumerate_negative_candidates
from pezzo._local import local_lct
from pezzo._plane import DeclaredCurve, PlaneSpec, PointRecord

_D7_CONFIG = {"e1-e2": 2, "e2": 4, "L-e1-e2": 3}


@pytest.fixture
def d7():
    return catalog_get("d7-A1")


@pytest.fixture
def collinear():
    points = (PointRecord("p1"), PointRecord("p2"), PointRecord("p3"))
    return PlaneSpec(points, (), (DeclaredCurve("l123", "line", ("p1", "p2", "p3")),))


@pytest.fixture
def tangent_lines():
    points = (PointRecord("p1"), PointRecord("p2", "p1"), PointRecord("p3", "p2"))
    curves = (DeclaredCurve("d", "line", ("p1", "p2", "p3")), DeclaredCurve("s", "line", ("p1",)))
    return PlaneSpec(points, (), curves)


# ------------------------------------------------------------------
# Enumeration
# ------------------------------------------------------------------


def test_degree7_unique_config(d7):
    (config,) = enumerate_anticanonical(d7)
    assert config.mult == _D7_CONFIG
    assert config.label == "enumerated"
    assert config.degree_sum() == 7
    assert config.class_sum() == d7.anticanonical
    assert config_violations(config) == []


def test_degree7_brute_force(d7):
    assert brute_force_solutions(d7) == [_D7_CONFIG]


@pytest.mark.parametrize("surface_id", [sid for sid, degree, _ in catalog_list() if degree >= 5])
def test_enumeration_matches_brute_force(surface_id):
    model = catalog_get(surface_id)
    assert decompose(model, model.anticanonical) == brute_force_solutions(model)


@pytest.mark.parametrize("surface_id", [sid for sid, _, _ in catalog_list()])
def test_enumerated_configs_valid(surface_id):
    model = catalog_get(surface_id)
    configs = enumerate_anticanonical(model)
    assert configs
    for config in configs:
        assert config_violations(config) == []
        assert config.max_coefficient <= 6


def test_decompose_minus_one_class(d7):
    e1 = DivisorClass(0, (-1, 0))
    assert decompose(d7, e1) == [{"e1-e2": 1, "e2": 1}]
    assert decompose(d7, DivisorClass(-1, (0, 0))) == []


def test_decompose_dimension_mismatch(d7):
    with pytest.raises(ValueError, match="dimension mismatch"):
        decompose(d7, DivisorClass(1, (0,)))


def test_every_minus_one_class_decomposes():
    model = catalog_get("d3-A1")
    decompositions = minus_one_decompositions(model)
    candidates, _ = enumerate_negative_candidates(3 + 3)
    assert len(decompositions) == len(candidates) == 27
    assert all(decompositions[v] for v in candidates)


@pytest.mark.parametrize("surface_id", [s for s, degree, _ in catalog_list() if degree == 3])
def test_minus_one_classes_decompose_uniquely(surface_id):
    model = catalog_get(surface_id)
    counts = {str(v): len(sols) for v, sols in minus_one_decompositions(model).items()}
    assert len(counts) == 27
    assert set(counts.values()) == {1}


# ------------------------------------------------------------------
# Config objects
# ------------------------------------------------------------------


def test_unknown_curve(d7):
    with pytest.raises(ValueError, match="unknown curves: nope"):
        DivisorConfig(d7, {"nope": 1})


def test_zero_coefficients_dropped(d7):
    config = DivisorConfig(d7, {"e2": 0, "L-e1-e2": 1})
    assert config.mult == {"L-e1-e2": 1}
    assert config.coefficient("e2") == 0


def test_violations_reported(d7):
    failures = config_violations(DivisorConfig(d7, {"e2": 1, "e1-e2": 7}))
    assert any(f.startswith("class sum") for f in failures)
    assert any("outside 0..6" in f for f in failures)


def test_disconnected_support(d7):
    failures = config_violations(DivisorConfig(d7, {"e1-e2": 1, "L-e1-e2": 1}))
    assert any("disconnected" in f for f in failures)


def test_scaled_and_raised(d7):
    (config,) = enumerate_anticanonical(d7)
    assert config.scaled(2).mult == {k: 2 * v for k, v in _D7_CONFIG.items()}
    assert config.raised("e2").coefficient("e2") == 5
    with pytest.raises(ValueError, match="scale factor"):
        config.scaled(0)


# ------------------------------------------------------------------
# Plane cubics
# ------------------------------------------------------------------


def test_adjunction_triple_line(collinear):
    config = adjunction_config(collinear, [("l123", 3)], id="d6-A1")
    assert config.mult == {"L-e1-e2-e3": 3, "e1": 2, "e2": 2, "e3": 2}
    assert not config.extras
    assert config_violations(config) == []


def test_adjunction_errors(collinear):
    with pytest.raises(ValueError, match="cubic has degree 1, expected 3"):
        adjunction_config(collinear, [("l123", 1)])
    with pytest.raises(ValueError, match="unknown plane curve"):
        adjunction_config(collinear, [("c", 3)])


def test_adjunction_smooth_cubic():
    spec = PlaneSpec((PointRecord("p1"),), (), (DeclaredCurve("c", "cubic", ("p1",)),))
    config = adjunction_config(spec, [("c", 1)], id="d8")
    assert config.mult == {}
    (extra,) = config.extras
    assert (extra.name, extra.coefficient, extra.self_int) == ("c", 1, 8)
    assert config.max_coefficient == 1


def test_adjunction_double_line_and_line(tangent_lines):
    config = adjunction_config(tangent_lines, [("d", 2), ("s", 1)], id="d6-A1A2")
    assert config.mult == {"e1-e2": 2, "e2-e3": 3, "e3": 4, "L-e1-e2-e3": 2}
    graph = dual_graph(config)
    assert graph.max_weight == 4
    assert [v for v in graph.vertices if graph.self_int(v) == 0] == ["s"]
    assert config.class_sum() == config.surface.anticanonical


def test_reduction_of_zero_curve(tangent_lines):
    config = adjunction_config(tangent_lines, [("d", 2), ("s", 1)], id="d6-A1A2")
    reduced = reduce_to_negative_support(config)
    assert not reduced.extras
    assert reduced.class_sum() == config.surface.anticanonical
    assert all(reduced.coefficient(name) >= a for name, a in config.mult.items())
    assert reduced.max_coefficient >= 4


# ------------------------------------------------------------------
# Reduction and triple points
# ------------------------------------------------------------------


def test_triple_point_degree7(d7):
    (config,) = special_configs(d7)
    assert config.label == "triple-point(1)"
    assert config.mult == {"e1-e2": 1, "e2": 1}
    (extra,) = config.extras
    assert extra.divisor_class == DivisorClass(3, (2, 1))
    assert extra.self_int == 4
    assert len(config.points[0].items) == 3
    assert config.class_sum() == d7.anticanonical


def test_reduction_recovers_enumerated_config(d7):
    (triple,) = special_configs(d7)
    reduced = reduce_to_negative_support(triple)
    assert not reduced.extras
    assert reduced.mult == _D7_CONFIG


def test_reduction_blocked(d7):
    extra = ExtraComponent("X", DivisorClass(1, (0, -1)), 0, 1)
    with pytest.raises(ReductionBlockedError, match="reduction blocked"):
        reduce_to_negative_support(DivisorConfig(d7, {}, (extra,)))


def test_triple_point_a2():
    model = catalog_get("d6-A2")
    labels = [c.label for c in special_configs(model)]
    assert labels == ["triple-point(2)"]


def test_no_triple_point_for_a3():
    assert special_configs(catalog_get("d5-A3")) == []


def test_tangent_member_on_quadrilateral(caplog):
    model = catalog_get("d2-4A1-dblprime")
    with caplog.at_level(logging.INFO, logger="pezzo._anticanon"):
        (config,) = special_configs(model)
    assert config.label == "tangent-point"
    assert config.has_root
    assert config.class_sum() == model.anticanonical
    (extra,) = config.extras
    assert extra.self_int == 0
    (point,) = config.points
    assert local_lct(point)[0] == Fraction(3, 4)
    assert "no triple-point configuration" in caplog.text
    assert not [r for r in caplog.records if r.levelno >= logging.WARNING]
