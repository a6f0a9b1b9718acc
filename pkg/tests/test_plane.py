"""Tests for plane specs and the almost-general-position rules."""

import pytest

from pezzo._lattice import DivisorClass
from pezzo._plane import (
    DeclaredCurve,
    Incidence,
    PlaneSpec,
    PointRecord,
    plane_curves,
    validate_plane_spec,
)


def _spec(points, curves=(), incidences=()):
    return PlaneSpec(
        tuple(PointRecord(*p) if isinstance(p, tuple) else PointRecord(p) for p in points),
        tuple(incidences),
        tuple(curves),
    )


# ------------------------------------------------------------------
# Structure
# ------------------------------------------------------------------


def test_ancestry_and_children():
    spec = _spec(["p1", ("p2", "p1"), ("p3", "p2")])
    assert spec.ancestry("p3") == ["p1", "p2", "p3"]
    assert spec.children("p1") == ["p2"]
    assert spec.n == 3


def test_exceptional_class_subtracts_children():
    spec = _spec(["p1", ("p2", "p1")])
    assert spec.exceptional_class("p1") == DivisorClass(0, (-1, 1))
    assert spec.exceptional_class("p2") == DivisorClass(0, (0, -1))


def test_from_dict_to_dict():
    data = {
        "points": [{"id": "p1"}, {"id": "p2", "parent": "p1"}, {"id": "p3"}],
        "incidences": [],
        "declared_curves": [{"id": "l", "kind": "line", "points": ["p1", "p2", "p3"]}],
    }
    spec = PlaneSpec.from_dict(data)
    assert spec.points[1].infinitely_near
    assert spec.to_dict() == data


def test_from_dict_bad_incidence():
    with pytest.raises(ValueError, match="expected on_line, on_conic or on_curve"):
        PlaneSpec.from_dict({"points": [{"id": "p1"}], "incidences": [{"point": "p1"}]})


# ------------------------------------------------------------------
# Incidence folding
# ------------------------------------------------------------------


def test_incidence_creates_line():
    spec = _spec(["p1", "p2", "p3"], incidences=[Incidence("p3", "on_line", ("p1", "p2"))])
    curves = plane_curves(spec)
    assert len(curves) == 1
    assert curves[0].kind == "line"
    assert curves[0].points == ("p1", "p2", "p3")
    assert not curves[0].declared


def test_incidence_joins_declared_line():
    spec = _spec(
        ["p1", "p2", "p3"],
        curves=[DeclaredCurve("l", "line", ("p1", "p2"))],
        incidences=[Incidence("p3", "on_line", ("p1", "p2"))],
    )
    (curve,) = plane_curves(spec)
    assert curve.id == "l"
    assert spec.curve_class(curve) == DivisorClass(1, (1, 1, 1))


def test_cubic_singular_point_has_multiplicity_two():
    spec = _spec(
        ["p1", "p2"],
        curves=[DeclaredCurve("c", "cubic", ("p1", "p2"), "nodal", "p1")],
    )
    (curve,) = plane_curves(spec)
    assert curve.multiplicity("p1") == 2
    assert curve.multiplicity("p2") == 1
    assert curve.multiplicity("p9") == 0


def test_unknown_curve_incidence():
    spec = _spec(["p1"], incidences=[Incidence("p1", "on_curve", ("nope",))])
    with pytest.raises(ValueError, match="unknown curve"):
        plane_curves(spec)


# ------------------------------------------------------------------
# Validation
# ------------------------------------------------------------------


def test_valid_spec():
    spec = _spec(["p1", "p2", "p3"], curves=[DeclaredCurve("l", "line", ("p1", "p2", "p3"))])
    assert validate_plane_spec(spec) == []


def test_parent_must_come_first():
    spec = _spec([("p2", "p1"), "p1"])
    violations = validate_plane_spec(spec)
    assert any("parent p1 is not an earlier point" in v for v in violations)


def test_duplicate_point():
    assert any("duplicate point id" in v for v in validate_plane_spec(_spec(["p1", "p1"])))


def test_four_on_a_line():
    spec = _spec(["p1", "p2", "p3", "p4"], curves=[DeclaredCurve("l", "line", ("p1", "p2", "p3", "p4"))])
    violations = validate_plane_spec(spec)
    assert any(v.startswith("four on a line") for v in violations)


def test_cubic_markers():
    smooth = _spec(["p1"], curves=[DeclaredCurve("c", "cubic", ("p1",))])
    assert validate_plane_spec(smooth) == []
    odd = _spec(["p1"], curves=[DeclaredCurve("c", "cubic", ("p1",), "tacnodal", "p1")])
    assert any("must be nodal or cuspidal" in v for v in validate_plane_spec(odd))
    off = _spec(["p1", "p2"], curves=[DeclaredCurve("c", "cubic", ("p1",), "nodal", "p2")])
    assert any("singular point p2 not on the curve" in v for v in validate_plane_spec(off))


def test_curve_through_child_needs_parent():
    spec = _spec(["p1", ("p2", "p1"), "p3"], curves=[DeclaredCurve("l", "line", ("p2", "p3"))])
    assert any("passes through p2 but not through p1" in v for v in validate_plane_spec(spec))


def test_point_on_minus_two_exceptional_curve():
    spec = _spec(["p1", ("p2", "p1"), ("p3", "p1")])
    violations = validate_plane_spec(spec)
    assert "point on a -2 strict transform: p3 lies on the exceptional curve over p1" in violations


def test_reports_every_position_violation():
    spec = _spec(
        ["p1", "p2", "p3", "p4", ("p5", "p1"), ("p6", "p1")],
        curves=[DeclaredCurve("l", "line", ("p1", "p2", "p3", "p4"))],
    )
    violations = validate_plane_spec(spec)
    assert any(v.startswith("four on a line") for v in violations)
    assert any(v.startswith("point on a -2 strict transform") for v in violations)
