"""Declarative plane specs: blown-up points, incidences and plane curves.

A :class:`PlaneSpec` lists the points to blow up in order.  A point either
lies on the plane or is infinitely near an earlier point (its *parent*),
meaning it sits on the exceptional curve of the parent.  Incidences say
that a point lies on the line through two other points, on the conic
through five other points, or on a declared curve.  Declared curves are
lines, conics and cubics (smooth, nodal or cuspidal) given by the points they pass
through.

:func:`validate_plane_spec` checks the almost-general-position rules and
returns a report (a list of violation strings, empty when valid).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Optional

from pezzo._lattice import MAX_POINTS, DivisorClass

logger = logging.getLogger(__name__)

PLANE = "plane"

_DEGREES = {"line": 1, "conic": 2, "cubic": 3}
_CUBIC_SINGULARITIES = ("nodal", "cuspidal")


@dataclass(frozen=True)
class PointRecord:
    id: str
    parent: str = PLANE

    @property
    def infinitely_near(self) -> bool:
        return self.parent != PLANE


@dataclass(frozen=True)
class Incidence:
    """Point ``point`` lies on ``kind``: ``on_line``, ``on_conic`` or ``on_curve``."""

    point: str
    kind: str
    target: tuple[str, ...]


@dataclass(frozen=True)
class DeclaredCurve:
    id: str
    kind: str
    points: tuple[str, ...] = ()
    singularity: Optional[str] = None
    singular_point: Optional[str] = None

    @property
    def degree(self) -> int:
        return _DEGREES[self.kind]


@dataclass(frozen=True)
class PlaneCurve:
    """A plane curve after incidences are folded in.

    ``multiplicities`` maps each point the curve passes through to the
    multiplicity of its strict transform there.
    """

    id: str
    kind: str
    degree: int
    multiplicities: tuple[tuple[str, int], ...]
    declared: bool = True

    @property
    def points(self) -> tuple[str, ...]:
        return tuple(p for p, _ in self.multiplicities)

    def multiplicity(self, point: str) -> int:
        for p, mult in self.multiplicities:
            if p == point:
                return mult
        return 0


@dataclass(frozen=True)
class PlaneSpec:
    points: tuple[PointRecord, ...] = ()
    incidences: tuple[Incidence, ...] = ()
    curves: tuple[DeclaredCurve, ...] = field(default_factory=tuple)

    @property
    def n(self) -> int:
        return len(self.points)

    def index(self, point_id: str) -> int:
        """0-based position of a point in blow-up order."""
        for i, p in enumerate(self.points):
            if p.id == point_id:
                return i
        raise KeyError(point_id)

    def children(self, point_id: str) -> list[str]:
        return [p.id for p in self.points if p.parent == point_id]

    def ancestry(self, point_id: str) -> list[str]:
        """Chain from the plane point down to ``point_id`` (inclusive)."""
        by_id = {p.id: p for p in self.points}
        chain = [point_id]
        while by_id[chain[-1]].parent != PLANE:
            chain.append(by_id[chain[-1]].parent)
        return chain[::-1]

    def exceptional_class(self, point_id: str) -> DivisorClass:
        """Class of the strict transform of the exceptional curve over ``point_id``."""
        n = self.n
        m = [0] * n
        m[self.index(point_id)] = -1
        for child in self.children(point_id):
            m[self.index(child)] = 1
        return DivisorClass(0, tuple(m))

    def curve_class(self, curve: PlaneCurve) -> DivisorClass:
        m = [0] * self.n
        for p, mult in curve.multiplicities:
            m[self.index(p)] = mult
        return DivisorClass(curve.degree, tuple(m))

    # -- serialization ---------------------------------------------------

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> PlaneSpec:
        points = tuple(
            PointRecord(str(p["id"]), str(p.get("parent", PLANE))) for p in data.get("points", [])
        )
        incidences = []
        for entry in data.get("incidences", []):
            point = str(entry["point"])
            if "on_line" in entry:
                incidences.append(Incidence(point, "on_line", tuple(entry["on_line"])))
            elif "on_conic" in entry:
                incidences.append(Incidence(point, "on_conic", tuple(entry["on_conic"])))
            elif "on_curve" in entry:
                incidences.append(Incidence(point, "on_curve", (str(entry["on_curve"]),)))
            else:
                raise ValueError(f"incidence for {point}: expected on_line, on_conic or on_curve")
        curves = tuple(
            DeclaredCurve(
                id=str(c["id"]),
                kind=str(c["kind"]),
                points=tuple(c.get("points", [])),
                singularity=c.get("singularity"),
                singular_point=c.get("singular_point"),
            )
            for c in data.get("declared_curves", [])
        )
        return cls(points, tuple(incidences), curves)

    def to_dict(self) -> dict[str, Any]:
        points = []
        for p in self.points:
            points.append({"id": p.id} if p.parent == PLANE else {"id": p.id, "parent": p.parent})
        incidences = []
        for inc in self.incidences:
            value: Any = inc.target[0] if inc.kind == "on_curve" else list(inc.target)
            incidences.append({"point": inc.point, inc.kind: value})
        curves = []
        for c in self.curves:
            entry: dict[str, Any] = {"id": c.id, "kind": c.kind, "points": list(c.points)}
            if c.singularity is not None:
                entry["singularity"] = c.singularity
                entry["singular_point"] = c.singular_point
            curves.append(entry)
        return {"points": points, "incidences": incidences, "declared_curves": curves}


# ------------------------------------------------------------------
# Incidence folding
# ------------------------------------------------------------------


def plane_curves(spec: PlaneSpec) -> list[PlaneCurve]:
    """Declared curves plus the lines and conics implied by incidences.

    Lines sharing two points are merged, since two distinct lines meet
    once.  Point lists follow blow-up order.
    """
    order = {p.id: i for i, p in enumerate(spec.points)}
    members: dict[str, set[str]] = {}
    kinds: dict[str, str] = {}
    declared_ids = set()
    singular: dict[str, str] = {}
    for c in spec.curves:
        members[c.id] = set(c.points)
        kinds[c.id] = c.kind
        declared_ids.add(c.id)
        if c.kind == "cubic" and c.singular_point is not None:
            singular[c.id] = c.singular_point

    for inc in spec.incidences:
        if inc.kind == "on_curve":
            target = inc.target[0]
            if target not in members:
                raise ValueError(f"incidence for {inc.point}: unknown curve {target!r}")
            members[target].add(inc.point)
            continue
        wanted = "line" if inc.kind == "on_line" else "conic"
        found = None
        for cid, pts in members.items():
            if kinds[cid] == wanted and set(inc.target) <= pts:
                found = cid
                break
        if found is None:
            found = f"{wanted}({','.join(inc.target)})"
            members[found] = set(inc.target)
            kinds[found] = wanted
        members[found].add(inc.point)

    merged = True
    while merged:
        merged = False
        lines = [cid for cid in members if kinds[cid] == "line"]
        for i, a in enumerate(lines):
            for b in lines[i + 1:]:
                if len(members[a] & members[b]) >= 2:
                    keep, drop = (a, b) if a in declared_ids or b not in declared_ids else (b, a)
                    members[keep] |= members.pop(drop)
                    kinds.pop(drop)
                    logger.debug("merged line %s into %s", drop, keep)
                    merged = True
                    break
            if merged:
                break

    result = []
    for cid, pts in members.items():
        ordered = sorted(pts, key=lambda p: order.get(p, len(order)))
        mults = tuple((p, 2 if singular.get(cid) == p else 1) for p in ordered)
        result.append(PlaneCurve(cid, kinds[cid], _DEGREES[kinds[cid]], mults, cid in declared_ids))
    return result


# ------------------------------------------------------------------
# Almost general position
# ------------------------------------------------------------------


def validate_plane_spec(spec: PlaneSpec) -> list[str]:
    """Return the violated rules of *spec*; an empty list means valid."""
    violations: list[str] = []
    seen: set[str] = set()
    if spec.n > MAX_POINTS:
        violations.append(f"too many points: {spec.n} > {MAX_POINTS}")
    for p in spec.points:
        if p.id in seen:
            violations.append(f"duplicate point id {p.id}")
        if p.parent != PLANE and p.parent not in seen:
            violations.append(f"point {p.id}: parent {p.parent} is not an earlier point")
        seen.add(p.id)
    if violations:
        return violations

    for c in spec.curves:
        if c.kind not in _DEGREES:
            violations.append(f"curve {c.id}: unknown kind {c.kind!r}")
            continue
        if c.kind == "cubic":
            if c.singularity is None and c.singular_point is None:
                continue
            if c.singularity not in _CUBIC_SINGULARITIES:
                violations.append(f"curve {c.id}: cubic marker must be nodal or cuspidal, got {c.singularity!r}")
            elif c.singular_point not in c.points:
                violations.append(f"curve {c.id}: singular point {c.singular_point} not on the curve")
    try:
        curves = plane_curves(spec)
    except ValueError as exc:
        return violations + [str(exc)]

    by_id = {p.id: p for p in spec.points}
    position: list[str] = []
    for curve in curves:
        unknown = [p for p in curve.points if p not in by_id]
        if unknown:
            violations.append(f"curve {curve.id}: unknown points {', '.join(unknown)}")
            continue
        for p in curve.points:
            parent = by_id[p].parent
            if parent != PLANE and parent not in curve.points:
                violations.append(f"curve {curve.id}: passes through {p} but not through {parent}")
        if curve.kind == "line" and len(curve.points) >= 4:
            position.append(f"four on a line: {curve.id} contains {', '.join(curve.points)}")
        if curve.kind == "conic" and len(curve.points) >= 7:
            position.append(f"seven on a conic: {curve.id} contains {', '.join(curve.points)}")
    if violations:
        return violations
    violations = position

    # A new point must avoid every strict transform that is already a (-2)-curve.
    for idx, p in enumerate(spec.points):
        for curve in curves:
            if p.id not in curve.points:
                continue
            square = curve.degree ** 2 - sum(
                mult ** 2 for q, mult in curve.multiplicities if spec.index(q) < idx
            )
            if square <= -2:
                violations.append(f"point on a -2 strict transform: {p.id} lies on {curve.id}")
        if p.parent != PLANE:
            earlier = [c for c in spec.children(p.parent) if spec.index(c) < idx]
            if -1 - len(earlier) <= -2:
                violations.append(
                    f"point on a -2 strict transform: {p.id} lies on the exceptional curve over {p.parent}"
                )
    return violations
