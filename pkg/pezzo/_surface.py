"""Weak del Pezzo surface models and their singularity types.

A :class:`SurfaceModel` is defined by its negative curves: the (-2)-curves
lying over the singular points of the anticanonical model and the
(-1)-curves.  Models are normally built from a :class:`~pezzo._plane.PlaneSpec`
with :func:`build_from_plane_spec`, or entered directly as curve lists.

The configuration of (-2)-curves is a disjoint union of Dynkin diagrams.
:func:`dynkin_type` reads it off, :func:`refine_singularity_label` adds the
primed marks needed in degree 2, and :func:`is_admissible` tells whether a
type can occur at all in a given degree.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Optional

import networkx as nx
import numpy as np
from networkx.algorithms import isomorphism

from pezzo._errors import NonCanonicalError, ValidationError
from pezzo._lattice import (
    DivisorClass,
    anticanonical_class,
    anticanonical_degree,
    enumerate_negative_candidates,
    pairing,
    self_intersection,
)
from pezzo._plane import PlaneSpec, plane_curves, validate_plane_spec

logger = logging.getLogger(__name__)

PRIME = "'"
DOUBLE_PRIME = "''"

_FAMILY_ORDER = {"A": 0, "D": 1, "E": 2}
_TOKEN = re.compile(r"^(\()?(\d*)([ADE])(\d+)(\))?('{0,2})$")
_POSITION_RULES = ("four on a line", "seven on a conic", "point on a -2 strict transform")


# ------------------------------------------------------------------
# Singularity types
# ------------------------------------------------------------------


def _component_key(name: str) -> tuple[int, int]:
    return _FAMILY_ORDER[name[0]], int(name[1:])


@dataclass(frozen=True)
class SingularityType:
    """Multiset of ADE components with the degree-2 refinement marks.

    ``a5_mark`` applies to the A5 component, ``a1_mark`` to the group of
    A1 components when there are three or four of them.
    """

    components: tuple[str, ...] = ()
    a5_mark: str = ""
    a1_mark: str = ""

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.components, key=_component_key))
        object.__setattr__(self, "components", ordered)

    @property
    def rank(self) -> int:
        return sum(int(c[1:]) for c in self.components)

    def count(self, name: str) -> int:
        return self.components.count(name)

    def is_empty(self) -> bool:
        return not self.components

    def unrefined(self) -> SingularityType:
        return SingularityType(self.components)

    @property
    def label(self) -> str:
        parts = []
        seen: list[str] = []
        for c in self.components:
            if c not in seen:
                seen.append(c)
        for c in seen:
            k = self.count(c)
            text = c if k == 1 else f"{k}{c}"
            if c == "A1" and self.a1_mark and k in (3, 4):
                text = f"({text}){self.a1_mark}"
            elif c == "A5" and self.a5_mark:
                text = f"{text}{self.a5_mark}"
            parts.append(text)
        return "+".join(parts)

    def __str__(self) -> str:
        return self.label or "smooth"

    @classmethod
    def parse(cls, label: str) -> SingularityType:
        """Parse labels such as ``"2A1+A3"``, ``"(3A1)'"`` or ``"A5''"``."""
        text = label.replace("′", PRIME).replace("″", DOUBLE_PRIME).replace(" ", "")
        if text in ("", "smooth"):
            return cls()
        components: list[str] = []
        a5_mark = a1_mark = ""
        for token in text.split("+"):
            match = _TOKEN.match(token)
            if match is None:
                raise ValueError(f"Invalid singularity label {label!r}: bad component {token!r}")
            paren_open, count, family, rank, paren_close, mark = match.groups()
            if bool(paren_open) != bool(paren_close):
                raise ValueError(f"Invalid singularity label {label!r}: unbalanced parenthesis")
            name = f"{family}{rank}"
            if not _valid_component(family, int(rank)):
                raise ValueError(f"Invalid singularity label {label!r}: no diagram {name}")
            k = int(count) if count else 1
            components.extend([name] * k)
            if mark:
                if name == "A5" and k == 1:
                    a5_mark = mark
                elif name == "A1" and k in (3, 4):
                    a1_mark = mark
                else:
                    raise ValueError(f"Invalid singularity label {label!r}: mark on {token!r}")
        return cls(tuple(components), a5_mark, a1_mark)

    def contains(self, other: SingularityType) -> bool:
        """Multiset containment of components, marks included."""
        for c in set(other.components):
            if self.count(c) < other.count(c):
                return False
        if other.a5_mark and self.a5_mark != other.a5_mark:
            return False
        if other.a1_mark and self.a1_mark != other.a1_mark:
            return False
        return True

    def graph(self) -> nx.Graph:
        """Disjoint union of the Dynkin diagrams of the components."""
        g = nx.Graph()
        offset = 0
        for c in self.components:
            h = dynkin_graph(c[0], int(c[1:]))
            g = nx.union(g, nx.relabel_nodes(h, lambda v, o=offset: v + o))
            offset += h.number_of_nodes()
        return g


def _valid_component(family: str, rank: int) -> bool:
    if family == "A":
        return rank >= 1
    if family == "D":
        return rank >= 4
    return rank in (6, 7, 8)


def dynkin_graph(family: str, rank: int) -> nx.Graph:
    if not _valid_component(family, rank):
        raise ValueError(f"no Dynkin diagram {family}{rank}")
    if family == "A":
        return nx.path_graph(rank)
    g = nx.path_graph(rank - 1)
    g.add_edge(1 if family == "D" else 2, rank - 1)
    return g


def _extended(name: str) -> nx.Graph:
    if name == "A4":
        return nx.cycle_graph(5)
    if name == "D5":
        g = nx.path_graph(4)
        g.add_edges_from([(1, 4), (2, 5)])
        return g
    if name == "E6":
        g = nx.Graph()
        for arm in range(3):
            g.add_edges_from([(0, 2 * arm + 1), (2 * arm + 1, 2 * arm + 2)])
        return g
    if name == "E7":
        g = nx.path_graph(7)
        g.add_edge(3, 7)
        return g
    raise ValueError(f"no extended diagram for {name}")


# (host graph, proper) pairs: the type must embed as an induced subgraph,
# with strictly fewer vertices when proper.
def _admissible_hosts(degree: int) -> list[tuple[nx.Graph, bool]]:
    if degree == 7:
        return [(SingularityType(("A1",)).graph(), False)]
    if degree == 6:
        return [(SingularityType(("A1", "A2")).graph(), False)]
    if degree == 5:
        return [(_extended("A4"), True)]
    if degree == 4:
        return [(_extended("D5"), True)]
    if degree == 3:
        return [(_extended("E6"), True)]
    if degree == 2:
        return [
            (_extended("E7"), True),
            (SingularityType(("A1",) * 6).graph(), False),
            (SingularityType(("D4", "A1", "A1", "A1")).graph(), False),
        ]
    raise ValueError(f"degree must be in 2..7, got {degree}")


def is_admissible(degree: int, sigma: SingularityType) -> bool:
    """Whether singularities of type *sigma* occur on a del Pezzo surface of *degree*."""
    if sigma.is_empty():
        return True
    small = sigma.graph()
    for host, proper in _admissible_hosts(degree):
        limit = host.number_of_nodes() - (1 if proper else 0)
        if small.number_of_nodes() > limit:
            continue
        if isomorphism.GraphMatcher(host, small).subgraph_is_isomorphic():
            return True
    return False


def identify_component(g: nx.Graph) -> str:
    """Name the ADE diagram of a connected graph, e.g. ``"D5"``.

    Raises
    ------
    ValueError
        If *g* is not a simply-laced Dynkin diagram.
    """
    if any(data.get("intersection", 1) != 1 for _, _, data in g.edges(data=True)):
        raise ValueError("not an ADE diagram: multiple edge")
    if nx.number_of_selfloops(g) or not nx.is_tree(g):
        raise ValueError("not an ADE diagram: contains a cycle")
    n = g.number_of_nodes()
    degrees = dict(g.degree())
    if max(degrees.values(), default=0) <= 2:
        return f"A{n}"
    branch = [v for v, d in degrees.items() if d >= 3]
    if len(branch) != 1 or degrees[branch[0]] != 3:
        raise ValueError("not an ADE diagram: bad branching")
    center = branch[0]
    arms = []
    for start in g.neighbors(center):
        length, prev, cur = 1, center, start
        while True:
            nxt = [w for w in g.neighbors(cur) if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{arms[2] + 3}"
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return f"E{arms[2] + 4}"
    raise ValueError(f"not an ADE diagram: arms {tuple(arms)}")


# ------------------------------------------------------------------
# Surface models
# ------------------------------------------------------------------


@dataclass(frozen=True)
class Curve:
    name: str
    divisor_class: DivisorClass
    self_int: int
    source: str = ""

    @property
    def is_root(self) -> bool:
        return self.self_int == -2

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "class": self.divisor_class.to_array(),
            "self_int": self.self_int,
            "source": self.source,
        }


@dataclass(frozen=True)
class SurfaceModel:
    """A weak del Pezzo surface given by its negative curves.

    Curves are kept in canonical order: (-2)-curves first, then
    (-1)-curves, each group sorted by class.
    """

    degree: int
    curves: tuple[Curve, ...]
    gram: np.ndarray = field(compare=False, repr=False)
    singularity: SingularityType = SingularityType()
    provenance: Optional[PlaneSpec] = field(default=None, compare=False)
    id: str = ""
    notes: str = ""

    @classmethod
    def from_curves(
        cls,
        degree: int,
        curves: Iterable[Curve],
        *,
        provenance: Optional[PlaneSpec] = None,
        id: str = "",
        notes: str = "",
    ) -> SurfaceModel:
        """Order *curves* canonically and label the root configuration.

        Raises
        ------
        ValidationError
            If the (-2)-curves do not form an ADE configuration.
        """
        ordered = tuple(sorted(curves, key=lambda c: (c.self_int != -2, c.divisor_class)))
        model = cls(degree, ordered, gram_matrix(ordered), SingularityType(), provenance, id, notes)
        try:
            sigma = dynkin_type(model)
            if degree == 2:
                sigma = refine_singularity_label(model)
        except ValueError as exc:
            raise ValidationError(f"singularity type of {id or 'model'}", [str(exc)]) from exc
        return replace(model, singularity=sigma)

    @property
    def n(self) -> int:
        return 9 - self.degree

    @property
    def roots(self) -> tuple[Curve, ...]:
        return tuple(c for c in self.curves if c.self_int == -2)

    @property
    def minus_one_curves(self) -> tuple[Curve, ...]:
        return tuple(c for c in self.curves if c.self_int == -1)

    @property
    def anticanonical(self) -> DivisorClass:
        return anticanonical_class(self.n)

    def curve(self, name: str) -> Curve:
        for c in self.curves:
            if c.name == name:
                return c
        raise KeyError(name)

    def find_class(self, v: DivisorClass) -> Optional[Curve]:
        for c in self.curves:
            if c.divisor_class == v:
                return c
        return None

    def without(self, name: str) -> SurfaceModel:
        """Copy with one curve removed, keeping the recorded singularity."""
        kept = tuple(c for c in self.curves if c.name != name)
        return replace(self, curves=kept, gram=gram_matrix(kept))

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "degree": self.degree,
            "singularity": self.singularity.label,
            "curves": [c.to_dict() for c in self.curves],
            "notes": self.notes,
        }


def gram_matrix(curves: Iterable[Curve]) -> np.ndarray:
    classes = [c.divisor_class for c in curves]
    k = len(classes)
    gram = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        for j in range(i, k):
            gram[i, j] = gram[j, i] = pairing(classes[i], classes[j])
    return gram


def root_graph(model: SurfaceModel) -> nx.Graph:
    """Graph on the (-2)-curves, edges weighted by pairing."""
    g = nx.Graph()
    roots = model.roots
    g.add_nodes_from(c.name for c in roots)
    for i, a in enumerate(roots):
        for b in roots[i + 1:]:
            t = pairing(a.divisor_class, b.divisor_class)
            if t:
                g.add_edge(a.name, b.name, intersection=t)
    return g


def _components(g: nx.Graph) -> list[nx.Graph]:
    comps = [g.subgraph(c).copy() for c in nx.connected_components(g)]
    return sorted(comps, key=lambda h: sorted(h.nodes))


def dynkin_type(model: SurfaceModel) -> SingularityType:
    """Unrefined singularity type read off the (-2)-curve graph."""
    names = tuple(identify_component(h) for h in _components(root_graph(model)))
    return SingularityType(names)


def refine_singularity_label(model: SurfaceModel) -> SingularityType:
    """Dynkin type with A5 and 3A1/4A1 marks (degree 2 only)."""
    if model.degree != 2:
        raise ValueError(f"refinement applies to degree 2 only, got degree {model.degree}")
    g = root_graph(model)
    comps = _components(g)
    names = [identify_component(h) for h in comps]
    minus_one = [c.divisor_class for c in model.minus_one_curves]
    by_name = {c.name: c.divisor_class for c in model.roots}

    a5_mark = ""
    for h, name in zip(comps, names):
        if name != "A5":
            continue
        ends = [v for v, d in h.degree() if d == 1]
        path = nx.shortest_path(h, ends[0], ends[1])
        middle = by_name[path[2]]
        hit = any(pairing(e, middle) >= 1 for e in minus_one)
        a5_mark = PRIME if hit else DOUBLE_PRIME

    a1_mark = ""
    singles = [by_name[next(iter(h.nodes))] for h, name in zip(comps, names) if name == "A1"]
    if len(singles) in (3, 4):
        hit = any(sum(1 for r in singles if pairing(e, r) >= 1) >= 3 for e in minus_one)
        a1_mark = PRIME if hit else DOUBLE_PRIME
    return SingularityType(tuple(names), a5_mark, a1_mark)


# ------------------------------------------------------------------
# Validation
# ------------------------------------------------------------------


def reflect_to_curve(model: SurfaceModel, v: DivisorClass, max_steps: int = 500) -> tuple[DivisorClass, dict[str, int]]:
    """Reflect *v* in (-2)-curves until it pairs nonnegatively with all of them.

    Returns the final class and the root coefficients collected on the way,
    so that ``v == final + sum(k * root)``.
    """
    coeffs: dict[str, int] = {}
    roots = model.roots
    for _ in range(max_steps):
        for r in roots:
            k = -pairing(v, r.divisor_class)
            if k > 0:
                v = v - r.divisor_class * k
                coeffs[r.name] = coeffs.get(r.name, 0) + k
                break
        else:
            return v, coeffs
    raise ValueError(f"reflection did not terminate after {max_steps} steps")


def validate_model(model: SurfaceModel) -> list[str]:
    """Check every structural invariant of *model*; return the failures."""
    failures: list[str] = []
    n = model.n
    if not 1 <= model.degree <= 9:
        failures.append(f"degree {model.degree} out of range")
        return failures
    for c in model.curves:
        if c.divisor_class.n != n:
            failures.append(f"curve {c.name}: class has {c.divisor_class.n} points, expected {n}")
            return failures
    seen: dict[DivisorClass, str] = {}
    for c in model.curves:
        cls = c.divisor_class
        if cls in seen:
            failures.append(f"curve {c.name}: duplicate of {seen[cls]}")
        seen[cls] = c.name
        if c.self_int not in (-1, -2):
            failures.append(f"curve {c.name}: self-intersection {c.self_int} not in {{-1, -2}}")
        if self_intersection(cls) != c.self_int:
            failures.append(f"curve {c.name}: self_int {c.self_int} != class square {self_intersection(cls)}")
        if anticanonical_degree(cls) != c.self_int + 2:
            failures.append(f"curve {c.name}: adjunction fails, (-K).C = {anticanonical_degree(cls)}")

    k = len(model.curves)
    if model.gram.shape != (k, k):
        failures.append(f"gram has shape {model.gram.shape}, expected {(k, k)}")
    else:
        for i in range(k):
            for j in range(k):
                expected = pairing(model.curves[i].divisor_class, model.curves[j].divisor_class)
                if int(model.gram[i, j]) != expected:
                    failures.append(f"gram[{i}][{j}] = {int(model.gram[i, j])}, pairing is {expected}")
                elif i != j and expected < 0:
                    failures.append(f"curves {model.curves[i].name} and {model.curves[j].name} pair negatively")
    roots = model.roots
    for i, a in enumerate(roots):
        for b in roots[i + 1:]:
            t = pairing(a.divisor_class, b.divisor_class)
            if t not in (0, 1):
                failures.append(f"(-2)-curves {a.name} and {b.name} meet with multiplicity {t}")
    if failures:
        return failures

    try:
        for h in _components(root_graph(model)):
            identify_component(h)
    except ValueError as exc:
        failures.append(f"(-2)-curves: {exc}")

    listed = {c.divisor_class for c in model.minus_one_curves}
    minus_one, _ = enumerate_negative_candidates(n)
    for v in minus_one:
        try:
            final, _ = reflect_to_curve(model, v)
        except ValueError as exc:
            failures.append(f"completeness: {v}: {exc}")
            continue
        if final not in listed:
            failures.append(f"completeness: {v} does not decompose onto a listed (-1)-curve")
    return failures


# ------------------------------------------------------------------
# Construction from plane specs
# ------------------------------------------------------------------


def build_from_plane_spec(spec: PlaneSpec, *, id: str = "", notes: str = "") -> SurfaceModel:
    """Blow up the points of *spec* and collect the negative curves.

    Raises
    ------
    NonCanonicalError
        If a curve of self-intersection <= -3 appears.
    ValidationError
        If the spec breaks almost general position or the resulting curve
        list fails :func:`validate_model`.
    """
    violations = validate_plane_spec(spec)
    structural = [v for v in violations if not v.startswith(_POSITION_RULES)]
    if structural:
        raise ValidationError("invalid plane spec", structural)

    sources: dict[DivisorClass, str] = {}
    too_negative: list[str] = []
    for p in spec.points:
        cls = spec.exceptional_class(p.id)
        sources[cls] = f"exceptional curve over {p.id}"
        if self_intersection(cls) <= -3:
            too_negative.append(f"exceptional curve over {p.id} has self-intersection {self_intersection(cls)}")
    for curve in plane_curves(spec):
        cls = spec.curve_class(curve)
        square = self_intersection(cls)
        if square <= -3:
            too_negative.append(f"{curve.kind} {curve.id} has self-intersection {square}")
        elif square <= -1:
            sources.setdefault(cls, f"{curve.kind} {curve.id}")
        else:
            logger.debug("%s %s has self-intersection %d; not a negative curve", curve.kind, curve.id, square)
    if too_negative:
        raise NonCanonicalError("non-canonical configuration", too_negative)
    if violations:
        raise ValidationError("invalid plane spec", violations)

    roots = [cls for cls in sources if self_intersection(cls) == -2]
    candidates, _ = enumerate_negative_candidates(spec.n)
    minus_one = [v for v in candidates if all(pairing(v, r) >= 0 for r in roots)]
    curves = [Curve(str(cls), cls, -2, sources[cls]) for cls in roots]
    curves += [Curve(str(v), v, -1, sources.get(v, "")) for v in minus_one]

    model = SurfaceModel.from_curves(9 - spec.n, curves, provenance=spec, id=id, notes=notes)
    failures = validate_model(model)
    if failures:
        raise ValidationError("catalog-incomplete spec", failures)
    logger.debug(
        "built %s: degree %d, %d (-2)-curves, %d (-1)-curves, type %s",
        id or "surface", model.degree, len(model.roots), len(model.minus_one_curves), model.singularity,
    )
    return model
