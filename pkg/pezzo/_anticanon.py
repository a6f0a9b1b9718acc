"""Effective anticanonical divisors on weak del Pezzo surfaces.

A :class:`DivisorConfig` is a divisor ``D = sum(a_i * C_i)`` in ``|-K|``.
Enumerated configs are supported on the negative curves of the surface;
configs built from plane cubics or from the triple-point families may also
carry *extras*, components of nonnegative self-intersection.

The enumeration engine is :func:`decompose`: every nonnegative integer
combination of the listed curves equal to a target class.  Since
``(-K).C`` is 1 on (-1)-curves and 0 on (-2)-curves, the (-1)-curve part
has a fixed total ``(-K).target``; it is found by depth-first search and
the (-2)-curve part is then solved exactly against the root Gram matrix.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterator, Optional, Sequence

import networkx as nx
import numpy as np
import sympy

from pezzo._errors import ReductionBlockedError
from pezzo._lattice import (
    DivisorClass,
    anticanonical_degree,
    enumerate_negative_candidates,
    pairing,
    self_intersection,
)
from pezzo._local import Branch, Cluster
from pezzo._plane import PlaneSpec, plane_curves
from pezzo._surface import SurfaceModel, build_from_plane_spec

logger = logging.getLogger(__name__)

MAX_COEFFICIENT = 6

# Prefix/tail split of the brute-force box: the tail is evaluated as one
# vectorized grid of (MAX_COEFFICIENT + 1) ** _GRID_TAIL rows.
_GRID_TAIL = 6


@dataclass(frozen=True)
class ExtraComponent:
    """A component of nonnegative self-intersection."""

    name: str
    divisor_class: DivisorClass
    self_int: int
    coefficient: int


@dataclass(frozen=True)
class Component:
    """Uniform view of a config component, listed curve or extra."""

    name: str
    divisor_class: DivisorClass
    self_int: int
    coefficient: int
    extra: bool = False


@dataclass
class DivisorConfig:
    """An effective anticanonical divisor on ``surface``.

    Parameters
    ----------
    surface : SurfaceModel
    mult : dict
        Curve name to coefficient; zero coefficients are dropped.
    extras : tuple of ExtraComponent
    points : tuple of Cluster
        Explicit local geometry.  Empty means the default: components
        meet pairwise transversally at distinct points.
    label : str
        Where the config came from, e.g. ``"triple-point(1)"``.
    """

    surface: SurfaceModel
    mult: dict[str, int]
    extras: tuple[ExtraComponent, ...] = ()
    points: tuple[Cluster, ...] = ()
    label: str = ""
    _components: Optional[list[Component]] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        names = {c.name for c in self.surface.curves}
        unknown = [k for k in self.mult if k not in names]
        if unknown:
            raise ValueError(f"config refers to unknown curves: {', '.join(unknown)}")
        order = {c.name: i for i, c in enumerate(self.surface.curves)}
        self.mult = {k: v for k, v in sorted(self.mult.items(), key=lambda kv: order[kv[0]]) if v}
        self.extras = tuple(self.extras)
        self.points = tuple(self.points)

    def components(self) -> list[Component]:
        if self._components is None:
            comps = [
                Component(c.name, c.divisor_class, c.self_int, self.mult[c.name])
                for c in self.surface.curves
                if c.name in self.mult
            ]
            comps += [Component(x.name, x.divisor_class, x.self_int, x.coefficient, True) for x in self.extras]
            self._components = comps
        return self._components

    def coefficient(self, name: str) -> int:
        for c in self.components():
            if c.name == name:
                return c.coefficient
        return 0

    @property
    def max_coefficient(self) -> int:
        return max((c.coefficient for c in self.components()), default=0)

    @property
    def has_root(self) -> bool:
        return any(c.self_int == -2 and c.coefficient > 0 for c in self.components())

    def class_sum(self) -> DivisorClass:
        total = DivisorClass(0, (0,) * self.surface.n)
        for c in self.components():
            total = total + c.divisor_class * c.coefficient
        return total

    def degree_sum(self) -> int:
        """``sum(a_i * (-K).C_i)``."""
        return sum(c.coefficient * anticanonical_degree(c.divisor_class) for c in self.components())

    def support_graph(self) -> nx.Graph:
        comps = [c for c in self.components() if c.coefficient > 0]
        g = nx.Graph()
        g.add_nodes_from(c.name for c in comps)
        for i, a in enumerate(comps):
            for b in comps[i + 1:]:
                t = pairing(a.divisor_class, b.divisor_class)
                if t > 0:
                    g.add_edge(a.name, b.name, intersection=t)
        return g

    def scaled(self, k: int) -> DivisorConfig:
        """``k*D``; no longer anticanonical, used for threshold scaling checks."""
        if k < 1:
            raise ValueError(f"scale factor must be positive, got {k}")
        return DivisorConfig(
            self.surface,
            {name: a * k for name, a in self.mult.items()},
            tuple(ExtraComponent(x.name, x.divisor_class, x.self_int, x.coefficient * k) for x in self.extras),
            tuple(p.scaled(k) for p in self.points),
            self.label,
        )

    def raised(self, name: str, by: int = 1) -> DivisorConfig:
        """Copy with the coefficient of listed curve *name* increased by *by*."""
        mult = dict(self.mult)
        mult[name] = mult.get(name, 0) + by
        return DivisorConfig(self.surface, mult, self.extras, self.points, self.label)

    def rows(self) -> list[tuple[str, str, int]]:
        """``(curve, class, coefficient)`` for export."""
        return [(c.name, str(c.divisor_class), c.coefficient) for c in self.components()]

    def to_dict(self) -> dict[str, Any]:
        return {
            "surface": self.surface.id,
            "label": self.label,
            "components": [
                {
                    "name": c.name,
                    "class": c.divisor_class.to_array(),
                    "self_int": c.self_int,
                    "coefficient": c.coefficient,
                    "extra": c.extra,
                }
                for c in self.components()
            ],
            "points": [p.to_dict() for p in self.points],
        }


def config_violations(config: DivisorConfig) -> list[str]:
    """Return the failed config invariants; an empty list means valid."""
    failures = []
    model = config.surface
    total = config.class_sum()
    if total != model.anticanonical:
        failures.append(f"class sum {total} != -K = {model.anticanonical}")
    if config.degree_sum() != model.degree:
        failures.append(f"sum a_i (-K).C_i = {config.degree_sum()} != degree {model.degree}")
    for c in config.components():
        if not 0 <= c.coefficient <= MAX_COEFFICIENT:
            failures.append(f"component {c.name}: coefficient {c.coefficient} outside 0..{MAX_COEFFICIENT}")
    g = config.support_graph()
    if g.number_of_nodes() and not nx.is_connected(g):
        failures.append(f"support is disconnected ({nx.number_connected_components(g)} components)")
    return failures


# ------------------------------------------------------------------
# Decomposition
# ------------------------------------------------------------------


def _metric(n: int) -> np.ndarray:
    return np.diag(np.array([1] + [-1] * n, dtype=np.int64))


@lru_cache(maxsize=128)
def _root_solver(model: SurfaceModel) -> tuple[np.ndarray, np.ndarray, int]:
    """Root class matrix, adjugate and determinant of the root Gram matrix."""
    roots = model.roots
    k = len(roots)
    classes = np.array([r.divisor_class.to_array() for r in roots], dtype=np.int64).reshape(k, model.n + 1)
    if k == 0:
        return classes, np.zeros((0, 0), dtype=np.int64), 1
    gram = sympy.Matrix(model.gram[:k, :k].tolist())
    det = int(gram.det())
    if det == 0:
        raise ValueError(f"surface {model.id or '?'}: root Gram matrix is singular")
    adj = np.array(gram.adjugate().tolist(), dtype=np.int64)
    return classes, adj, det


def _solve_roots(model: SurfaceModel, residual: np.ndarray, max_coeff: int) -> Optional[np.ndarray]:
    """Nonnegative root coefficients summing to *residual*, if any."""
    classes, adj, det = _root_solver(model)
    if classes.shape[0] == 0:
        return np.zeros(0, dtype=np.int64) if not residual.any() else None
    rhs = classes @ _metric(model.n) @ residual
    scaled = adj @ rhs
    if (scaled % det).any():
        return None
    coeffs = scaled // det
    if (coeffs < 0).any() or (coeffs > max_coeff).any():
        return None
    if not np.array_equal(coeffs @ classes, residual):
        return None
    return coeffs


def _multisets(
    vectors: np.ndarray,
    start: int,
    remaining: int,
    residual: np.ndarray,
    counts: list[int],
    max_coeff: int,
) -> Iterator[tuple[list[int], np.ndarray]]:
    if remaining == 0:
        yield counts, residual
        return
    for i in range(start, len(vectors)):
        if counts[i] >= max_coeff:
            continue
        nxt = residual - vectors[i]
        # the remaining support has nonnegative line degree
        if nxt[0] < 0:
            continue
        counts[i] += 1
        yield from _multisets(vectors, i, remaining - 1, nxt, counts, max_coeff)
        counts[i] -= 1


def decompose(
    model: SurfaceModel,
    target: DivisorClass,
    max_coeff: int = MAX_COEFFICIENT,
) -> list[dict[str, int]]:
    """All ways to write *target* as a nonnegative combination of listed curves.

    Parameters
    ----------
    model : SurfaceModel
    target : DivisorClass
    max_coeff : int
        Upper bound for every coefficient.

    Returns
    -------
    list of dict
        Curve name to positive coefficient, sorted by the coefficient
        vector in canonical curve order.
    """
    if target.n != model.n:
        raise ValueError(f"dimension mismatch: n={target.n} vs surface n={model.n}")
    budget = anticanonical_degree(target)
    if budget < 0 or target.d0 < 0:
        return []
    minus_one = model.minus_one_curves
    roots = model.roots
    vectors = np.array([c.divisor_class.to_array() for c in minus_one], dtype=np.int64).reshape(
        len(minus_one), model.n + 1
    )
    start = np.array(target.to_array(), dtype=np.int64)

    solutions: list[tuple[tuple[int, ...], dict[str, int]]] = []
    counts = [0] * len(minus_one)
    for chosen, residual in _multisets(vectors, 0, budget, start, counts, max_coeff):
        root_coeffs = _solve_roots(model, residual, max_coeff)
        if root_coeffs is None:
            continue
        coeffs = [int(a) for a in root_coeffs] + list(chosen)
        names = [c.name for c in roots] + [c.name for c in minus_one]
        solutions.append((tuple(coeffs), {n: a for n, a in zip(names, coeffs) if a}))
    solutions.sort(key=lambda s: s[0])
    logger.debug("decompose %s on %s: %d solutions", target, model.id or "surface", len(solutions))
    return [s for _, s in solutions]


def enumerate_anticanonical(model: SurfaceModel) -> list[DivisorConfig]:
    """Every config in ``|-K|`` supported on the negative curves, coefficients <= 6."""
    configs = [DivisorConfig(model, sol, label="enumerated") for sol in decompose(model, model.anticanonical)]
    if model.roots and not configs:
        logger.warning("surface %s has (-2)-curves but no anticanonical config", model.id or "?")
    return configs


def brute_force_solutions(
    model: SurfaceModel,
    target: Optional[DivisorClass] = None,
    max_coeff: int = MAX_COEFFICIENT,
) -> list[dict[str, int]]:
    """Exhaustive search over ``{0..max_coeff}**k`` for ``k`` listed curves.

    The last curves form a vectorized grid; the first ones are looped over.
    Prefixes whose ``(-K)``-degree already exceeds the target are skipped.
    """
    target = model.anticanonical if target is None else target
    curves = model.curves
    k = len(curves)
    classes = np.array([c.divisor_class.to_array() for c in curves], dtype=np.int64).reshape(k, model.n + 1)
    degrees = np.array([anticanonical_degree(c.divisor_class) for c in curves], dtype=np.int64)
    goal = np.array(target.to_array(), dtype=np.int64)
    budget = anticanonical_degree(target)
    if k == 0:
        return [{}] if target.is_zero() else []

    tail = min(k, _GRID_TAIL)
    head = k - tail
    grid = np.indices((max_coeff + 1,) * tail, dtype=np.int64).reshape(tail, -1).T
    tail_sums = grid @ classes[head:]

    found: list[tuple[int, ...]] = []
    for prefix in itertools.product(range(max_coeff + 1), repeat=head):
        p = np.array(prefix, dtype=np.int64)
        if head and int(p @ degrees[:head]) > budget:
            continue
        base = p @ classes[:head] if head else np.zeros(model.n + 1, dtype=np.int64)
        hits = np.nonzero((tail_sums + base == goal).all(axis=1))[0]
        for h in hits:
            found.append(tuple(prefix) + tuple(int(a) for a in grid[h]))
    found.sort()
    names = [c.name for c in curves]
    return [{n: a for n, a in zip(names, sol) if a} for sol in found]


def minus_one_decompositions(model: SurfaceModel) -> dict[DivisorClass, list[dict[str, int]]]:
    """Decompositions of every (-1)-class into one (-1)-curve plus (-2)-curves."""
    candidates, _ = enumerate_negative_candidates(model.n)
    return {v: decompose(model, v) for v in candidates}


# ------------------------------------------------------------------
# Configs from plane cubics
# ------------------------------------------------------------------


def adjunction_config(spec: PlaneSpec, cubic: Sequence[tuple[str, int]], *, id: str = "") -> DivisorConfig:
    """Pull back a plane cubic ``sum(a_h * C_h)`` to the blow-up of *spec*.

    The exceptional curve over ``p`` gets coefficient
    ``coeff(parent of p) + mult_p(C) - 1``, where ``mult_p(C)`` is the
    multiplicity of the cubic at ``p`` and the plane counts as coefficient 0.
    Strict transforms keep ``a_h``.

    Parameters
    ----------
    spec : PlaneSpec
    cubic : sequence of (curve id, coefficient)
        Plane curves of *spec* (declared, or implied by incidences).

    Raises
    ------
    ValueError
        If the cubic does not have degree 3, a curve is unknown, or a
        coefficient comes out negative.
    """
    by_id = {c.id: c for c in plane_curves(spec)}
    parts = []
    for curve_id, a in cubic:
        if curve_id not in by_id:
            raise ValueError(f"unknown plane curve {curve_id!r}")
        if a < 1:
            raise ValueError(f"curve {curve_id}: coefficient must be positive, got {a}")
        parts.append((by_id[curve_id], a))
    degree = sum(c.degree * a for c, a in parts)
    if degree != 3:
        raise ValueError(f"cubic has degree {degree}, expected 3")

    model = build_from_plane_spec(spec, id=id)
    coeffs: dict[str, int] = {}
    for p in spec.points:
        mu = sum(a * c.multiplicity(p.id) for c, a in parts)
        base = coeffs[p.parent] if p.infinitely_near else 0
        coeffs[p.id] = base + mu - 1
        if coeffs[p.id] < 0:
            raise ValueError(f"exceptional curve over {p.id}: negative coefficient {coeffs[p.id]}")

    mult: dict[str, int] = {}
    extras: list[ExtraComponent] = []

    def add(cls: DivisorClass, coefficient: int, fallback: str) -> None:
        if coefficient == 0:
            return
        listed = model.find_class(cls)
        if listed is not None:
            mult[listed.name] = mult.get(listed.name, 0) + coefficient
        else:
            extras.append(ExtraComponent(fallback, cls, self_intersection(cls), coefficient))

    for p in spec.points:
        add(spec.exceptional_class(p.id), coeffs[p.id], f"E_{p.id}")
    for c, a in parts:
        add(spec.curve_class(c), a, c.id)

    config = DivisorConfig(model, mult, tuple(extras), label="adjunction")
    if config.class_sum() != model.anticanonical:
        raise ValueError(f"pullback class {config.class_sum()} is not -K = {model.anticanonical}")
    return config


# ------------------------------------------------------------------
# Reduction onto negative curves
# ------------------------------------------------------------------


def reduce_to_negative_support(config: DivisorConfig) -> DivisorConfig:
    """Rewrite every extra component onto (-1)- and (-2)-curves.

    An extra ``C`` with coefficient ``m`` is replaced by ``m*(L + R)`` for
    a (-1)-curve ``L`` with ``L.C = 0`` and a decomposition ``R`` of
    ``C - L``.  Each step lowers the self-intersection of the rewritten
    class by one, and no coefficient decreases.

    Raises
    ------
    ReductionBlockedError
        If no (-1)-curve qualifies for some extra.
    """
    if not config.extras:
        return config
    model = config.surface
    mult = dict(config.mult)
    for extra in config.extras:
        for line in model.minus_one_curves:
            if pairing(line.divisor_class, extra.divisor_class) != 0:
                continue
            rest = extra.divisor_class - line.divisor_class
            if self_intersection(rest) > self_intersection(extra.divisor_class) - 1:
                raise ValueError(f"reduction of {extra.name} along {line.name} does not lower C^2")
            decompositions = decompose(model, rest)
            if not decompositions:
                continue
            replacement = dict(decompositions[0])
            replacement[line.name] = replacement.get(line.name, 0) + 1
            for name, a in replacement.items():
                mult[name] = mult.get(name, 0) + a * extra.coefficient
            logger.debug("reduced %s via %s: %s", extra.name, line.name, replacement)
            break
        else:
            raise ReductionBlockedError(
                f"reduction blocked: no (-1)-curve L with L.C = 0 and C - L effective for {extra.name}"
            )
    return DivisorConfig(model, mult, label=config.label or "reduced")


# ------------------------------------------------------------------
# Triple-point configurations
# ------------------------------------------------------------------


def _triple(model: SurfaceModel, names: Sequence[str], x_class: DivisorClass, label: str) -> DivisorConfig:
    mult = {n: 1 for n in names}
    extras: tuple[ExtraComponent, ...] = ()
    listed = model.find_class(x_class)
    if listed is not None:
        mult[listed.name] = mult.get(listed.name, 0) + 1
        x_name = listed.name
    else:
        x_name = str(x_class)
        extras = (ExtraComponent(x_name, x_class, self_intersection(x_class), 1),)
    point = Cluster.transverse([Branch(n, 1) for n in (*names, x_name)], label=f"{label}:q")
    return DivisorConfig(model, mult, extras, (point,), label)


def _tangent_member(model: SurfaceModel) -> Optional[DivisorConfig]:
    """``C + F`` with ``F`` in the pencil ``|-K - C|`` touching the (-2)-curve ``C``.

    ``F`` is a 0-class with ``F.C = 2``; the pencil restricts to a double
    cover of ``C``, so some member is tangent to it.
    """
    for c in model.roots:
        f = model.anticanonical - c.divisor_class
        if self_intersection(f) != 0 or pairing(f, c.divisor_class) != 2:
            continue
        if any(pairing(f, other.divisor_class) < 0 for other in model.curves if other is not c):
            continue
        name = str(f)
        point = Cluster.tangent(Branch(c.name, 1), Branch(name, 1), 2, label="tangent-point:q")
        return DivisorConfig(model, {c.name: 1}, (ExtraComponent(name, f, 0, 1),), (point,), "tangent-point")
    return None


def special_configs(model: SurfaceModel) -> list[DivisorConfig]:
    """Reduced anticanonical divisors with an ordinary triple point.

    1. Singular set exactly A1: the (-2)-curve ``C``, a (-1)-curve ``E``
       with ``E.C = 1`` and ``X = -K - C - E``.
    2. Singular set exactly A2: both (-2)-curves and ``X = -K - C1 - C2``.
    3. Degree 2, at least two singular points, all A1 or A2: a (-2)-curve
       ``C`` with two (-1)-curves ``E``, ``E' = -K - C - E``; or an adjacent
       pair of (-2)-curves with the 0-class ``F = -K - C - C'``.  When the
       lattice admits neither, a member of ``|-K - C|`` tangent to ``C``.
    """
    sigma = model.singularity
    kinds = set(sigma.components)
    anti = model.anticanonical
    roots = model.roots
    configs: list[DivisorConfig] = []
    if sigma.components == ("A1",):
        c = roots[0]
        for e in model.minus_one_curves:
            if pairing(e.divisor_class, c.divisor_class) == 1:
                configs.append(_triple(model, (c.name, e.name), anti - c.divisor_class - e.divisor_class,
                                       "triple-point(1)"))
                break
    elif sigma.components == ("A2",):
        c1, c2 = roots
        configs.append(_triple(model, (c1.name, c2.name), anti - c1.divisor_class - c2.divisor_class,
                               "triple-point(2)"))
    elif model.degree == 2 and len(sigma.components) >= 2 and kinds <= {"A1", "A2"}:
        listed = {c.divisor_class for c in model.minus_one_curves}
        for c, e in itertools.product(roots, model.minus_one_curves):
            if pairing(c.divisor_class, e.divisor_class) != 1:
                continue
            other = anti - c.divisor_class - e.divisor_class
            if other in listed and other != e.divisor_class:
                configs.append(_triple(model, (c.name, e.name), other, "triple-point(3a)"))
                break
        for c, c2 in itertools.combinations(roots, 2):
            if pairing(c.divisor_class, c2.divisor_class) != 1:
                continue
            f = anti - c.divisor_class - c2.divisor_class
            if all(pairing(f, r.divisor_class) >= 0 for r in roots if r not in (c, c2)):
                configs.append(_triple(model, (c.name, c2.name), f, "triple-point(3b)"))
                break
        if not configs:
            logger.info("no triple-point configuration on %s (%s); using a tangent member", model.id or "surface", sigma)
            tangent = _tangent_member(model)
            if tangent is not None:
                configs.append(tangent)
    return configs
