"""Global log canonical thresholds of anticanonical divisors.

:func:`config_lct` combines the per-component constraints ``1/a`` with the
exceptional constraints of every point where components meet (computed by
:func:`pezzo._local.local_lct`).  :func:`surface_lct1` minimizes it over the
anticanonical divisors through the singular locus.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Optional

import networkx as nx

from pezzo._anticanon import DivisorConfig, enumerate_anticanonical, special_configs
from pezzo._lattice import pairing
from pezzo._local import Branch, Cluster, local_lct
from pezzo._surface import SurfaceModel

logger = logging.getLogger(__name__)


class Mode(str, Enum):
    """How meeting points are synthesized when a config carries none."""

    DEFAULT_SNC = "default-snc"
    PESSIMISTIC = "pessimistic"


def format_fraction(q: Fraction) -> str:
    """``"p/q"`` in lowest terms, or ``"p"`` for integers."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Constraint:
    """One term of the minimum: a component ``1/a`` or a point ``ell/m``."""

    kind: str
    source: str
    value: Fraction
    detail: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "source": self.source, "value": format_fraction(self.value), "detail": self.detail}


@dataclass
class LctReport:
    """Threshold of one config, or the lct_1 of a surface.

    ``value`` is capped at 1; ``uncapped`` keeps the plain minimum.
    """

    value: Fraction
    uncapped: Fraction
    witness: Constraint
    breakdown: list[Constraint] = field(default_factory=list)
    config: str = ""
    surface: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "surface": self.surface,
            "config": self.config,
            "value": format_fraction(self.value),
            "uncapped": format_fraction(self.uncapped),
            "witness": self.witness.to_dict(),
            "breakdown": [c.to_dict() for c in self.breakdown],
        }


# ------------------------------------------------------------------
# Meeting points
# ------------------------------------------------------------------


def _pair(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


def _intersections(config: DivisorConfig) -> dict[tuple[str, str], int]:
    comps = config.components()
    out: dict[tuple[str, str], int] = {}
    for a, b in itertools.combinations(comps, 2):
        t = pairing(a.divisor_class, b.divisor_class)
        if t > 0:
            out[_pair(a.name, b.name)] = t
    return out


def _consume(remaining: dict[tuple[str, str], int], cluster: Cluster, config: DivisorConfig) -> None:
    known = {c.name for c in config.components()}
    for i, j in itertools.combinations(range(len(cluster.items)), 2):
        a, b = cluster.items[i], cluster.items[j]
        if not (isinstance(a, Branch) and isinstance(b, Branch)):
            continue
        for name in (a.component, b.component):
            if name not in known:
                raise ValueError(f"point {cluster.label}: {name} is not a component of the config")
        key = _pair(a.component, b.component)
        left = remaining.get(key, 0) - cluster.contact(i, j)
        if left < 0:
            raise ValueError(f"point {cluster.label}: contact of {key[0]} and {key[1]} exceeds their intersection")
        remaining[key] = left


def _branch(config: DivisorConfig, name: str) -> Branch:
    return Branch(name, config.coefficient(name))


def _node_points(config: DivisorConfig, remaining: dict[tuple[str, str], int]) -> list[Cluster]:
    points = []
    for (a, b), t in sorted(remaining.items()):
        for k in range(t):
            points.append(Cluster.transverse([_branch(config, a), _branch(config, b)], label=f"{a}*{b}#{k + 1}"))
    return points


def _pessimistic_points(config: DivisorConfig, remaining: dict[tuple[str, str], int]) -> list[Cluster]:
    """Concurrent points first, then tangencies, then nodes."""
    points: list[Cluster] = []
    while True:
        g = nx.Graph()
        g.add_edges_from(k for k, t in remaining.items() if t > 0)
        cliques = [sorted(c) for c in nx.find_cliques(g) if len(c) >= 3]
        if not cliques:
            break
        clique = min(cliques, key=lambda c: (-len(c), c))
        points.append(Cluster.transverse([_branch(config, n) for n in clique], label="+".join(clique)))
        for a, b in itertools.combinations(clique, 2):
            remaining[_pair(a, b)] -= 1
    for (a, b), t in sorted(remaining.items()):
        if t >= 2:
            points.append(Cluster.tangent(_branch(config, a), _branch(config, b), t, label=f"{a}~{b}"))
            remaining[(a, b)] = 0
    return points + _node_points(config, remaining)


def config_points(config: DivisorConfig, mode: Mode = Mode.DEFAULT_SNC) -> list[Cluster]:
    """Explicit points of *config* plus synthesized points for the remaining intersections.

    Raises
    ------
    ValueError
        If a point refers to a non-component or uses more contact than
        the intersection number allows, or if pessimistic mode meets an
        extra component without explicit points.
    """
    mode = Mode(mode)
    if mode is Mode.PESSIMISTIC and config.extras and not config.points:
        raise ValueError(f"config {config.label or '?'}: pessimistic mode needs explicit points for extra components")
    remaining = _intersections(config)
    for cluster in config.points:
        _consume(remaining, cluster, config)
    remaining = {k: t for k, t in remaining.items() if t > 0}
    if mode is Mode.PESSIMISTIC:
        synthesized = _pessimistic_points(config, remaining)
    else:
        synthesized = _node_points(config, remaining)
    return list(config.points) + synthesized


# ------------------------------------------------------------------
# Thresholds
# ------------------------------------------------------------------


def config_lct(config: DivisorConfig, mode: Mode = Mode.DEFAULT_SNC) -> LctReport:
    """Log canonical threshold of an anticanonical config.

    Parameters
    ----------
    config : DivisorConfig
    mode : Mode
        ``default-snc`` makes every remaining intersection an ordinary
        node; ``pessimistic`` makes them as concurrent and tangent as the
        intersection numbers allow.

    Returns
    -------
    LctReport
        ``value = min(1, 1/a_i, local thresholds)``; the witness is the
        first minimal constraint, components before points.
    """
    breakdown = [
        Constraint("component", c.name, Fraction(1, c.coefficient), f"a={c.coefficient}")
        for c in config.components()
        if c.coefficient > 0
    ]
    if not breakdown:
        raise ValueError("config has no components")
    for cluster in config_points(config, mode):
        value, exc = local_lct(cluster)
        if value is None or exc is None:
            continue
        breakdown.append(Constraint("point", exc.name, value, f"m={exc.m} ell={exc.ell}"))

    witness = min(breakdown, key=lambda c: c.value)
    uncapped = witness.value
    return LctReport(
        value=min(uncapped, Fraction(1)),
        uncapped=uncapped,
        witness=witness,
        breakdown=breakdown,
        config=config.label,
        surface=config.surface.id,
    )


def surface_configs(model: SurfaceModel) -> list[DivisorConfig]:
    """Configs through a (-2)-curve: enumerated ones, then the triple-point and tangent ones."""
    return [c for c in enumerate_anticanonical(model) + special_configs(model) if c.has_root]


def surface_lct1(model: SurfaceModel, mode: Mode = Mode.DEFAULT_SNC) -> LctReport:
    """``lct_1`` of the del Pezzo surface whose minimal resolution is *model*.

    Raises
    ------
    ValueError
        If the surface is smooth, its degree is outside 2..7, or it has
        no anticanonical config to evaluate.
    """
    if not model.roots:
        raise ValueError(f"smooth surface: no (-2)-curves on {model.id or 'surface'}, lct_1 is not computed here")
    if not 2 <= model.degree <= 7:
        raise ValueError(f"degree must be in 2..7, got {model.degree}")
    best: Optional[LctReport] = None
    count = 0
    for config in surface_configs(model):
        report = config_lct(config, mode)
        count += 1
        if best is None or report.uncapped < best.uncapped:
            best = report
    if best is None:
        raise ValueError(f"no anticanonical config on {model.id or 'surface'}")
    logger.debug("lct_1 of %s over %d configs: %s (%s)", model.id, count, format_fraction(best.value), best.config)
    return best
