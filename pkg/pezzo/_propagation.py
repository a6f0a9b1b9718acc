"""Dual-graph propagation from degree 1 to degree 7.

Two rewriting rules relate anticanonical dual graphs on surfaces of
adjacent degrees (contracting a (-1)-curve that is not in the support):

* P-1: a weight-1 vertex raises its self-intersection by one;
* P-2: a (-1)-vertex of weight ``b`` whose only neighbour has weight
  ``b + 1`` disappears, and the neighbour's self-intersection goes up by one.

Both raise the graph degree ``sum(weight * (self_int + 2))`` by one.
:func:`propagate_tables` applies them degree by degree from the degree-1
seeds and discards graphs that violate the constraints of the stratum.

Some constraints say a graph must be *obtained by blow-ups* from one of a
few displayed graphs.  Membership in that blow-up closure is decided by
contracting back: P-1, P-2 and the contraction of a (-1)-vertex sitting
between two curves are the inverses of the three blow-up moves.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence

import networkx as nx

from pezzo import _tables
from pezzo._graph import CanonicalForm, DualGraph, graph_canonical, graph_degree
from pezzo._surface import SingularityType, identify_component, is_admissible

logger = logging.getLogger(__name__)

STRATA = (6, 4, 3, 2)
MAX_DEGREE = 7

# Self-intersections beyond this do not occur in the tables.
_MAX_SELF_INT = 2


def _fresh(g: DualGraph, stem: str = "n") -> str:
    i = len(g)
    while f"{stem}{i}" in g.graph:
        i += 1
    return f"{stem}{i}"


# ------------------------------------------------------------------
# Rules
# ------------------------------------------------------------------


def p1_step(g: DualGraph) -> list[DualGraph]:
    out = []
    for v in g.vertices:
        if g.weight(v) == 1 and g.self_int(v) + 1 <= _MAX_SELF_INT:
            h = g.copy()
            h.graph.nodes[v]["self_int"] += 1
            out.append(h)
    return out


def p2_step(g: DualGraph) -> list[DualGraph]:
    out = []
    for w in g.vertices:
        if g.self_int(w) != -1:
            continue
        nbrs = g.neighbors(w)
        if len(nbrs) != 1 or g.graph.has_edge(w, w):
            continue
        v = nbrs[0]
        if g.weight(v) != g.weight(w) + 1 or g.graph.edges[w, v]["intersection"] != 1:
            continue
        h = g.copy()
        h.graph.remove_node(w)
        h.graph.nodes[v]["self_int"] += 1
        out.append(h)
    return out


def blow_up_moves(g: DualGraph, max_weight: int) -> list[DualGraph]:
    """Graphs one degree lower, obtained by blowing up one point.

    A general point of a curve ``v`` of weight ``c`` and self-intersection
    ``>= -1`` gives ``v`` one less self-intersection and, when ``c >= 2``,
    a new (-1)-vertex of weight ``c - 1`` attached to ``v``.  A transverse
    intersection point of ``u`` and ``v`` gives a new (-1)-vertex of
    weight ``w_u + w_v - 1`` between them.
    """
    out = []
    for v in g.vertices:
        if g.self_int(v) < -1:
            continue
        h = g.copy()
        h.graph.nodes[v]["self_int"] -= 1
        c = g.weight(v)
        if c >= 2:
            n = _fresh(h)
            h.graph.add_node(n, weight=c - 1, self_int=-1)
            h.graph.add_edge(v, n, intersection=1)
        out.append(h)
    for u, v, t in g.edges():
        if u == v or t != 1 or g.self_int(u) < -1 or g.self_int(v) < -1:
            continue
        weight = g.weight(u) + g.weight(v) - 1
        if weight > max_weight:
            continue
        h = g.copy()
        h.graph.remove_edge(u, v)
        n = _fresh(h)
        h.graph.add_node(n, weight=weight, self_int=-1)
        h.graph.add_edge(u, n, intersection=1)
        h.graph.add_edge(n, v, intersection=1)
        h.graph.nodes[u]["self_int"] -= 1
        h.graph.nodes[v]["self_int"] -= 1
        out.append(h)
    return out


def _contractions(g: DualGraph) -> list[DualGraph]:
    out = []
    for w in g.vertices:
        if g.self_int(w) != -1 or g.graph.has_edge(w, w):
            continue
        nbrs = g.neighbors(w)
        if len(nbrs) != 2:
            continue
        u, v = nbrs
        if g.graph.has_edge(u, v):
            continue
        if any(g.graph.edges[w, x]["intersection"] != 1 for x in nbrs):
            continue
        if g.weight(u) + g.weight(v) - 1 != g.weight(w):
            continue
        h = g.copy()
        h.graph.remove_node(w)
        h.graph.add_edge(u, v, intersection=1)
        h.graph.nodes[u]["self_int"] += 1
        h.graph.nodes[v]["self_int"] += 1
        out.append(h)
    return out


def blow_down_moves(g: DualGraph) -> list[DualGraph]:
    """Inverses of :func:`blow_up_moves`: P-1, P-2 and node contraction."""
    return p1_step(g) + p2_step(g) + _contractions(g)


class Ancestry:
    """Blow-up closure of a set of graphs.

    :meth:`contains` tells whether a graph is obtained from one of the
    seeds by a sequence of blow-ups (zero blow-ups included).
    """

    def __init__(self, seeds: Iterable[DualGraph]) -> None:
        self._targets: dict[int, set[CanonicalForm]] = {}
        for s in seeds:
            self._targets.setdefault(graph_degree(s), set()).add(graph_canonical(s))
        self._top = max(self._targets, default=0)
        self._memo: dict[CanonicalForm, bool] = {}

    @classmethod
    def from_texts(cls, texts: Iterable[str]) -> Ancestry:
        return cls(DualGraph.from_text(t) for t in texts)

    def contains(self, g: DualGraph) -> bool:
        return self._reach(g, graph_canonical(g))

    def _reach(self, g: DualGraph, form: CanonicalForm) -> bool:
        if form in self._memo:
            return self._memo[form]
        degree = graph_degree(g)
        if form in self._targets.get(degree, ()):
            found = True
        elif degree >= self._top:
            found = False
        else:
            found = any(self._reach(h, graph_canonical(h)) for h in blow_down_moves(g))
        self._memo[form] = found
        return found


@lru_cache(maxsize=None)
def _ancestry(name: str) -> Ancestry:
    texts = {
        "one-curve": _tables.ONE_CURVE_SEEDS,
        "long-chain": _tables.LONG_CHAIN_SEEDS,
        "unique-top": _tables.UNIQUE_TOP_SEEDS,
        "several-zero": _tables.SEVERAL_ZERO_SEEDS,
        "zero-leaf": _tables.ZERO_LEAF_SEEDS,
    }[name]
    return Ancestry.from_texts(texts)


# ------------------------------------------------------------------
# Filters
# ------------------------------------------------------------------


def root_type(g: DualGraph) -> Optional[SingularityType]:
    """Dynkin type of the (-2)-vertices, or ``None`` if they are not ADE."""
    roots = [v for v in g.vertices if g.self_int(v) == -2]
    sub = g.graph.subgraph(roots)
    try:
        names = tuple(identify_component(sub.subgraph(c)) for c in nx.connected_components(sub))
    except ValueError:
        return None
    return SingularityType(names)


def _longest_path(sub: nx.Graph) -> int:
    """Number of vertices on a longest simple path."""
    best = 0

    def walk(v: str, seen: set[str]) -> None:
        nonlocal best
        best = max(best, len(seen))
        for u in sub.neighbors(v):
            if u not in seen:
                seen.add(u)
                walk(u, seen)
                seen.remove(u)

    for v in sub.nodes:
        walk(v, {v})
    return best


def _chain_length(g: DualGraph) -> int:
    """Longest path through weight-2 vertices of negative self-intersection."""
    keep = [v for v in g.vertices if g.weight(v) == 2 and g.self_int(v) < 0]
    return _longest_path(g.graph.subgraph(keep))


def _admissible(g: DualGraph, degree: int) -> bool:
    sigma = root_type(g)
    return sigma is not None and is_admissible(degree, sigma)


def _weight4_ok(g: DualGraph, degree: int) -> bool:
    nonneg = [v for v in g.vertices if g.self_int(v) >= 0]
    return len(nonneg) == 0 or (len(nonneg) == 1 and g.self_int(nonneg[0]) == 0)


def _weight3_ok(g: DualGraph, degree: int) -> bool:
    zero = [v for v in g.vertices if g.self_int(v) == 0]
    if len(zero) >= 2:
        return False
    if any(g.self_int(v) == 1 for v in g.vertices):
        return _ancestry("one-curve").contains(g)
    return True


def _weight2_ok(g: DualGraph, degree: int) -> bool:
    selfs = {v: g.self_int(v) for v in g.vertices}
    positive = [v for v, s in selfs.items() if s in (1, 2)]
    if positive and sum(1 for s in selfs.values() if s >= 0) > 1:
        return False

    chain = _chain_length(g)
    if chain >= 4 and not _ancestry("long-chain").contains(g):
        return False

    top = max(selfs.values())
    holders = [v for v, s in selfs.items() if s == top]
    if top in (0, 1) and len(holders) == 1 and g.weight(holders[0]) == 1:
        if chain >= (3 if top == 0 else 2) and not _ancestry("unique-top").contains(g):
            return False

    light_zero = [v for v, s in selfs.items() if s == 0 and g.weight(v) == 1]
    two_curves = [v for v, s in selfs.items() if s == 2]
    if (top == 0 and len(light_zero) in (2, 3)) or (top == 2 and len(two_curves) == 1):
        if not _ancestry("several-zero").contains(g):
            return False

    heavy_zero_leaf = [
        v for v, s in selfs.items() if s == 0 and g.weight(v) == 2 and len(g.neighbors(v)) == 1
    ]
    if top == 0 and heavy_zero_leaf and not _ancestry("zero-leaf").contains(g):
        return False

    if degree == 4 and graph_canonical(g) == _excluded_degree4():
        return False
    return True


@lru_cache(maxsize=1)
def _excluded_degree4() -> CanonicalForm:
    return graph_canonical(DualGraph.from_text(_tables.EXCLUDED_DEGREE4))


_STRATUM_FILTERS: dict[int, Callable[[DualGraph, int], bool]] = {
    6: lambda g, d: True,
    4: _weight4_ok,
    3: _weight3_ok,
    2: _weight2_ok,
}


def keeps(g: DualGraph, degree: int, stratum: int) -> bool:
    """Whether *g* survives the filters of *stratum* at *degree*."""
    if stratum not in _STRATUM_FILTERS:
        raise ValueError(f"unknown stratum {stratum!r}: expected one of {', '.join(map(str, STRATA))}")
    return _admissible(g, degree) and _STRATUM_FILTERS[stratum](g, degree)


# ------------------------------------------------------------------
# Propagation
# ------------------------------------------------------------------


def propagate_tables(
    seed_degree1: Sequence[DualGraph],
    max_weight_stratum: int,
    max_degree: int = MAX_DEGREE,
) -> dict[int, list[DualGraph]]:
    """Candidate dual graphs per degree, starting from degree-1 seeds.

    Parameters
    ----------
    seed_degree1 : sequence of DualGraph
        Graphs of degree 1 (checked).
    max_weight_stratum : int
        One of 6, 4, 3, 2.
    max_degree : int
        Last degree to generate.

    Returns
    -------
    dict
        Degree to graphs, deduplicated up to isomorphism and sorted by
        canonical form.

    Raises
    ------
    ValueError
        If the stratum is unknown or a seed does not have degree 1.
    """
    if max_weight_stratum not in STRATA:
        raise ValueError(f"unknown stratum {max_weight_stratum!r}: expected one of {', '.join(map(str, STRATA))}")
    current: dict[CanonicalForm, DualGraph] = {}
    for s in seed_degree1:
        if graph_degree(s) != 1:
            raise ValueError(f"seed has degree {graph_degree(s)}, expected 1")
        current.setdefault(graph_canonical(s), s)
    tables = {1: [current[k] for k in sorted(current)]}

    for degree in range(2, max_degree + 1):
        kept: dict[CanonicalForm, DualGraph] = {}
        rejected: set[CanonicalForm] = set()
        for g in current.values():
            for h in p1_step(g) + p2_step(g):
                form = graph_canonical(h)
                if form in kept or form in rejected:
                    continue
                if keeps(h, degree, max_weight_stratum):
                    kept[form] = h
                else:
                    rejected.add(form)
        logger.debug(
            "stratum %d degree %d: %d kept, %d rejected", max_weight_stratum, degree, len(kept), len(rejected)
        )
        tables[degree] = [kept[k] for k in sorted(kept)]
        current = kept
    return tables


def table_forms(tables: dict[int, list[DualGraph]]) -> dict[int, set[CanonicalForm]]:
    return {d: {graph_canonical(g) for g in gs} for d, gs in tables.items()}


@lru_cache(maxsize=None)
def stratum_forms(stratum: int) -> dict[int, frozenset]:
    """Canonical forms of :func:`propagate_tables` on the built-in seeds."""
    tables = propagate_tables(_tables.seeds(stratum), stratum)
    return {d: frozenset(forms) for d, forms in table_forms(tables).items()}


def stratum_of(g: DualGraph) -> int:
    """The stratum of a graph: its largest weight."""
    return g.max_weight
