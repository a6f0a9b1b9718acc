"""Dual graphs of anticanonical divisors.

A :class:`DualGraph` has one vertex per component, carrying the
component's multiplicity (``weight``) and self-intersection, and one edge
per intersecting pair, carrying the intersection number.  Graphs are small
(rarely more than a dozen vertices), so canonical forms are computed by
color refinement followed by brute force inside each color class.

Graphs can be written as text, e.g. ``"a:2/-2 b:4/-1 c:3/-1; a-b-c"``:
vertices as ``name:weight/self_int`` and edges as dash-separated paths.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Iterable, Optional

import networkx as nx
from networkx.algorithms import isomorphism

from pezzo._lattice import pairing

if TYPE_CHECKING:
    from pezzo._anticanon import DivisorConfig

CanonicalForm = tuple[tuple[tuple[int, int, int], ...], tuple[tuple[int, int, int], ...]]

_VERTEX = re.compile(r"^([A-Za-z_][\w']*):(\d+)/(-?\d+)$")
_MAX_ORDERINGS = 500_000


@dataclass
class DualGraph:
    """Weighted graph wrapper; node attributes ``weight`` and ``self_int``,
    edge attribute ``intersection``."""

    graph: nx.Graph

    @classmethod
    def build(
        cls,
        vertices: Iterable[tuple[str, int, int]],
        edges: Iterable[tuple[str, str, int]] = (),
    ) -> DualGraph:
        g = nx.Graph()
        for name, weight, self_int in vertices:
            if weight < 1:
                raise ValueError(f"vertex {name}: weight must be positive, got {weight}")
            g.add_node(name, weight=weight, self_int=self_int)
        for u, v, t in edges:
            if u not in g or v not in g:
                raise ValueError(f"edge {u}-{v}: unknown vertex")
            if t < 1:
                raise ValueError(f"edge {u}-{v}: intersection must be positive, got {t}")
            g.add_edge(u, v, intersection=t)
        return cls(g)

    @classmethod
    def from_text(cls, text: str) -> DualGraph:
        """Parse ``"a:w/s b:w/s; a-b*2-c"``; ``*t`` sets the intersection of the edge it ends."""
        vertex_part, _, edge_part = text.partition(";")
        vertices = []
        for token in vertex_part.split():
            match = _VERTEX.match(token)
            if match is None:
                raise ValueError(f"Invalid graph text: bad vertex {token!r}")
            vertices.append((match.group(1), int(match.group(2)), int(match.group(3))))
        counts: dict[tuple[str, str], int] = {}
        for path in edge_part.replace(",", " ").split():
            names = path.split("-")
            if len(names) < 2 or "*" in names[0]:
                raise ValueError(f"Invalid graph text: bad edge path {path!r}")
            prev = names[0]
            for token in names[1:]:
                name, star, times = token.partition("*")
                if star and not times.isdigit():
                    raise ValueError(f"Invalid graph text: bad edge path {path!r}")
                key = (prev, name) if prev <= name else (name, prev)
                counts[key] = counts.get(key, 0) + (int(times) if star else 1)
                prev = name
        return cls.build(vertices, [(a, b, t) for (a, b), t in counts.items()])

    def to_text(self) -> str:
        names = {v: f"v{i}" for i, v in enumerate(self.graph.nodes)}
        verts = " ".join(f"{names[v]}:{self.weight(v)}/{self.self_int(v)}" for v in self.graph.nodes)
        edges = [f"{names[u]}-{names[v]}" + (f"*{t}" if t > 1 else "") for u, v, t in self.edges()]
        return f"{verts}; {' '.join(edges)}" if edges else verts

    # -- access ---------------------------------------------------------

    @property
    def vertices(self) -> list[str]:
        return list(self.graph.nodes)

    def weight(self, v: str) -> int:
        return self.graph.nodes[v]["weight"]

    def self_int(self, v: str) -> int:
        return self.graph.nodes[v]["self_int"]

    def edges(self) -> list[tuple[str, str, int]]:
        return [(u, v, d["intersection"]) for u, v, d in self.graph.edges(data=True)]

    def neighbors(self, v: str) -> list[str]:
        return [u for u in self.graph.neighbors(v) if u != v]

    @property
    def max_weight(self) -> int:
        return max((self.weight(v) for v in self.graph.nodes), default=0)

    def copy(self) -> DualGraph:
        return DualGraph(self.graph.copy())

    def __len__(self) -> int:
        return self.graph.number_of_nodes()

    def to_dict(self) -> dict[str, Any]:
        return {
            "vertices": [
                {"name": v, "weight": self.weight(v), "self_int": self.self_int(v)} for v in self.graph.nodes
            ],
            "edges": [{"u": u, "v": v, "intersection": t} for u, v, t in self.edges()],
        }

    def to_dot(self, name: str = "dual") -> str:
        lines = [f'graph "{name}" {{']
        for v in self.graph.nodes:
            lines.append(f'  "{v}" [label="{v} w={self.weight(v)} s={self.self_int(v)}"];')
        for u, v, t in self.edges():
            attr = f' [label="{t}"]' if t != 1 else ""
            lines.append(f'  "{u}" -- "{v}"{attr};')
        lines.append("}")
        return "\n".join(lines) + "\n"


def dual_graph(config: DivisorConfig) -> DualGraph:
    """Dual graph of the components of *config* with positive coefficient."""
    comps = [c for c in config.components() if c.coefficient > 0]
    vertices = [(c.name, c.coefficient, c.self_int) for c in comps]
    edges = []
    for i, a in enumerate(comps):
        for b in comps[i + 1:]:
            t = pairing(a.divisor_class, b.divisor_class)
            if t > 0:
                edges.append((a.name, b.name, t))
    return DualGraph.build(vertices, edges)


def graph_degree(g: DualGraph) -> int:
    """``sum(weight * (self_int + 2))``: the degree of the surface carrying *g*.

    Each component is a smooth rational curve, so ``(-K).C = C^2 + 2``.
    """
    return sum(g.weight(v) * (g.self_int(v) + 2) for v in g.graph.nodes)


def is_balanced(g: DualGraph) -> bool:
    """Whether ``D.C = -K.C`` holds at every vertex of a loop-free graph."""
    for v in g.graph.nodes:
        total = g.weight(v) * g.self_int(v)
        for u in g.neighbors(v):
            total += g.weight(u) * g.graph.edges[u, v]["intersection"]
        if total != g.self_int(v) + 2:
            return False
    return True


# ------------------------------------------------------------------
# Canonical form and isomorphism
# ------------------------------------------------------------------


def _color(g: DualGraph, v: str) -> tuple[int, int, int]:
    loop = g.graph.edges[v, v]["intersection"] if g.graph.has_edge(v, v) else 0
    return (g.weight(v), g.self_int(v), loop)


def _ranks(signatures: dict[str, Any]) -> dict[str, int]:
    order = {sig: i for i, sig in enumerate(sorted(set(signatures.values())))}
    return {v: order[sig] for v, sig in signatures.items()}


def graph_canonical(g: DualGraph) -> CanonicalForm:
    """Canonical form: vertex labels and edge list under the minimal ordering.

    Vertices are ordered by refined color; inside a color class every
    permutation is tried and the lexicographically smallest edge list wins.
    """
    nodes = list(g.graph.nodes)
    colors = {v: _color(g, v) for v in nodes}
    rank = _ranks(colors)
    while True:
        signature = {
            v: (rank[v], tuple(sorted((rank[u], g.graph.edges[u, v]["intersection"]) for u in g.neighbors(v))))
            for v in nodes
        }
        refined = _ranks(signature)
        if len(set(refined.values())) == len(set(rank.values())):
            break
        rank = refined

    classes = [sorted((v for v in nodes if rank[v] == r), key=str) for r in sorted(set(rank.values()))]
    count = math.prod(math.factorial(len(c)) for c in classes)
    if count > _MAX_ORDERINGS:
        raise ValueError(f"graph too symmetric for brute-force canonical form ({count} orderings)")

    edges = g.edges()
    best: Optional[tuple[tuple[int, int, int], ...]] = None
    for blocks in itertools.product(*(itertools.permutations(c) for c in classes)):
        pos = {v: i for i, v in enumerate(itertools.chain.from_iterable(blocks))}
        encoded = tuple(sorted((min(pos[u], pos[v]), max(pos[u], pos[v]), t) for u, v, t in edges))
        if best is None or encoded < best:
            best = encoded
    labels = tuple(colors[v] for c in classes for v in c)
    return labels, best or ()


def graph_iso(g: DualGraph, h: DualGraph) -> bool:
    """Isomorphism preserving weights, self-intersections and intersection numbers."""
    return nx.is_isomorphic(
        g.graph,
        h.graph,
        node_match=isomorphism.categorical_node_match(["weight", "self_int"], [None, None]),
        edge_match=isomorphism.categorical_edge_match("intersection", 1),
    )
