"""Local log canonical thresholds at a point of a divisor.

A :class:`Cluster` describes the germ of a divisor at one point: smooth
branches with their coefficients, exceptional curves already present with
their pullback multiplicity ``m`` and log discrepancy ``ell``, and the
pairwise contact orders between all of them.  :func:`local_lct` resolves
the germ by blowing up until it is simple normal crossing; every
exceptional curve ``E`` created on the way gives the constraint
``ell_E / m_E``.

Branch constraints ``1/a`` are not produced here: a component passing
through several points would be counted once per point.  They are
collected per component by :func:`pezzo._lct.config_lct`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import networkx as nx

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Branch:
    """A smooth branch of component ``component`` with coefficient ``coefficient``."""

    component: str
    coefficient: int

    def __post_init__(self) -> None:
        if self.coefficient < 1:
            raise ValueError(f"branch {self.component}: coefficient must be positive, got {self.coefficient}")


@dataclass(frozen=True)
class ExceptionalItem:
    """An exceptional curve with multiplicity ``m`` in the pullback.

    ``ell - 1`` is its discrepancy, so its constraint is ``ell / m``.
    ``name`` records the blow-up trace, e.g. ``"p:E.1"``.
    """

    m: int
    ell: int
    name: str = "E"

    def __post_init__(self) -> None:
        if self.m < 1 or self.ell < 1:
            raise ValueError(f"exceptional {self.name}: m and ell must be positive, got ({self.m}, {self.ell})")

    @property
    def threshold(self) -> Fraction:
        return Fraction(self.ell, self.m)


Item = Union[Branch, ExceptionalItem]


@dataclass(frozen=True)
class Cluster:
    """Items meeting at one point and their contact orders.

    ``contacts[i][j]`` is the contact order of items ``i`` and ``j``
    (1 for transverse); the diagonal is ignored.
    """

    items: tuple[Item, ...]
    contacts: tuple[tuple[int, ...], ...] = field(default=())
    label: str = "p"

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", tuple(self.items))
        if not self.contacts:
            k = len(self.items)
            object.__setattr__(self, "contacts", tuple(tuple(1 for _ in range(k)) for _ in range(k)))
        else:
            object.__setattr__(self, "contacts", tuple(tuple(row) for row in self.contacts))

    @classmethod
    def transverse(cls, items: Sequence[Item], label: str = "p") -> Cluster:
        """All items pairwise transverse: an ordinary multiple point."""
        return cls(tuple(items), (), label)

    @classmethod
    def tangent(cls, first: Item, second: Item, contact: int, label: str = "p") -> Cluster:
        return cls((first, second), ((0, contact), (contact, 0)), label)

    @property
    def branches(self) -> list[Branch]:
        return [it for it in self.items if isinstance(it, Branch)]

    @property
    def components(self) -> list[str]:
        return [b.component for b in self.branches]

    def contact(self, i: int, j: int) -> int:
        return self.contacts[i][j]

    def validate(self) -> None:
        """Raise ``ValueError`` unless contacts are a symmetric, transitive-consistent table."""
        k = len(self.items)
        if len(self.contacts) != k or any(len(row) != k for row in self.contacts):
            raise ValueError(f"cluster {self.label}: contact table must be {k}x{k}")
        for i in range(k):
            for j in range(i + 1, k):
                if self.contacts[i][j] != self.contacts[j][i]:
                    raise ValueError(f"cluster {self.label}: contacts not symmetric at ({i}, {j})")
                if self.contacts[i][j] < 1:
                    raise ValueError(f"cluster {self.label}: contact order must be >= 1 at ({i}, {j})")
        for i in range(k):
            for j in range(k):
                for h in range(k):
                    if len({i, j, h}) < 3:
                        continue
                    if self.contacts[i][j] >= 2 and self.contacts[i][h] >= 2 and self.contacts[j][h] < 2:
                        raise ValueError(
                            f"cluster {self.label}: malformed contacts, items {j} and {h} are both "
                            f"tangent to {i} but not to each other"
                        )

    def canonical(self) -> Cluster:
        """Drop repeated listings of the same branch.

        Raises
        ------
        ValueError
            If one component is listed with two different coefficients.
        """
        keep: list[int] = []
        seen: dict[str, int] = {}
        for i, it in enumerate(self.items):
            if isinstance(it, Branch):
                if it.component in seen:
                    if seen[it.component] != it.coefficient:
                        raise ValueError(
                            f"cluster {self.label}: branch {it.component} listed with coefficients "
                            f"{seen[it.component]} and {it.coefficient}"
                        )
                    continue
                seen[it.component] = it.coefficient
            keep.append(i)
        if len(keep) == len(self.items):
            return self
        items = tuple(self.items[i] for i in keep)
        contacts = tuple(tuple(self.contacts[i][j] for j in keep) for i in keep)
        return Cluster(items, contacts, self.label)

    def scaled(self, k: int) -> Cluster:
        """The cluster of ``k*D``: branch coefficients and exceptional ``m`` times ``k``."""
        items: list[Item] = []
        for it in self.items:
            if isinstance(it, Branch):
                items.append(Branch(it.component, it.coefficient * k))
            else:
                items.append(ExceptionalItem(it.m * k, it.ell, it.name))
        return Cluster(tuple(items), self.contacts, self.label)

    def to_dict(self) -> dict:
        items = []
        for it in self.items:
            if isinstance(it, Branch):
                items.append({"kind": "branch", "component": it.component, "coefficient": it.coefficient})
            else:
                items.append({"kind": "exceptional", "m": it.m, "ell": it.ell, "name": it.name})
        return {"label": self.label, "items": items, "contacts": [list(r) for r in self.contacts]}


# ------------------------------------------------------------------
# Blow-up recursion
# ------------------------------------------------------------------


def _is_snc(contacts: Sequence[Sequence[int]]) -> bool:
    k = len(contacts)
    return k <= 2 and all(contacts[i][j] == 1 for i in range(k) for j in range(k) if i != j)


def _direction_groups(contacts: Sequence[Sequence[int]]) -> list[list[int]]:
    """Items grouped by shared tangent direction (contact >= 2)."""
    g = nx.Graph()
    k = len(contacts)
    g.add_nodes_from(range(k))
    g.add_edges_from((i, j) for i in range(k) for j in range(i + 1, k) if contacts[i][j] >= 2)
    return sorted(sorted(c) for c in nx.connected_components(g))


def _best(
    current: tuple[Optional[Fraction], Optional[ExceptionalItem]],
    candidate: tuple[Optional[Fraction], Optional[ExceptionalItem]],
) -> tuple[Optional[Fraction], Optional[ExceptionalItem]]:
    if candidate[0] is None:
        return current
    if current[0] is None or candidate[0] < current[0]:
        return candidate
    return current


def _blow_up(
    items: Sequence[Item],
    contacts: Sequence[Sequence[int]],
    name: str,
) -> tuple[Optional[Fraction], Optional[ExceptionalItem]]:
    m = sum(it.coefficient if isinstance(it, Branch) else it.m for it in items)
    ell = 2 + sum(it.ell - 1 for it in items if isinstance(it, ExceptionalItem))
    exc = ExceptionalItem(m, ell, name)
    logger.debug("blow up %s: m=%d ell=%d", name, m, ell)
    result: tuple[Optional[Fraction], Optional[ExceptionalItem]] = (exc.threshold, exc)

    for k, group in enumerate(_direction_groups(contacts), start=1):
        if len(group) < 2:
            # one old item and E meet transversally
            continue
        sub_items = [items[i] for i in group] + [exc]
        size = len(sub_items)
        sub = [[1] * size for _ in range(size)]
        for a, i in enumerate(group):
            for b, j in enumerate(group):
                if a != b:
                    sub[a][b] = contacts[i][j] - 1
        result = _best(result, _resolve(sub_items, sub, f"{name}.{k}"))
    return result


def _resolve(
    items: Sequence[Item],
    contacts: Sequence[Sequence[int]],
    name: str,
) -> tuple[Optional[Fraction], Optional[ExceptionalItem]]:
    if _is_snc(contacts):
        result: tuple[Optional[Fraction], Optional[ExceptionalItem]] = (None, None)
        for it in items:
            if isinstance(it, ExceptionalItem):
                result = _best(result, (it.threshold, it))
        return result
    return _blow_up(items, contacts, name)


def local_lct(cluster: Cluster) -> tuple[Optional[Fraction], Optional[ExceptionalItem]]:
    """Threshold contributed by the exceptional curves over one point.

    The point itself is always blown up once when at least two items pass
    through it, so an ordinary node reports ``1``.  Inside the recursion,
    points that are already simple normal crossing are not blown up.

    Returns
    -------
    (value, witness)
        ``value`` is the minimal ``ell/m`` over all exceptional curves, or
        ``None`` when the cluster imposes no constraint (a single item).
        ``witness`` is the minimizing :class:`ExceptionalItem`.

    Raises
    ------
    ValueError
        If the contact table is malformed.
    """
    cluster = cluster.canonical()
    cluster.validate()
    items = cluster.items
    if len(items) < 2:
        return _resolve(items, cluster.contacts, f"{cluster.label}:E")
    return _blow_up(items, cluster.contacts, f"{cluster.label}:E")


# ------------------------------------------------------------------
# Reference values
# ------------------------------------------------------------------

# (m, ell) of the exceptional curves in the minimal log resolution.
_UNIBRANCH_RESOLUTIONS = {
    "cusp": ((2, 2), (3, 3), (6, 5)),
}


def special_local_lct(kind: str) -> Fraction:
    """Threshold of a reduced unibranch singular germ.

    Only ``"cusp"`` (``x^2 = y^3``) is supported.
    """
    try:
        resolution = _UNIBRANCH_RESOLUTIONS[kind]
    except KeyError:
        raise ValueError(f"unsupported unibranch type {kind!r}") from None
    return min(Fraction(ell, m) for m, ell in resolution)


def newton_lct_oracle(p: int, q: int) -> Fraction:
    """``1/p + 1/q``, the threshold of ``x^p = y^q`` for ``p, q >= 2``."""
    if p < 2 or q < 2:
        raise ValueError(f"exponents must be >= 2, got ({p}, {q})")
    return Fraction(1, p) + Fraction(1, q)
