"""Encoded dual graphs: degree-1 seeds, checked table rows and closure seeds.

Every graph is written in the text format of
:meth:`pezzo._graph.DualGraph.from_text`.  Vertices are ``name:weight/self_int``;
unlabeled multiplicities in printed figures are read as weight 1.

Rows are grouped by *stratum*, the largest weight in the graph (6, 4, 3
or 2).  Checked rows of degree 2 to 7 are the ones that forward
propagation from the degree-1 seeds must reproduce.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from pezzo._graph import DualGraph


@dataclass(frozen=True)
class TableRow:
    id: str
    stratum: int
    degree: int
    singularity: str
    text: str

    def graph(self) -> DualGraph:
        return DualGraph.from_text(self.text)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "stratum": self.stratum,
            "degree": self.degree,
            "singularity": self.singularity,
            "graph": self.text,
        }


def _row(stratum: int, degree: int, singularity: str, text: str, suffix: str = "") -> TableRow:
    key = singularity.replace("+", "").replace("~", "-ext").replace("''", "-dblprime").replace("'", "-prime")
    return TableRow(f"wt{stratum}-d{degree}-{key}{suffix}", stratum, degree, singularity, text)


# ------------------------------------------------------------------
# Weight 6
# ------------------------------------------------------------------

_WT6 = [
    _row(6, 1, "E8", "a:2/-2 b:4/-2 c:6/-2 d:5/-2 e:4/-2 f:3/-2 g:2/-2 h:3/-2 x:1/-1; a-b-c-d-e-f-g-x c-h"),
    _row(6, 2, "E7", "a:2/-2 b:4/-2 c:6/-2 d:5/-2 e:4/-2 f:3/-2 g:2/-1 h:3/-2; a-b-c-d-e-f-g c-h"),
    _row(6, 3, "E6", "a:2/-2 b:4/-2 c:6/-2 d:5/-2 e:4/-2 f:3/-1 h:3/-2; a-b-c-d-e-f c-h"),
    _row(6, 4, "D5", "a:2/-2 b:4/-2 c:6/-2 d:5/-2 e:4/-1 h:3/-2; a-b-c-d-e c-h"),
    _row(6, 5, "A4", "a:2/-2 b:4/-2 c:6/-2 d:5/-1 h:3/-2; a-b-c-d c-h"),
    _row(6, 6, "A1+A2", "a:2/-2 b:4/-2 c:6/-1 h:3/-2; a-b-c-h"),
]

# ------------------------------------------------------------------
# Weight 4
# ------------------------------------------------------------------

_WT4 = [
    _row(4, 1, "E7", "x:1/-1 a:2/-2 b:3/-2 c:4/-2 d:3/-2 e:2/-2 f:1/-2 h:2/-2; x-a-b-c-d-e-f c-h"),
    _row(4, 2, "E6", "x:1/-1 a:2/-2 b:3/-2 c:4/-2 d:3/-2 e:2/-2 f:1/-1 h:2/-2; x-a-b-c-d-e-f c-h"),
    _row(4, 2, "D6", "a:2/-1 b:3/-2 c:4/-2 d:3/-2 e:2/-2 f:1/-2 h:2/-2; a-b-c-d-e-f c-h"),
    _row(4, 3, "D5", "a:2/-1 b:3/-2 c:4/-2 d:3/-2 e:2/-2 f:1/-1 h:2/-2; a-b-c-d-e-f c-h"),
    _row(4, 3, "A5", "b:3/-1 c:4/-2 d:3/-2 e:2/-2 f:1/-2 h:2/-2; b-c-d-e-f c-h"),
    _row(4, 4, "D4", "a:2/-1 b:3/-2 c:4/-2 d:3/-2 e:2/-1 h:2/-2; a-b-c-d-e c-h"),
    _row(4, 4, "A4", "b:3/-1 c:4/-2 d:3/-2 e:2/-2 f:1/-1 h:2/-2; b-c-d-e-f c-h"),
    _row(4, 4, "A1+A3", "c:4/-1 d:3/-2 e:2/-2 f:1/-2 h:2/-2; h-c-d-e-f"),
    _row(4, 5, "A3", "b:3/-1 c:4/-2 d:3/-2 e:2/-1 h:2/-2; b-c-d-e c-h"),
    _row(4, 5, "A1+A2", "c:4/-1 d:3/-2 e:2/-2 f:1/-1 h:2/-2; h-c-d-e-f"),
    _row(4, 6, "A2", "b:3/-1 c:4/-2 d:3/-1 h:2/-2; b-c-d c-h"),
    _row(4, 6, "2A1", "c:4/-1 d:3/-2 e:2/-1 h:2/-2; h-c-d-e"),
    _row(4, 7, "A1", "c:4/-1 d:3/-1 h:2/-2; h-c-d"),
]

# ------------------------------------------------------------------
# Weight 3
# ------------------------------------------------------------------

_WT3 = [
    _row(3, 1, "E6", "c:3/-2 a1:2/-2 b1:1/-2 a2:2/-2 b2:1/-2 a3:2/-2 x:1/-1; b1-a1-c-a2-b2 c-a3-x"),
    _row(3, 2, "D5", "c:3/-2 a1:2/-2 b1:1/-1 a2:2/-2 b2:1/-2 a3:2/-2 x:1/-1; b1-a1-c-a2-b2 c-a3-x"),
    _row(3, 2, "A5'", "c:3/-2 a1:2/-2 b1:1/-2 a2:2/-2 b2:1/-2 a3:2/-1; b1-a1-c-a2-b2 c-a3"),
    _row(3, 3, "D4", "c:3/-2 a1:2/-2 b1:1/-1 a2:2/-2 b2:1/-1 a3:2/-2 x:1/-1; b1-a1-c-a2-b2 c-a3-x"),
    _row(3, 3, "A4", "c:3/-2 a1:2/-2 b1:1/-1 a2:2/-2 b2:1/-2 a3:2/-1; b1-a1-c-a2-b2 c-a3"),
    _row(3, 3, "2A2", "c:3/-1 a1:2/-2 b1:1/-2 a2:2/-2 b2:1/-2; b1-a1-c-a2-b2"),
    _row(3, 4, "A3", "c:3/-2 a1:2/-1 a2:2/-2 b2:1/-2 a3:2/-1; a1-c-a2-b2 c-a3", "-a"),
    _row(3, 4, "A3", "c:3/-2 a1:2/-2 b1:1/-1 a2:2/-2 b2:1/-1 a3:2/-1; b1-a1-c-a2-b2 c-a3", "-b"),
    _row(3, 4, "A1+A2", "c:3/-1 a1:2/-2 b1:1/-1 a2:2/-2 b2:1/-2; b1-a1-c-a2-b2"),
    _row(3, 5, "A2", "c:3/-1 a2:2/-2 b2:1/-2 a3:2/-1; a3-c-a2-b2", "-a"),
    _row(3, 5, "A2", "c:3/-2 a1:2/-1 a2:2/-2 b2:1/-1 a3:2/-1; a1-c-a2-b2 c-a3", "-b"),
    _row(3, 5, "2A1", "c:3/-1 a1:2/-2 b1:1/-1 a2:2/-2 b2:1/-1; b1-a1-c-a2-b2"),
    _row(3, 6, "A1", "c:3/-1 a2:2/-2 b2:1/-1 a3:2/-1; a3-c-a2-b2", "-a"),
    _row(3, 6, "A1", "c:3/-2 a1:2/-1 a2:2/-1 a3:2/-1; c-a1 c-a2 c-a3", "-b"),
]

# ------------------------------------------------------------------
# Weight 2 (degree-1 seeds only)
# ------------------------------------------------------------------

_WT2 = [
    _row(2, 1, "D8~", "u1:2/-2 u2:2/-2 u3:2/-2 u4:2/-2 u5:2/-2 l1:1/-2 l2:1/-2 l3:1/-2 x:1/-1; "
                      "u1-u2-u3-u4-u5 l1-u1-l2 l3-u5-x"),
    _row(2, 1, "D7~", "u1:2/-2 u2:2/-2 u3:2/-2 u4:2/-2 l1:1/-2 l2:1/-2 l3:1/-2 x:1/-1; "
                      "u1-u2-u3-u4 l1-u1-l2 l3-u4-x"),
    _row(2, 1, "D6~", "u1:2/-2 u2:2/-2 u3:2/-2 l1:1/-2 l2:1/-2 l3:1/-2 x:1/-1; u1-u2-u3 l1-u1-l2 l3-u3-x"),
    _row(2, 1, "D5~", "u1:2/-2 u2:2/-2 l1:1/-2 l2:1/-2 l3:1/-2 x:1/-1; u1-u2 l1-u1-l2 l3-u2-x"),
    _row(2, 1, "D4~", "c:2/-2 l1:1/-2 l2:1/-2 l3:1/-2 x:1/-1; l1-c-l2 l3-c-x"),
]

ROWS: tuple[TableRow, ...] = tuple(_WT6 + _WT4 + _WT3 + _WT2)

# ------------------------------------------------------------------
# Blow-up closure seeds
# ------------------------------------------------------------------

# Graphs containing a 1-curve in the weight-3 stratum descend from this one.
ONE_CURVE_SEEDS = ("x:1/1 a1:2/-2 c:3/-1 a2:2/-2 b2:1/-2; x-a1-c-a2-b2",)

# Weight 2: long chains of weight-2 curves.
LONG_CHAIN_SEEDS = (
    "p:1/-2 q:2/-1 r:2/-2 s:2/-2 t:2/-1 u:1/-1; p-q-r-s-t-u",
    "p:1/-2 q:2/-1 r:2/-2 s:2/-2 v:2/-2 t:2/-1 u:1/-2; p-q-r-s-v-t-u",
)

# Weight 2: a unique weight-1 curve of largest self-intersection 0 or 1.
UNIQUE_TOP_SEEDS = (
    "p:1/-2 q:2/-1 r:2/-2 s:2/-1 x:1/0; p-q-r-s-x",
    "p:1/-2 q:2/-1 s:2/-1 x:1/1; p-q-s-x",
)

# Weight 2: several weight-1 0-curves, or a single 2-curve.
SEVERAL_ZERO_SEEDS = (
    "c:2/-2 y1:1/0 y2:1/0 q:2/-1 u:1/-1; y1-c-y2 c-q-u",
    "c:2/-2 y1:1/0 y2:1/0 r:2/-2 q:2/-1 p:1/-2; y1-c-y2 c-r-q-p",
    "c:2/-2 y1:1/0 y2:1/0 y3:1/0 u:1/-1; y1-c-y2 y3-c-u",
    "c:2/-1 l:1/-2 u:1/-1 z:1/2; l-c-u c-z",
    "c:2/-2 l:1/-2 z:1/2 q:2/-1 p:1/-2; l-c-z c-q-p",
)

# Weight 2: a weight-2 0-curve at the end of a branch.
ZERO_LEAF_SEEDS = (
    "c:2/-2 y:1/0 u:1/-1 z:2/0; y-c-u c-z",
    "u:1/-1 q:2/-1 r:2/-2 z:2/0; u-q-r-z",
    "p:1/-2 q:2/-1 r:2/-2 s:2/-2 z:2/0; p-q-r-s-z",
)

# Weight 2, degree 4: no anticanonical divisor has this dual graph.
EXCLUDED_DEGREE4 = (
    "u1:2/-2 u2:2/-2 u3:2/-2 u4:2/-2 x1:1/-1 x2:1/-1 x3:1/-1 x4:1/-1; u1-u2-u3-u4 x1-u1-x2 x3-u4-x4"
)


def seeds(stratum: int) -> list[DualGraph]:
    """Degree-1 seed graphs of a stratum."""
    return [r.graph() for r in ROWS if r.stratum == stratum and r.degree == 1]


def checked_rows(stratum: Optional[int] = None) -> list[TableRow]:
    """Table rows of degree >= 2 that propagation must reproduce."""
    return [r for r in ROWS if r.degree >= 2 and (stratum is None or r.stratum == stratum)]


def row(row_id: str) -> TableRow:
    for r in ROWS:
        if r.id == row_id:
            return r
    raise KeyError(row_id)
