"""Tests for dual-graph propagation and the encoded tables."""

import pytest

from pezzo._graph import DualGraph, graph_canonical, graph_degree, graph_iso
from pezzo._propagation import (
    STRATA,
    Ancestry,
    blow_down_moves,
    blow_up_moves,
    keeps,
    p1_step,
    p2_step,
    propagate_tables,
    root_type,
    stratum_forms,
    stratum_of,
)
from pezzo._surface import SingularityType
from pezzo._tables import EXCLUDED_DEGREE4, ROWS, checked_rows, row, seeds

# ------------------------------------------------------------------
# Rules
# ------------------------------------------------------------------


def test_p2_step_degree5_to_degree6():
    (h,) = p2_step(row("wt6-d5-A4").graph())
    assert graph_iso(h, row("wt6-d6-A1A2").graph())


def test_p2_step_from_seed():
    (h,) = p2_step(row("wt6-d1-E8").graph())
    assert graph_iso(h, row("wt6-d2-E7").graph())


def test_p1_step_needs_weight_one():
    assert p1_step(row("wt6-d5-A4").graph()) == []
    (h,) = p1_step(DualGraph.from_text("a:1/-1 b:2/-2; a-b"))
    assert h.self_int("a") == 0


def test_rules_raise_degree():
    for r in ROWS:
        g = r.graph()
        for h in p1_step(g) + p2_step(g):
            assert graph_degree(h) == graph_degree(g) + 1


def test_blow_up_then_down():
    g = row("wt3-d6-A1-a").graph()
    for h in blow_up_moves(g, max_weight=3):
        assert graph_degree(h) == graph_degree(g) - 1
        forms = {graph_canonical(x) for x in blow_down_moves(h)}
        assert graph_canonical(g) in forms


def test_blow_up_respects_max_weight():
    g = DualGraph.from_text("a:2/-1 b:2/-1; a-b")
    assert all(h.max_weight <= 2 for h in blow_up_moves(g, max_weight=2))
    assert any(h.max_weight == 3 for h in blow_up_moves(g, max_weight=3))


def test_ancestry_contains_seed_and_blow_ups():
    seed = DualGraph.from_text("c:3/-1 a:2/-2 x:1/0; a-c-x")
    closure = Ancestry([seed])
    assert closure.contains(seed)
    for h in blow_up_moves(seed, max_weight=3):
        assert closure.contains(h)
    assert not closure.contains(DualGraph.from_text("c:3/-1 a:2/-1; a-c"))


# ------------------------------------------------------------------
# Filters
# ------------------------------------------------------------------


def test_root_type():
    assert root_type(row("wt6-d2-E7").graph()) == SingularityType.parse("E7")
    assert root_type(DualGraph.from_text("a:1/0")).is_empty()
    assert root_type(DualGraph.from_text("a:1/-2 b:1/-2 c:1/-2; a-b-c-a")) is None


def test_keeps_inadmissible():
    # E8 roots cannot live on a degree-2 surface
    g = row("wt6-d1-E8").graph()
    (h,) = p1_step(g)
    assert not keeps(h, 2, 6)


def test_keeps_unknown_stratum():
    with pytest.raises(ValueError, match="unknown stratum 5"):
        keeps(row("wt6-d2-E7").graph(), 2, 5)


def test_stratum_of():
    assert stratum_of(row("wt4-d3-A5").graph()) == 4
    assert stratum_of(DualGraph.from_text(EXCLUDED_DEGREE4)) == 2


# ------------------------------------------------------------------
# Propagation
# ------------------------------------------------------------------


def test_weight6_degree2_is_e7():
    forms = stratum_forms(6)
    assert forms[2] == {graph_canonical(row("wt6-d2-E7").graph())}


@pytest.mark.parametrize("table_row", checked_rows(), ids=lambda r: r.id)
def test_checked_rows_reproduced(table_row):
    forms = stratum_forms(table_row.stratum)
    assert graph_canonical(table_row.graph()) in forms[table_row.degree]


def test_degree4_exclusion_absent():
    assert graph_canonical(DualGraph.from_text(EXCLUDED_DEGREE4)) not in stratum_forms(2)[4]


def test_weight4_has_no_positive_curves():
    tables = propagate_tables(seeds(4), 4)
    for degree, graphs in tables.items():
        for g in graphs:
            assert all(g.self_int(v) <= 0 for v in g.vertices), (degree, g.to_text())


def test_propagated_degrees():
    tables = propagate_tables(seeds(3), 3, max_degree=4)
    assert sorted(tables) == [1, 2, 3, 4]
    for degree, graphs in tables.items():
        assert all(graph_degree(g) == degree for g in graphs)
        assert len({graph_canonical(g) for g in graphs}) == len(graphs)


def test_propagate_errors():
    with pytest.raises(ValueError, match="unknown stratum 7"):
        propagate_tables(seeds(6), 7)
    with pytest.raises(ValueError, match="seed has degree 2, expected 1"):
        propagate_tables([row("wt6-d2-E7").graph()], 6)


def test_every_stratum_has_seeds():
    for stratum in STRATA:
        assert seeds(stratum)
        assert all(graph_degree(s) == 1 for s in seeds(stratum))
