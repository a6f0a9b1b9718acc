"""Tests for local thresholds at a point."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pezzo._local import (
    Branch,
    Cluster,
    ExceptionalItem,
    local_lct,
    newton_lct_oracle,
    special_local_lct,
)


def _branches(*coefficients):
    return [Branch(f"C{i}", a) for i, a in enumerate(coefficients, start=1)]


# ------------------------------------------------------------------
# Reference germs
# ------------------------------------------------------------------


def test_node():
    value, exc = local_lct(Cluster.transverse(_branches(1, 1)))
    assert value == 1
    assert (exc.m, exc.ell) == (2, 2)


def test_ordinary_triple_point():
    value, exc = local_lct(Cluster.transverse(_branches(1, 1, 1)))
    assert value == Fraction(2, 3)
    assert (exc.m, exc.ell) == (3, 2)


def test_tacnode():
    a, b = _branches(1, 1)
    value, exc = local_lct(Cluster.tangent(a, b, 2))
    assert value == Fraction(3, 4)
    assert (exc.m, exc.ell) == (4, 3)
    assert exc.name == "p:E.1"


def test_weighted_transverse_pair():
    value, _ = local_lct(Cluster.transverse(_branches(6, 4)))
    assert value == Fraction(1, 5)


def test_single_branch_has_no_constraint():
    assert local_lct(Cluster.transverse(_branches(3))) == (None, None)


def test_cusp():
    assert special_local_lct("cusp") == Fraction(5, 6)
    assert special_local_lct("cusp") == newton_lct_oracle(2, 3)


def test_unsupported_unibranch():
    with pytest.raises(ValueError, match="unsupported unibranch type"):
        special_local_lct("ramphoid")


def test_newton_oracle():
    assert newton_lct_oracle(2, 2) == 1
    assert newton_lct_oracle(2, 4) == Fraction(3, 4)
    with pytest.raises(ValueError, match=">= 2"):
        newton_lct_oracle(1, 3)


@pytest.mark.parametrize("contact", [1, 2, 3, 4, 5])
def test_contact_matches_newton(contact):
    a, b = _branches(1, 1)
    value, _ = local_lct(Cluster.tangent(a, b, contact))
    assert value == newton_lct_oracle(2, 2 * contact)


def test_exceptional_item_in_cluster():
    """A branch through a point of an earlier exceptional curve."""
    cluster = Cluster.transverse([Branch("C", 1), ExceptionalItem(2, 2, "F")])
    value, exc = local_lct(cluster)
    # new curve: m = 1 + 2, ell = 2 + (2 - 1)
    assert value == 1
    assert (exc.m, exc.ell) == (3, 3)


# ------------------------------------------------------------------
# Cluster validation
# ------------------------------------------------------------------


def test_malformed_contacts():
    items = _branches(1, 1, 1)
    contacts = ((0, 2, 2), (2, 0, 1), (2, 1, 0))
    with pytest.raises(ValueError, match="malformed contacts"):
        local_lct(Cluster(tuple(items), contacts))


def test_asymmetric_contacts():
    items = _branches(1, 1)
    with pytest.raises(ValueError, match="not symmetric"):
        local_lct(Cluster(tuple(items), ((0, 2), (1, 0))))


def test_conflicting_coefficients():
    cluster = Cluster.transverse([Branch("C", 1), Branch("C", 2), Branch("D", 1)])
    with pytest.raises(ValueError, match="listed with coefficients 1 and 2"):
        local_lct(cluster)


def test_repeated_branch_counted_once():
    once = Cluster.transverse([Branch("C", 2), Branch("D", 1)])
    twice = Cluster.transverse([Branch("C", 2), Branch("D", 1), Branch("C", 2)])
    assert local_lct(once)[0] == local_lct(twice)[0] == Fraction(2, 3)


def test_branch_coefficient_positive():
    with pytest.raises(ValueError, match="coefficient must be positive"):
        Branch("C", 0)


# ------------------------------------------------------------------
# Properties
# ------------------------------------------------------------------


@given(st.lists(st.integers(1, 6), min_size=2, max_size=4), st.permutations(range(4)))
def test_permutation_invariance(coefficients, order):
    items = _branches(*coefficients)
    shuffled = [items[i] for i in order if i < len(items)]
    assert local_lct(Cluster.transverse(items))[0] == local_lct(Cluster.transverse(shuffled))[0]


@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 4), st.integers(2, 4))
def test_scaling(a, b, contact, k):
    first, second = Branch("C1", a), Branch("C2", b)
    value, _ = local_lct(Cluster.tangent(first, second, contact))
    scaled, _ = local_lct(Cluster.tangent(first, second, contact).scaled(k))
    assert scaled == value / k


@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 4))
def test_monotone_in_coefficients(a, b, contact):
    low, _ = local_lct(Cluster.tangent(Branch("C1", a), Branch("C2", b), contact))
    high, _ = local_lct(Cluster.tangent(Branch("C1", a + 1), Branch("C2", b), contact))
    assert high <= low
