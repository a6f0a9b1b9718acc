"""Known values of the first global log canonical threshold.

For each degree the rules are tried in order; the first one that matches
gives the value.  ``"="`` rules compare the whole singularity type,
``">="`` rules test containment (refinement marks included).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from pezzo._surface import SingularityType, is_admissible

# (value, kind, labels): kind "=" or ">=".
_Rule = tuple[Fraction, str, tuple[str, ...]]

_RULES: dict[int, list[_Rule]] = {
    2: [
        (Fraction(1, 6), "=", ("E7",)),
        (Fraction(1, 4), "=", ("E6",)),
        (Fraction(1, 4), ">=", ("D6",)),
        (Fraction(1, 3), ">=", ("D5", "A5'")),
        # labels without marks first, so marks are only needed when decisive
        (Fraction(1, 2), ">=", ("5A1", "A3", "A4", "A6", "A7", "D4")),
        (Fraction(1, 2), ">=", ("(3A1)'", "(4A1)'", "A5''")),
    ],
    3: [
        (Fraction(1, 6), "=", ("E6",)),
        (Fraction(1, 4), ">=", ("A5",)),
        (Fraction(1, 4), "=", ("D5",)),
        (Fraction(1, 3), ">=", ("A4", "2A2")),
        (Fraction(1, 3), "=", ("D4",)),
        (Fraction(2, 3), "=", ("A1",)),
    ],
    4: [
        (Fraction(1, 6), "=", ("D5",)),
        (Fraction(1, 4), ">=", ("A1+A3",)),
        (Fraction(1, 4), "=", ("A4", "D4")),
        (Fraction(1, 3), "=", ("A3",)),
        (Fraction(1, 3), ">=", ("A1+A2",)),
    ],
    5: [
        (Fraction(1, 6), "=", ("A4",)),
        (Fraction(1, 4), "=", ("A3", "A1+A2")),
        (Fraction(1, 3), "=", ("A2", "2A1")),
        (Fraction(1, 2), "=", ("A1",)),
    ],
    6: [
        (Fraction(1, 6), "=", ("A1+A2",)),
        (Fraction(1, 4), "=", ("A2", "2A1")),
        (Fraction(1, 3), "=", ("A1",)),
    ],
    7: [
        (Fraction(1, 4), "=", ("A1",)),
    ],
}

# Value when no rule matches.
_OTHERWISE = {2: Fraction(2, 3), 3: Fraction(1, 2), 4: Fraction(1, 2)}


def _needs_mark(sigma: SingularityType, wanted: SingularityType) -> bool:
    if wanted.a5_mark and sigma.count("A5") and not sigma.a5_mark:
        return True
    if wanted.a1_mark and sigma.count("A1") in (3, 4) and not sigma.a1_mark:
        return True
    return False


def _matches(sigma: SingularityType, kind: str, label: str) -> bool:
    wanted = SingularityType.parse(label)
    if _needs_mark(sigma, wanted):
        raise ValueError(f"singularity type {sigma} in degree 2 needs a refinement mark to decide {label}")
    if kind == "=":
        return sigma == wanted
    return sigma.contains(wanted)


def expected_lct1(degree: int, sigma: Union[SingularityType, str]) -> Fraction:
    """Tabulated ``lct_1`` of a del Pezzo surface of *degree* with singularities *sigma*.

    Raises
    ------
    ValueError
        If the degree is outside 2..7, the type is empty or not admissible
        in that degree, or a degree-2 type lacks a refinement mark the
        table depends on.
    """
    if isinstance(sigma, str):
        sigma = SingularityType.parse(sigma)
    if degree not in _RULES:
        raise ValueError(f"degree must be in 2..7, got {degree}")
    if sigma.is_empty():
        raise ValueError("smooth surfaces are not tabulated")
    if not is_admissible(degree, sigma.unrefined()):
        raise ValueError(f"singularity type {sigma} is not admissible in degree {degree}")
    if degree != 2:
        sigma = sigma.unrefined()
    for value, kind, labels in _RULES[degree]:
        if any(_matches(sigma, kind, label) for label in labels):
            return value
    if degree in _OTHERWISE:
        return _OTHERWISE[degree]
    raise ValueError(f"no tabulated value for {sigma} in degree {degree}")
