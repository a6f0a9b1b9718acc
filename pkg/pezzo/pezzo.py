"""Pezzo: anticanonical divisors and lct_1 of singular del Pezzo surfaces.

Surfaces come from a catalog of weak del Pezzo surfaces, each given as a
blow-up of the plane or as an explicit list of negative curves.  The
:class:`Pezzo` facade ties the catalog to enumeration, threshold
computation, dual-graph propagation and verification.

Usage
-----
::

    from pezzo import Pezzo

    pz = Pezzo()

    # lct_1 of the degree-7 surface with an A1 point
    report = pz.lct("d7-A1")
    print(report.value)            # Fraction(1, 4)

    # expected vs computed for every degree-6 catalog entry
    for row in pz.table(6):
        print(row.sigma, row.expected, row.computed, row.match)
"""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence, Union

import cpuinfo
import networkx as nx

from pezzo import _anticanon, _local, _tables
from pezzo._anticanon import DivisorConfig, config_violations, decompose, enumerate_anticanonical
from pezzo._catalog import Catalog, CatalogEntry, catalog_path, load_catalog
from pezzo._expected import expected_lct1
from pezzo._graph import DualGraph, dual_graph, graph_canonical
from pezzo._keys import document_fingerprint, surface_fingerprint
from pezzo._lct import LctReport, Mode, config_lct, format_fraction, surface_lct1
from pezzo._local import Branch, Cluster, local_lct
from pezzo._plane import validate_plane_spec
from pezzo._propagation import STRATA, propagate_tables, stratum_forms
from pezzo._surface import SurfaceModel

logger = logging.getLogger(__name__)

EXPORT_FORMATS = ("json", "csv", "dot")
TABLE_COLUMNS = ("degree", "sigma", "expected", "computed", "witness", "match")


def _get_cpu_model() -> str:
    """CPU brand string recorded in verification reports."""
    info = cpuinfo.get_cpu_info()
    return info.get("brand_raw", "unknown")


@dataclass
class LctRow:
    """One surface of :meth:`Pezzo.table`: tabulated vs computed ``lct_1``.

    ``recorded`` is the catalog value for a known mismatch; a row whose
    computed value equals it is accepted by :meth:`Pezzo.verify`.
    """

    surface: str
    degree: int
    sigma: str
    expected: Optional[Fraction]
    computed: Optional[Fraction]
    witness: str
    match: bool
    note: str = ""
    recorded: Optional[Fraction] = None

    @property
    def accepted(self) -> bool:
        return self.match or (self.recorded is not None and self.computed == self.recorded)

    def to_dict(self) -> dict[str, Any]:
        return {
            "surface": self.surface,
            "degree": self.degree,
            "sigma": self.sigma,
            "expected": None if self.expected is None else format_fraction(self.expected),
            "computed": None if self.computed is None else format_fraction(self.computed),
            "witness": self.witness,
            "match": self.match,
            "note": self.note,
            "recorded": None if self.recorded is None else format_fraction(self.recorded),
        }

    def csv_row(self) -> list[str]:
        d = self.to_dict()
        return [str(d[c]) if d[c] is not None else "" for c in TABLE_COLUMNS[:-1]] + [str(self.match).lower()]


@dataclass
class PropagationRow:
    """Whether a checked table row was reproduced by propagation."""

    stratum: int
    degree: int
    row: str
    contained: bool

    def to_dict(self) -> dict[str, Any]:
        return {"stratum": self.stratum, "degree": self.degree, "row": self.row, "contained": self.contained}


@dataclass
class VerifyReport:
    """Outcome of :meth:`Pezzo.verify`.

    ``validators`` maps a check name to the list of its failures.
    """

    cpu_model: str
    catalog: str
    fingerprint: str
    lct_rows: list[LctRow] = field(default_factory=list)
    propagation_rows: list[PropagationRow] = field(default_factory=list)
    validators: dict[str, list[str]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (
            all(r.accepted for r in self.lct_rows)
            and all(r.contained for r in self.propagation_rows)
            and not any(self.validators.values())
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "cpu_model": self.cpu_model,
            "catalog": self.catalog,
            "fingerprint": self.fingerprint,
            "lct": [r.to_dict() for r in self.lct_rows],
            "propagation": [r.to_dict() for r in self.propagation_rows],
            "validators": {k: list(v) for k, v in sorted(self.validators.items())},
        }


class Pezzo:
    """High-level interface over a surface catalog.

    Parameters
    ----------
    catalog_path : str, Path or None
        Catalog JSON document.  *None* means ``PEZZO_CATALOG`` if set,
        otherwise the built-in catalog.
    mode : Mode or str
        Default local geometry for threshold computations.
    cpu_model : str or None
        Recorded in verification reports; auto-detected if *None*.
    """

    def __init__(
        self,
        catalog_path: Optional[Union[str, Path]] = None,
        mode: Union[Mode, str] = Mode.DEFAULT_SNC,
        cpu_model: Optional[str] = None,
    ) -> None:
        self.catalog_path = _resolve(catalog_path)
        self.mode = Mode(mode)
        self._cpu_model = cpu_model
        self._catalog: Optional[Catalog] = None
        self._lct: dict[tuple[str, Mode], LctReport] = {}

    # ------------------------------------------------------------------
    # Catalog
    # ------------------------------------------------------------------

    @property
    def catalog(self) -> Catalog:
        if self._catalog is None:
            self._catalog = load_catalog(self.catalog_path)
        return self._catalog

    def entries(self, degree: Optional[int] = None) -> list[CatalogEntry]:
        return self.catalog.entries(degree)

    def surface(self, surface_id: str) -> SurfaceModel:
        """Build (or fetch) the model of a catalog entry.

        Raises
        ------
        UnknownSurfaceError
            If the id is not in the catalog.
        ValidationError
            If the entry does not build or disagrees with its declared label.
        """
        return self.catalog.get(surface_id)

    def fingerprint(self) -> str:
        """SHA-256 of the catalog document."""
        return document_fingerprint(json.loads(self.catalog_path.read_text()))

    # ------------------------------------------------------------------
    # Divisors and thresholds
    # ------------------------------------------------------------------

    def enumerate(self, surface_id: str, with_roots: bool = False) -> list[DivisorConfig]:
        """Anticanonical configs on negative curves; optionally only those through a (-2)-curve."""
        configs = enumerate_anticanonical(self.surface(surface_id))
        if with_roots:
            configs = [c for c in configs if c.has_root]
        return configs

    def lct(self, surface_id: str, mode: Optional[Union[Mode, str]] = None) -> LctReport:
        mode = self.mode if mode is None else Mode(mode)
        key = (surface_id, mode)
        if key not in self._lct:
            self._lct[key] = surface_lct1(self.surface(surface_id), mode)
        return self._lct[key]

    def table_row(self, entry: CatalogEntry) -> LctRow:
        """Compare ``lct_1`` of one entry with the tabulated value."""
        sigma = entry.singularity.label
        expected: Optional[Fraction] = None
        computed: Optional[Fraction] = None
        witness = ""
        notes = []
        try:
            expected = expected_lct1(entry.degree, entry.singularity)
        except ValueError as exc:
            notes.append(f"expected: {exc}")
        try:
            report = self.lct(entry.id, Mode.DEFAULT_SNC)
            computed = report.value
            witness = report.witness.source
            if not witness.startswith(f"{report.config}:"):
                witness = f"{report.config}:{witness}"
        except ValueError as exc:
            notes.append(f"computed: {exc}")
        match = expected is not None and expected == computed
        recorded = entry.recorded_lct1
        if not match and recorded is not None and recorded == computed:
            notes.append(f"recorded mismatch: computed {format_fraction(recorded)}")
            logger.info("lct_1 of %s differs from the table as recorded in the catalog", entry.id)
        elif not match:
            logger.warning(
                "lct_1 mismatch on %s: expected %s, computed %s",
                entry.id,
                "?" if expected is None else format_fraction(expected),
                "?" if computed is None else format_fraction(computed),
            )
        return LctRow(entry.id, entry.degree, sigma, expected, computed, witness, match, "; ".join(notes), recorded)

    def table(self, degree: Optional[int] = None) -> list[LctRow]:
        """One row per catalog entry of *degree* (all entries if *None*)."""
        return [self.table_row(e) for e in self.entries(degree)]

    # ------------------------------------------------------------------
    # Dual graphs
    # ------------------------------------------------------------------

    def propagate(self, stratum: int, max_degree: int = 7) -> dict[int, list[DualGraph]]:
        """Forward propagation from the built-in degree-1 seeds of *stratum*."""
        if stratum not in STRATA:
            raise ValueError(f"unknown stratum {stratum!r}: expected one of {', '.join(map(str, STRATA))}")
        return propagate_tables(_tables.seeds(stratum), stratum, max_degree)

    def propagation_rows(self, stratum: Optional[int] = None) -> list[PropagationRow]:
        rows = []
        for r in _tables.checked_rows(stratum):
            forms = stratum_forms(r.stratum).get(r.degree, frozenset())
            rows.append(PropagationRow(r.stratum, r.degree, r.id, graph_canonical(r.graph()) in forms))
        return rows

    def graph_violations(self, surface_id: str) -> list[str]:
        """Enumerated configs whose dual graph is missing from the propagated candidates."""
        model = self.surface(surface_id)
        failures = []
        for k, config in enumerate(enumerate_anticanonical(model), start=1):
            g = dual_graph(config)
            if g.max_weight < 2:
                continue
            if g.max_weight not in STRATA:
                failures.append(f"{surface_id} config {k}: largest weight {g.max_weight} is not a stratum")
                continue
            forms = stratum_forms(g.max_weight).get(model.degree, frozenset())
            if graph_canonical(g) not in forms:
                failures.append(f"{surface_id} config {k}: dual graph {g.to_text()} not propagated")
        return failures

    # ------------------------------------------------------------------
    # Export
    # ------------------------------------------------------------------

    def export(self, surface_ids: Sequence[str], fmt: str = "json", with_roots: bool = False) -> str:
        """Serialize the enumerated configs of *surface_ids*.

        ``json`` gives one document, ``csv`` one row per component and
        ``dot`` one graph per config.  An empty selection gives an empty
        document.
        """
        if fmt not in EXPORT_FORMATS:
            raise ValueError(f"fmt must be one of {', '.join(EXPORT_FORMATS)}, got {fmt!r}")
        selected = [(sid, self.enumerate(sid, with_roots)) for sid in surface_ids]
        if fmt == "json":
            doc = {
                "surfaces": [
                    {
                        "id": sid,
                        "fingerprint": surface_fingerprint(self.surface(sid)),
                        "configs": [c.to_dict() for c in cs],
                    }
                    for sid, cs in selected
                ]
            }
            return json.dumps(doc, indent=2) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(["surface", "config", "curve", "class", "coefficient"])
            for sid, cs in selected:
                for k, c in enumerate(cs, start=1):
                    for curve, cls, a in c.rows():
                        writer.writerow([sid, k, curve, cls, a])
            return buf.getvalue()
        return "".join(
            dual_graph(c).to_dot(f"{sid}-{k}") for sid, cs in selected for k, c in enumerate(cs, start=1)
        )

    # ------------------------------------------------------------------
    # Verification
    # ------------------------------------------------------------------

    def verify(self) -> VerifyReport:
        """Tabulated values, propagation containment and every acceptance check in one report.

        ``passed`` on the report needs every lct row accepted, every checked
        propagation row contained and no failure in any validator.
        """
        catalog = self.catalog
        validators: dict[str, list[str]] = {
            "catalog": [],
            "configs": [],
            "graphs": [],
            "local-oracle": _local_oracle_failures(),
            "brute-force": [],
            "lct-properties": [],
            "degree3-uniqueness": [],
            "plane-specs": [],
        }
        failing = catalog.validate()
        for sid, problems in failing.items():
            validators["catalog"] += [f"{sid}: {p}" for p in problems]
        built = [e for e in catalog.entries() if e.id not in failing]
        for e in built:
            model = self.surface(e.id)
            configs = self.enumerate(e.id)
            for k, config in enumerate(configs, start=1):
                validators["configs"] += [f"{e.id} config {k}: {p}" for p in config_violations(config)]
            validators["graphs"] += self.graph_violations(e.id)
            validators["lct-properties"] += _property_failures(model, configs)
            if e.degree >= 5:
                validators["brute-force"] += _brute_force_failures(model)
            if e.degree == 3:
                validators["degree3-uniqueness"] += _uniqueness_failures(model)
            if model.provenance is not None:
                validators["plane-specs"] += [f"{e.id}: {p}" for p in validate_plane_spec(model.provenance)]

        report = VerifyReport(
            cpu_model=self._cpu_model or _get_cpu_model(),
            catalog=str(self.catalog_path),
            fingerprint=self.fingerprint(),
            lct_rows=[self.table_row(e) for e in built if 2 <= e.degree <= 7 and not e.singularity.is_empty()],
            propagation_rows=self.propagation_rows(),
            validators=validators,
        )
        for name, failures in validators.items():
            for f in failures:
                logger.warning("%s: %s", name, f)
        return report

    def __repr__(self) -> str:
        return f"Pezzo(catalog_path={str(self.catalog_path)!r}, mode={self.mode.value!r})"


# ------------------------------------------------------------------
# Acceptance checks
# ------------------------------------------------------------------

MAX_ORACLE_CONTACT = 5


def _local_oracle_failures() -> list[str]:
    """Blow-up thresholds against the closed forms for two branches, the cusp and a triple point."""
    failures = []
    for contact in range(1, MAX_ORACLE_CONTACT + 1):
        value, _ = local_lct(Cluster.tangent(Branch("x", 1), Branch("y", 1), contact))
        oracle = _local.newton_lct_oracle(2, 2 * contact)
        if value != oracle:
            failures.append(f"two branches with contact {contact}: {value} != {oracle}")
    cusp = _local.special_local_lct("cusp")
    if cusp != Fraction(5, 6) or cusp != _local.newton_lct_oracle(2, 3):
        failures.append(f"cusp: {cusp} != 5/6")
    triple, _ = local_lct(Cluster.transverse([Branch(name, 1) for name in ("x", "y", "z")]))
    if triple != Fraction(2, 3):
        failures.append(f"ordinary triple point: {triple} != 2/3")
    return failures


def _brute_force_failures(model: SurfaceModel) -> list[str]:
    fast = decompose(model, model.anticanonical)
    slow = _anticanon.brute_force_solutions(model)
    if fast != slow:
        return [f"{model.id}: {len(fast)} decompositions, exhaustive search finds {len(slow)}"]
    return []


def _property_failures(model: SurfaceModel, configs: Sequence[DivisorConfig]) -> list[str]:
    failures = []
    for k, config in enumerate(configs, start=1):
        if not config.has_root:
            continue
        where = f"{model.id} config {k}"
        base = config_lct(config).uncapped
        if config_lct(config.scaled(2)).uncapped != base / 2:
            failures.append(f"{where}: threshold of 2D is not half of {base}")
        for name in config.mult:
            if config_lct(config.raised(name)).uncapped > base:
                failures.append(f"{where}: raising {name} increases the threshold")
        reordered = DivisorConfig(
            model, dict(reversed(list(config.mult.items()))), config.extras, config.points, config.label
        )
        if config_lct(reordered).uncapped != base:
            failures.append(f"{where}: threshold depends on the component order")
        g = config.support_graph()
        simple = all(t == 1 for _, _, t in g.edges(data="intersection"))
        if nx.is_tree(g) and simple and base != Fraction(1, config.max_coefficient):
            failures.append(f"{where}: normal crossing tree has threshold {base}, not 1/{config.max_coefficient}")
    return failures


def _uniqueness_failures(model: SurfaceModel) -> list[str]:
    return [
        f"{model.id}: class {v} has {len(sols)} decompositions"
        for v, sols in _anticanon.minus_one_decompositions(model).items()
        if len(sols) != 1
    ]


def _resolve(path: Optional[Union[str, Path]]) -> Path:
    return catalog_path(path).resolve()
