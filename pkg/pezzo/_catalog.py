"""Built-in catalog of weak del Pezzo surfaces.

The catalog is a JSON document (see ``pezzo/data/catalog.json``).  Each
entry is either a plane spec, built with
:func:`~pezzo._surface.build_from_plane_spec`, or a direct list of curves.
Set ``PEZZO_CATALOG`` to load a different document.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Any, Optional, Union

from pezzo._errors import UnknownSurfaceError, ValidationError
from pezzo._lattice import DivisorClass
from pezzo._plane import PlaneSpec
from pezzo._surface import (
    Curve,
    SingularityType,
    SurfaceModel,
    build_from_plane_spec,
    validate_model,
)

logger = logging.getLogger(__name__)

CATALOG_ENV = "PEZZO_CATALOG"
BUILTIN_CATALOG = Path(__file__).parent / "data" / "catalog.json"


def catalog_path(path: Optional[Union[str, Path]] = None) -> Path:
    """Resolve the catalog file: explicit argument, then environment, then built-in."""
    if path is not None:
        return Path(path)
    env = os.environ.get(CATALOG_ENV)
    if env:
        return Path(env)
    return BUILTIN_CATALOG


@dataclass(frozen=True)
class CatalogEntry:
    """One catalog surface.  ``recorded_lct1`` pins a computed value that is
    known to differ from the tabulated one."""

    id: str
    degree: int
    singularity: SingularityType
    notes: str = ""
    recorded_lct1: Optional[Fraction] = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "degree": self.degree,
            "singularity": self.singularity.label,
            "notes": self.notes,
            "recorded_lct1": None if self.recorded_lct1 is None else str(self.recorded_lct1),
        }


class Catalog:
    """An immutable set of catalog entries with lazily built models.

    Parameters
    ----------
    data : dict
        The parsed catalog document.
    source : str
        Where the document came from, for messages.
    """

    def __init__(self, data: dict[str, Any], source: str = "<memory>") -> None:
        self.source = source
        self._raw: dict[str, dict[str, Any]] = {}
        self._entries: list[CatalogEntry] = []
        self._models: dict[str, SurfaceModel] = {}
        for i, raw in enumerate(data.get("surfaces", [])):
            try:
                entry = CatalogEntry(
                    id=str(raw["id"]),
                    degree=int(raw["degree"]),
                    singularity=SingularityType.parse(str(raw.get("singularity", ""))),
                    notes=str(raw.get("notes", "")),
                    recorded_lct1=None if "recorded_lct1" not in raw else Fraction(str(raw["recorded_lct1"])),
                )
            except (KeyError, ValueError) as exc:
                raise ValidationError(f"{source}: surfaces[{i}]", [str(exc)]) from exc
            if entry.id in self._raw:
                raise ValidationError(f"{source}: surfaces[{i}]", [f"duplicate id {entry.id}"])
            self._raw[entry.id] = raw
            self._entries.append(entry)

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> Catalog:
        path = Path(path)
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read catalog {path}", [str(exc)]) from exc
        return cls(data, source=str(path))

    def entries(self, degree: Optional[int] = None) -> list[CatalogEntry]:
        return [e for e in self._entries if degree is None or e.degree == degree]

    def entry(self, surface_id: str) -> CatalogEntry:
        for e in self._entries:
            if e.id == surface_id:
                return e
        raise UnknownSurfaceError(f"unknown surface id {surface_id!r}")

    def get(self, surface_id: str) -> SurfaceModel:
        entry = self.entry(surface_id)
        if surface_id not in self._models:
            self._models[surface_id] = _build_entry(entry, self._raw[surface_id])
        return self._models[surface_id]

    def models(self, degree: Optional[int] = None) -> list[SurfaceModel]:
        return [self.get(e.id) for e in self.entries(degree)]

    def validate(self) -> dict[str, list[str]]:
        """Build every entry; map each failing id to its violations."""
        failures: dict[str, list[str]] = {}
        for e in self._entries:
            try:
                self.get(e.id)
            except ValidationError as exc:
                failures[e.id] = exc.violations or [str(exc)]
        return failures


def _build_entry(entry: CatalogEntry, raw: dict[str, Any]) -> SurfaceModel:
    if "curves" in raw:
        curves = [
            Curve(
                name=str(c["name"]),
                divisor_class=DivisorClass.from_array(c["class"]),
                self_int=int(c["self_int"]),
                source=str(c.get("source", "")),
            )
            for c in raw["curves"]
        ]
        model = SurfaceModel.from_curves(entry.degree, curves, id=entry.id, notes=entry.notes)
        failures = validate_model(model)
        if failures:
            raise ValidationError(f"catalog entry {entry.id}", failures)
    else:
        spec = PlaneSpec.from_dict(raw)
        try:
            model = build_from_plane_spec(spec, id=entry.id, notes=entry.notes)
        except ValidationError as exc:
            raise type(exc)(f"catalog entry {entry.id}: {exc.summary}", exc.violations) from exc
    problems = []
    if model.degree != entry.degree:
        problems.append(f"degree {model.degree} != declared {entry.degree}")
    if model.singularity != entry.singularity:
        problems.append(f"singularity {model.singularity.label} != declared {entry.singularity.label}")
    if problems:
        raise ValidationError(f"catalog entry {entry.id}", problems)
    return model


@lru_cache(maxsize=8)
def _load(path: str, mtime: float) -> Catalog:
    logger.debug("loading catalog %s", path)
    return Catalog.from_file(path)


def load_catalog(path: Optional[Union[str, Path]] = None) -> Catalog:
    resolved = catalog_path(path)
    try:
        mtime = resolved.stat().st_mtime
    except OSError as exc:
        raise ValidationError(f"cannot read catalog {resolved}", [str(exc)]) from exc
    return _load(str(resolved), mtime)


def catalog_list(path: Optional[Union[str, Path]] = None) -> list[tuple[str, int, SingularityType]]:
    """``(id, degree, singularity)`` for every catalog entry, in file order."""
    return [(e.id, e.degree, e.singularity) for e in load_catalog(path).entries()]


def catalog_get(surface_id: str, path: Optional[Union[str, Path]] = None) -> SurfaceModel:
    """Build the surface model for *surface_id*.

    Raises
    ------
    UnknownSurfaceError
        If the id is not in the catalog.
    """
    return load_catalog(path).get(surface_id)
