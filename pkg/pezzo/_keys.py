"""Deterministic fingerprints for surfaces, catalogs and reports.

Fingerprints are SHA-256 hex digests computed from canonical JSON, so
identical logical inputs always produce the same key regardless of dict
ordering or curve naming.
"""

from __future__ import annotations

import hashlib
import json
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from pezzo._surface import SurfaceModel


def canonical_json(obj: Any) -> str:
    """Return a deterministic JSON string for *obj*.

    Keys are sorted, no extra whitespace, ASCII-safe.
    """
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def _digest(obj: Any) -> str:
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()


def surface_fingerprint(model: SurfaceModel) -> str:
    """Hash of the degree and the sorted negative-curve classes.

    Curve names and provenance do not take part, so two constructions of
    the same curve configuration share a fingerprint.
    """
    return _digest(
        {
            "degree": model.degree,
            "curves": sorted([c.self_int, c.divisor_class.to_array()] for c in model.curves),
        }
    )


def document_fingerprint(document: dict[str, Any]) -> str:
    """Hash of a parsed JSON document, e.g. a catalog or a report."""
    return _digest(document)
