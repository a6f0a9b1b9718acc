"""Pezzo: anticanonical divisors and lct_1 of singular del Pezzo surfaces."""

from pezzo._anticanon import DivisorConfig, decompose, enumerate_anticanonical, special_configs
from pezzo._catalog import catalog_get, catalog_list
from pezzo._errors import (
    NonCanonicalError,
    PezzoError,
    ReductionBlockedError,
    UnknownSurfaceError,
    ValidationError,
)
from pezzo._expected import expected_lct1
from pezzo._graph import DualGraph, dual_graph, graph_canonical, graph_iso
from pezzo._lattice import DivisorClass, pairing
from pezzo._lct import LctReport, Mode, config_lct, surface_lct1
from pezzo._local import Branch, Cluster, ExceptionalItem, local_lct
from pezzo._propagation import p1_step, p2_step, propagate_tables
from pezzo._surface import SingularityType, SurfaceModel, build_from_plane_spec
from pezzo.pezzo import LctRow, Pezzo, VerifyReport

__all__ = [
    "Pezzo",
    "LctRow",
    "VerifyReport",
    "DivisorClass",
    "pairing",
    "SingularityType",
    "SurfaceModel",
    "build_from_plane_spec",
    "catalog_list",
    "catalog_get",
    "DivisorConfig",
    "decompose",
    "enumerate_anticanonical",
    "special_configs",
    "DualGraph",
    "dual_graph",
    "graph_canonical",
    "graph_iso",
    "p1_step",
    "p2_step",
    "propagate_tables",
    "Branch",
    "Cluster",
    "ExceptionalItem",
    "local_lct",
    "LctReport",
    "Mode",
    "config_lct",
    "surface_lct1",
    "expected_lct1",
    "PezzoError",
    "UnknownSurfaceError",
    "ValidationError",
    "NonCanonicalError",
    "ReductionBlockedError",
]
