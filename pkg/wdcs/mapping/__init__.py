"""Relation mapping to ConceptNet and consolidation into CSKG edges."""

from wdcs.mapping.consolidate import (
    BlacklistSet,
    CskgEdge,
    Dropped,
    DropReason,
    MappedEdge,
    apply_blacklist,
    build_blacklist,
    consolidate,
    map_edge,
)
from wdcs.mapping.table import Action, MappingRule, MappingTable, load_mapping

__all__ = [
    "Action",
    "BlacklistSet",
    "CskgEdge",
    "DropReason",
    "Dropped",
    "MappedEdge",
    "MappingRule",
    "MappingTable",
    "apply_blacklist",
    "build_blacklist",
    "consolidate",
    "load_mapping",
    "map_edge",
]
