"""Relation mapping, blacklisting and consolidation into CSKG edges."""

import itertools
from enum import Enum
from typing import FrozenSet, Iterable, Iterator, NamedTuple, Optional, Tuple, Union

from wdcs.errors import IdCollisionError
from wdcs.kgtk.records import EdgeRecord, StageTally
from wdcs.kgtk.sort import DEFAULT_CHUNK_SIZE, external_sort
from wdcs.mapping.table import SYMMETRIC_RELATIONS, Action, MappingTable, local_name

BlacklistSet = FrozenSet[str]

SOURCE_WIKIDATA = "WD"
MAX_ID_SUFFIX = 9999


class DropReason(str, Enum):
    UNMAPPED = "unmapped-relation"
    BLACKLIST = "blacklist-relation"


class MappedEdge(NamedTuple):
    """An edge rewritten to a ConceptNet relation, remembering its statement."""

    node1: str
    relation: str
    node2: str
    node1_label: Optional[str]
    node2_label: Optional[str]
    relation_label: str
    original_property: str
    original_node1: str
    original_node2: str


class Dropped(NamedTuple):
    reason: DropReason
    edge: EdgeRecord


Provenance = Tuple[str, str, str]


class CskgEdge(NamedTuple):
    """One row of the 10-column CSKG edge file."""

    id: str
    node1: str
    relation: str
    node2: str
    node1_label: Optional[str]
    node2_label: Optional[str]
    relation_label: str
    relation_dimension: str = ""
    source: str = SOURCE_WIKIDATA
    sentence: str = ""
    provenance: Tuple[Provenance, ...] = ()

    def to_row(self) -> Tuple[Optional[str], ...]:
        return self[:10]


def build_blacklist(edges: Iterable[EdgeRecord], table: MappingTable) -> BlacklistSet:
    """Every endpoint of an edge whose property is a drop-and-blacklist one."""
    nodes = set()
    for edge in edges:
        rule = table.rule_for(edge.relation)
        if rule is not None and rule.action is Action.DROP_BLACKLIST:
            nodes.add(edge.node1)
            nodes.add(edge.node2)
    return frozenset(nodes)


def map_edge(edge: EdgeRecord, table: MappingTable) -> Union[MappedEdge, Dropped]:
    """Rewrite one edge per its property's rule; inverse rules swap endpoints."""
    rule = table.rule_for(edge.relation)
    if rule is None or rule.action is Action.DROP:
        return Dropped(DropReason.UNMAPPED, edge)
    if rule.action is Action.DROP_BLACKLIST:
        return Dropped(DropReason.BLACKLIST, edge)

    if rule.action is Action.INVERSE:
        node1, node2 = edge.node2, edge.node1
        node1_label, node2_label = edge.node2_label, edge.node1_label
    else:
        node1, node2 = edge.node1, edge.node2
        node1_label, node2_label = edge.node1_label, edge.node2_label
    return MappedEdge(
        node1,
        rule.target,
        node2,
        node1_label,
        node2_label,
        rule.target_label,
        edge.relation,
        edge.node1,
        edge.node2,
    )


def apply_blacklist(
    edges: Iterable[MappedEdge],
    blacklist: BlacklistSet,
    tally: Optional[StageTally] = None,
) -> Iterator[MappedEdge]:
    """Drop edges with either endpoint in the blacklist."""
    tally = tally or StageTally("blacklist")
    for edge in edges:
        if edge.node1 in blacklist or edge.node2 in blacklist:
            tally.removed += 1
        else:
            tally.kept += 1
            yield edge


def _canonical(edge: MappedEdge) -> MappedEdge:
    if edge.relation in SYMMETRIC_RELATIONS and edge.node2 < edge.node1:
        return edge._replace(
            node1=edge.node2,
            node2=edge.node1,
            node1_label=edge.node2_label,
            node2_label=edge.node1_label,
        )
    return edge


def base_edge_id(node1: str, relation: str, node2: str) -> str:
    return f"{node1}-{local_name(relation)}-{node2}"


def _group_key(edge: MappedEdge) -> Tuple[str, str, str, str]:
    return (base_edge_id(edge.node1, edge.relation, edge.node2), edge.node1, edge.relation, edge.node2)


def _by_id(edge: CskgEdge) -> str:
    return edge.id


def consolidate(
    edges: Iterable[MappedEdge],
    symmetric_canonicalization: bool = False,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    tmpdir: Optional[str] = None,
    tally: Optional[StageTally] = None,
) -> Iterator[CskgEdge]:
    """Merge duplicate triples into CSKG edges with ids, sorted by id.

    Each output edge lists the source statements merged into it; the list is
    sorted so the result does not depend on input order.
    """
    tally = tally or StageTally("consolidate")
    if symmetric_canonicalization:
        edges = (_canonical(e) for e in edges)

    def assign_ids() -> Iterator[CskgEdge]:
        grouped = itertools.groupby(
            external_sort(edges, _group_key, chunk_size=chunk_size, tmpdir=tmpdir), key=_group_key
        )
        for base_id, same_base in itertools.groupby(grouped, key=lambda g: g[0][0]):
            for suffix, ((_, node1, relation, node2), group) in enumerate(same_base):
                if suffix > MAX_ID_SUFFIX:
                    raise IdCollisionError(base_id)
                members = list(group)
                first = members[0]
                tally.kept += 1
                tally.removed += len(members) - 1
                yield CskgEdge(
                    id=base_id if suffix == 0 else f"{base_id}-{suffix:04d}",
                    node1=node1,
                    relation=relation,
                    node2=node2,
                    node1_label=first.node1_label,
                    node2_label=first.node2_label,
                    relation_label=first.relation_label,
                    provenance=tuple(
                        sorted({(m.original_property, m.original_node1, m.original_node2) for m in members})
                    ),
                )

    yield from external_sort(assign_ids(), _by_id, chunk_size=chunk_size, tmpdir=tmpdir)
