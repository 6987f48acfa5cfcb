"""Relational stream operators: lift, ifexists join, compact."""

import itertools
import operator
from enum import Enum
from typing import AbstractSet, Iterable, Iterator, Optional, Sequence

from wdcs.kgtk.records import EDGE_COLUMN_ATTRS, TRIPLE_KEY, EdgeRecord, LabelMap, StageTally
from wdcs.kgtk.sort import DEFAULT_CHUNK_SIZE, external_sort


_ALWAYS_PRESENT = frozenset({"id", "node1", "relation", "node2"})


class JoinMode(str, Enum):
    BOTH = "both-endpoints"
    EITHER = "either-endpoint"


def lift_labels(edges: Iterable[EdgeRecord], labels: LabelMap) -> Iterator[EdgeRecord]:
    """Attach node1/node2 labels from ``labels``; missing ids get None."""
    get = labels.get
    for edge in edges:
        node1_label = get(edge.node1)
        node2_label = get(edge.node2)
        if node1_label == edge.node1_label and node2_label == edge.node2_label:
            yield edge
        else:
            yield edge._replace(node1_label=node1_label, node2_label=node2_label)


def filter_if_exists(
    edges: Iterable[EdgeRecord],
    keep: AbstractSet[str],
    mode: JoinMode = JoinMode.BOTH,
    tally: Optional[StageTally] = None,
) -> Iterator[EdgeRecord]:
    """Keep edges whose endpoints are in ``keep`` (both, or either, per mode)."""
    tally = tally or StageTally("filter_if_exists")
    both = JoinMode(mode) is JoinMode.BOTH
    for edge in edges:
        in1 = edge.node1 in keep
        in2 = edge.node2 in keep
        if (in1 and in2) if both else (in1 or in2):
            tally.kept += 1
            yield edge
        else:
            tally.removed += 1


def _key_attrs(key: Sequence[str]) -> list:
    attrs = []
    for column in key:
        if column in EDGE_COLUMN_ATTRS:
            attrs.append(EDGE_COLUMN_ATTRS[column])
        elif column in EDGE_COLUMN_ATTRS.values():
            attrs.append(column)
        else:
            raise ValueError(f"unknown edge column: {column}")
    return attrs


def compact(
    edges: Iterable[EdgeRecord],
    key: Sequence[str] = TRIPLE_KEY,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    tmpdir: Optional[str] = None,
    tally: Optional[StageTally] = None,
) -> Iterator[EdgeRecord]:
    """One record per distinct key, the first seen, output sorted by key.

    Optional key columns that are None sort before any string.
    """
    tally = tally or StageTally("compact")
    attrs = _key_attrs(key)
    if set(attrs) <= _ALWAYS_PRESENT and len(attrs) > 1:
        sort_key = operator.attrgetter(*attrs)
    else:
        getter = operator.attrgetter(*attrs)

        def sort_key(edge: EdgeRecord) -> tuple:
            value = getter(edge)
            values = value if len(attrs) > 1 else (value,)
            return tuple((v is not None, v or "") for v in values)

    for _, group in itertools.groupby(
        external_sort(edges, sort_key, chunk_size=chunk_size, tmpdir=tmpdir), key=sort_key
    ):
        tally.kept += 1
        yield next(group)
        tally.removed += sum(1 for _ in group)
