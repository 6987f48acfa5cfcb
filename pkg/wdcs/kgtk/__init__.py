"""Streaming I/O and relational primitives for KGTK tabular files."""

from wdcs.kgtk.ops import JoinMode, compact, filter_if_exists, lift_labels
from wdcs.kgtk.reader import (
    EdgeReader,
    NodeReader,
    file_digest,
    read_edge_file,
    read_node_file,
    read_node_labels,
)
from wdcs.kgtk.records import EdgeRecord, LabelMap, NodeRecord, ReadStats, StageTally
from wdcs.kgtk.sort import external_sort
from wdcs.kgtk.writer import atomic_output, edge_writer, write_edge_file, write_node_file

__all__ = [
    "EdgeReader",
    "EdgeRecord",
    "JoinMode",
    "LabelMap",
    "NodeReader",
    "NodeRecord",
    "ReadStats",
    "StageTally",
    "atomic_output",
    "compact",
    "edge_writer",
    "external_sort",
    "file_digest",
    "filter_if_exists",
    "lift_labels",
    "read_edge_file",
    "read_node_file",
    "read_node_labels",
    "write_edge_file",
    "write_node_file",
]
