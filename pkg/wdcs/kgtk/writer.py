"""Atomic TSV writers for edge and node files."""

import os
import tempfile
from contextlib import contextmanager
from pathlib import Path
from typing import IO, Iterable, Iterator, Optional, Sequence

from wdcs.errors import InputFileError
from wdcs.kgtk.codec import escape
from wdcs.kgtk.records import EDGE_COLUMN_ATTRS, EDGE_COLUMNS, ID, LABEL, EdgeRecord, NodeRecord


@contextmanager
def atomic_output(path: str) -> Iterator[IO[str]]:
    """Write to a sibling temp file and rename it over ``path`` on success.

    On any exception the temp file is removed and ``path`` is left untouched.
    """
    target = Path(path)
    directory = target.parent if str(target.parent) else Path(".")
    try:
        directory.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=directory)
    except OSError as e:
        raise InputFileError(str(path), e.strerror or str(e)) from e

    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            yield f
        os.replace(tmp_name, target)
    except OSError as e:
        _discard(tmp_name)
        raise InputFileError(str(path), e.strerror or str(e)) from e
    except BaseException:
        _discard(tmp_name)
        raise


def _discard(tmp_name: str) -> None:
    try:
        os.unlink(tmp_name)
    except FileNotFoundError:
        pass


class TsvWriter:
    """Streaming writer of escaped TSV rows under a fixed header."""

    def __init__(self, handle: IO[str], columns: Sequence[str]):
        self.handle = handle
        self.columns = tuple(columns)
        self.rows = 0
        self.handle.write("\t".join(escape(c) for c in self.columns) + "\n")

    def write_row(self, values: Sequence[Optional[str]]) -> None:
        self.handle.write("\t".join("" if v is None else escape(v) for v in values) + "\n")
        self.rows += 1


def edge_row(record: EdgeRecord, columns: Sequence[str]) -> list:
    """Project an EdgeRecord onto ``columns``; unknown columns are empty."""
    return [
        getattr(record, EDGE_COLUMN_ATTRS[c]) if c in EDGE_COLUMN_ATTRS else None
        for c in columns
    ]


@contextmanager
def edge_writer(path: str, columns: Sequence[str] = EDGE_COLUMNS) -> Iterator["EdgeWriter"]:
    """Open an atomic edge file writer; the relation column is ``relation``."""
    with atomic_output(path) as f:
        yield EdgeWriter(f, columns)


class EdgeWriter(TsvWriter):
    def write(self, record: EdgeRecord) -> None:
        self.write_row(edge_row(record, self.columns))


def write_edge_file(
    path: str, records: Iterable[EdgeRecord], columns: Sequence[str] = EDGE_COLUMNS
) -> int:
    """Write all records; returns the number of rows written."""
    with edge_writer(path, columns) as writer:
        for record in records:
            writer.write(record)
    return writer.rows


def write_node_file(path: str, nodes: Iterable[NodeRecord]) -> int:
    with atomic_output(path) as f:
        writer = TsvWriter(f, (ID, LABEL))
        for node in nodes:
            writer.write_row((node.id, node.label))
    return writer.rows
