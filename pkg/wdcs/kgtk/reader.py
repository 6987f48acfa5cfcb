"""Streaming readers for KGTK edge and node files."""

import hashlib
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from wdcs.errors import InputFileError, MalformedRowError, MissingColumnError
from wdcs.kgtk.codec import unescape
from wdcs.kgtk.records import (
    EDGE_COLUMN_ATTRS,
    ID,
    LABEL,
    NODE1,
    NODE2,
    RELATION,
    EdgeRecord,
    LabelMap,
    NodeRecord,
    ReadStats,
    parse_label_value,
)
from wdcs.logging_config import get_logger

logger = get_logger(__name__)


def read_header(path: str) -> Tuple[str, ...]:
    """Return the column names from the first line of a TSV file."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            first = f.readline()
    except OSError as e:
        raise InputFileError(path, e.strerror or str(e)) from e
    except UnicodeDecodeError as e:
        raise InputFileError(path, f"not UTF-8: {e}") from e
    if not first:
        raise InputFileError(path, "file is empty, expected a header line")
    return tuple(unescape(c) for c in first.rstrip("\r\n").split("\t"))


class _TsvReader:
    """Base for header-driven TSV readers that can be iterated repeatedly."""

    required: Sequence[str] = ()

    def __init__(self, path: str, strict: bool = False):
        self.path = str(path)
        self.strict = strict
        self.header = read_header(self.path)
        self.stats = ReadStats(path=self.path)
        self.positions: Dict[str, int] = {}
        for i, name in enumerate(self.header):
            self.positions.setdefault(name, i)

    def _require(self, *alternatives: str) -> int:
        for name in alternatives:
            if name in self.positions:
                return self.positions[name]
        raise MissingColumnError(self.path, alternatives[0])

    def _rows(self) -> Iterator[Tuple[int, List[str]]]:
        """Yield ``(line_number, fields)`` for well-shaped data rows."""
        width = len(self.header)
        try:
            with open(self.path, "r", encoding="utf-8", newline="\n") as f:
                f.readline()
                for line_number, line in enumerate(f, start=2):
                    line = line.rstrip("\r\n")
                    if not line:
                        continue
                    fields = line.split("\t")
                    if len(fields) != width:
                        self._malformed(
                            line_number, f"expected {width} columns, found {len(fields)}"
                        )
                        continue
                    yield line_number, fields
        except OSError as e:
            raise InputFileError(self.path, e.strerror or str(e)) from e
        except UnicodeDecodeError as e:
            raise InputFileError(self.path, f"not UTF-8: {e}") from e
        if self.stats.malformed:
            logger.warning(
                "Skipped malformed rows", path=self.path, malformed=self.stats.malformed
            )

    def _malformed(self, line_number: int, reason: str) -> None:
        if self.strict:
            raise MalformedRowError(self.path, line_number, reason)
        self.stats.malformed += 1


class EdgeReader(_TsvReader):
    """Iterable over the EdgeRecords of an edge file, in file order.

    The header is validated on construction; each iteration re-reads the
    file, so a reader can drive several passes.
    """

    def __init__(self, path: str, strict: bool = False):
        super().__init__(path, strict)
        self._node1 = self._require(NODE1)
        self._relation = self._require(RELATION, LABEL)
        self._node2 = self._require(NODE2)
        self._optional = [
            (attr, self.positions[column])
            for column, attr in EDGE_COLUMN_ATTRS.items()
            if column not in (NODE1, RELATION, NODE2) and column in self.positions
        ]

    def __iter__(self) -> Iterator[EdgeRecord]:
        self.stats = ReadStats(path=self.path)
        n1, rel, n2 = self._node1, self._relation, self._node2
        optional = self._optional
        for line_number, fields in self._rows():
            node1, relation, node2 = fields[n1], fields[rel], fields[n2]
            if not node1 or not relation or not node2:
                self._malformed(line_number, "empty node1, relation or node2")
                continue
            extra = {}
            for attr, pos in optional:
                value = fields[pos]
                if value:
                    extra[attr] = unescape(value)
            self.stats.rows += 1
            yield EdgeRecord(unescape(node1), unescape(relation), unescape(node2), **extra)


class NodeReader(_TsvReader):
    """Iterable over the NodeRecords of a node file."""

    def __init__(self, path: str, strict: bool = False):
        super().__init__(path, strict)
        self._id = self._require(ID)
        self._label = self._require(LABEL)

    def __iter__(self) -> Iterator[NodeRecord]:
        self.stats = ReadStats(path=self.path)
        for line_number, fields in self._rows():
            node_id = fields[self._id]
            if not node_id:
                self._malformed(line_number, "empty id")
                continue
            self.stats.rows += 1
            label = fields[self._label]
            yield NodeRecord(unescape(node_id), unescape(label) if label else None)


def read_edge_file(path: str, strict: bool = False) -> EdgeReader:
    """Open an edge file for streaming; raises on a missing required column."""
    return EdgeReader(path, strict=strict)


def read_node_file(path: str, strict: bool = False) -> NodeReader:
    """Open a node file for streaming."""
    return NodeReader(path, strict=strict)


def select_label(raw: Optional[str], language_tag: str) -> Optional[str]:
    """Pick the first label in ``language_tag`` from a raw label cell.

    Untagged values are taken as already being in the requested language.
    """
    if not raw:
        return None
    for text, language in parse_label_value(raw):
        if text and (language is None or language == language_tag):
            return text
    return None


def read_node_labels(
    path: str,
    language_tag: str = "en",
    strict: bool = False,
    keep: Optional[Callable[[str], bool]] = None,
) -> LabelMap:
    """Load id -> label for one language; nodes without such a label are absent.

    ``keep`` optionally restricts which label texts are stored. Duplicate ids
    resolve last-wins before ``keep`` is applied, so a later rejected label
    removes the id.
    """
    reader = read_node_file(path, strict=strict)
    labels = LabelMap(language_tag)
    for node in reader:
        label = select_label(node.label, language_tag)
        if label is None:
            continue
        if keep is None or keep(label):
            labels.add(node.id, label)
        else:
            labels.reject(node.id)
    labels.seal()
    reader.stats.duplicates = labels.duplicates
    if labels.duplicates:
        logger.warning("Duplicate node ids, last label kept", path=path, duplicates=labels.duplicates)
    logger.info(
        "Loaded node labels",
        path=path,
        language=language_tag,
        labels=len(labels),
        rows=reader.stats.rows,
        malformed=reader.stats.malformed,
    )
    return labels


def file_digest(path: str, block_size: int = 1 << 20) -> str:
    """SHA-256 of the file contents, prefixed with the algorithm name."""
    digest = hashlib.sha256()
    try:
        with open(path, "rb") as f:
            for block in iter(lambda: f.read(block_size), b""):
                digest.update(block)
    except OSError as e:
        raise InputFileError(str(path), e.strerror or str(e)) from e
    return f"sha256:{digest.hexdigest()}"


def ensure_readable(path: str) -> Path:
    """Fail early with the path named when an input is missing."""
    p = Path(path)
    if not p.is_file():
        raise InputFileError(str(path), "no such file")
    return p
