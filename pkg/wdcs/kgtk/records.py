"""Record types for tabular KGTK edge and node files."""

import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, NamedTuple, Optional, Set, Tuple

ID = "id"
NODE1 = "node1"
RELATION = "relation"
LABEL = "label"
NODE2 = "node2"
NODE1_LABEL = "node1;label"
NODE2_LABEL = "node2;label"
RELATION_LABEL = "relation;label"
RELATION_DIMENSION = "relation;dimension"
SOURCE = "source"
SENTENCE = "sentence"

# Header name -> EdgeRecord attribute. ``label`` is the KGTK spelling of the
# relation column and is accepted on input only.
EDGE_COLUMN_ATTRS: Dict[str, str] = {
    ID: "id",
    NODE1: "node1",
    RELATION: "relation",
    NODE2: "node2",
    NODE1_LABEL: "node1_label",
    NODE2_LABEL: "node2_label",
    RELATION_LABEL: "relation_label",
    SOURCE: "source",
    SENTENCE: "sentence",
}

EDGE_COLUMNS: Tuple[str, ...] = tuple(EDGE_COLUMN_ATTRS)

CSKG_COLUMNS: Tuple[str, ...] = (
    ID,
    NODE1,
    RELATION,
    NODE2,
    NODE1_LABEL,
    NODE2_LABEL,
    RELATION_LABEL,
    RELATION_DIMENSION,
    SOURCE,
    SENTENCE,
)

TRIPLE_KEY: Tuple[str, ...] = (NODE1, RELATION, NODE2)


class EdgeRecord(NamedTuple):
    """One directed labeled edge. Optional fields are None when absent."""

    node1: str
    relation: str
    node2: str
    id: str = ""
    node1_label: Optional[str] = None
    node2_label: Optional[str] = None
    relation_label: Optional[str] = None
    source: Optional[str] = None
    sentence: Optional[str] = None

    @property
    def triple(self) -> Tuple[str, str, str]:
        return (self.node1, self.relation, self.node2)


class NodeRecord(NamedTuple):
    """A node id with its raw (still language-qualified) label value."""

    id: str
    label: Optional[str] = None


@dataclass
class ReadStats:
    """Row tallies gathered while streaming a file."""

    path: str = ""
    rows: int = 0
    malformed: int = 0
    duplicates: int = 0


@dataclass
class StageTally:
    """Kept/removed counts for one stream stage."""

    name: str
    kept: int = 0
    removed: int = 0

    @property
    def seen(self) -> int:
        return self.kept + self.removed


_LANG_QUALIFIED = re.compile(r"^'(.*)'@([A-Za-z0-9-]+)$", re.DOTALL)
_MULTI_VALUE_SEPARATOR = re.compile(r"(?<!\\)\|")


def parse_label_value(value: str) -> Iterator[Tuple[str, Optional[str]]]:
    """Yield ``(text, language)`` for each ``|``-separated label value.

    ``'text'@lang`` yields the unquoted text and its tag; plain or
    double-quoted strings yield ``language=None``.
    """
    for part in _MULTI_VALUE_SEPARATOR.split(value):
        part = part.strip()
        if not part:
            continue
        match = _LANG_QUALIFIED.match(part)
        if match:
            yield match.group(1).replace("\\'", "'").replace("\\|", "|"), match.group(2)
        elif len(part) >= 2 and part[0] == part[-1] == '"':
            yield part[1:-1].replace('\\"', '"').replace("\\|", "|"), None
        else:
            yield part.replace("\\|", "|"), None


class LabelMap:
    """Node id -> label in one language. Absent ids resolve to None."""

    def __init__(self, language: Optional[str] = None):
        self.language = language
        self._labels: Dict[str, str] = {}
        self._rejected: Set[str] = set()
        self.duplicates = 0

    def add(self, node_id: str, label: str) -> None:
        """Store a label; a repeated id replaces the earlier one and is counted."""
        if node_id in self._labels or node_id in self._rejected:
            self.duplicates += 1
            self._rejected.discard(node_id)
        self._labels[node_id] = label

    def reject(self, node_id: str) -> None:
        """Record a row whose label is not kept; it still overrides an earlier label."""
        if node_id in self._labels or node_id in self._rejected:
            self.duplicates += 1
            self._labels.pop(node_id, None)
        self._rejected.add(node_id)

    def seal(self) -> None:
        """Drop the bookkeeping of rejected ids once loading is finished."""
        self._rejected = set()

    def get(self, node_id: str) -> Optional[str]:
        return self._labels.get(node_id)

    def items(self) -> Iterable[Tuple[str, str]]:
        return self._labels.items()

    def __contains__(self, node_id: object) -> bool:
        return node_id in self._labels

    def __len__(self) -> int:
        return len(self._labels)

    @classmethod
    def from_dict(cls, labels: Dict[str, str], language: Optional[str] = None) -> "LabelMap":
        label_map = cls(language)
        for node_id, label in labels.items():
            label_map.add(node_id, label)
        return label_map
