"""Lexical overlap between two edge files.

Two edges are equivalent when their subject labels, relation and object
labels match after lowercasing and trimming. A node with several labels
contributes one triple per label combination; counts are over distinct
expanded triples.
"""

import itertools
from collections import Counter
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterator, List, Optional, Set, Tuple

from pydantic import BaseModel

from wdcs.errors import MissingColumnError
from wdcs.kgtk.reader import EdgeReader, read_edge_file
from wdcs.kgtk.records import NODE1_LABEL, NODE2_LABEL, EdgeRecord, parse_label_value
from wdcs.kgtk.sort import DEFAULT_CHUNK_SIZE, external_sort
from wdcs.logging_config import get_logger
from wdcs.performance import monitor_performance

logger = get_logger(__name__)

COUNTING_BASIS = "expanded-label-triples"

LEFT, RIGHT = 0, 1

# (node1 label, relation, node2 label, side, right-hand source)
TaggedTriple = Tuple[str, str, str, int, str]


class OverlapReport(BaseModel):
    left: str
    right: str
    source: Optional[str] = None
    both: int
    left_only: int
    right_only: int
    left_only_pct: float
    right_only_pct: float
    counting_basis: str = COUNTING_BASIS


def share_pct(only: int, both: int) -> float:
    """``only / (only + both)`` as a percentage rounded half-up to 0.1."""
    total = only + both
    if total == 0:
        return 0.0
    pct = Decimal(100 * only) / Decimal(total)
    return float(pct.quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))


def label_variants(value: Optional[str]) -> List[str]:
    """All labels of a node, normalized for comparison."""
    if not value:
        return []
    seen = {}
    for text, _ in parse_label_value(value):
        text = text.strip().lower()
        if text:
            seen.setdefault(text)
    return list(seen)


def expand_label_triples(edge: EdgeRecord) -> Iterator[Tuple[str, str, str]]:
    for a, b in itertools.product(label_variants(edge.node1_label), label_variants(edge.node2_label)):
        yield (a, edge.relation, b)


def _labeled_reader(path: str) -> EdgeReader:
    reader = read_edge_file(path)
    for column in (NODE1_LABEL, NODE2_LABEL):
        if column not in reader.positions:
            raise MissingColumnError(path, column)
    return reader


def _tagged(reader: EdgeReader, side: int, by_source: bool) -> Iterator[TaggedTriple]:
    for edge in reader:
        source = (edge.source or "") if by_source else ""
        for a, rel, b in expand_label_triples(edge):
            yield (a, rel, b, side, source)


def _identity(item: TaggedTriple) -> TaggedTriple:
    return item


def _count(
    left: str, right: str, by_source: bool, chunk_size: int, tmpdir: Optional[str]
) -> Tuple[int, Counter, Counter]:
    left_reader = _labeled_reader(left)
    right_reader = _labeled_reader(right)
    items = itertools.chain(
        _tagged(left_reader, LEFT, False), _tagged(right_reader, RIGHT, by_source)
    )
    left_total = 0
    right_counts: Counter = Counter()
    both_counts: Counter = Counter()
    ordered = external_sort(items, _identity, chunk_size=chunk_size, tmpdir=tmpdir)
    for _, group in itertools.groupby(ordered, key=lambda t: t[:3]):
        in_left = False
        sources: Set[str] = set()
        for *_, side, source in group:
            if side == LEFT:
                in_left = True
            else:
                sources.add(source)
        left_total += in_left
        for source in sources:
            right_counts[source] += 1
            both_counts[source] += in_left
    return left_total, right_counts, both_counts


def _report(left: str, right: str, source: Optional[str], left_total: int, right_total: int, both: int) -> OverlapReport:
    left_only = left_total - both
    right_only = right_total - both
    return OverlapReport(
        left=left,
        right=right,
        source=source,
        both=both,
        left_only=left_only,
        right_only=right_only,
        left_only_pct=share_pct(left_only, both),
        right_only_pct=share_pct(right_only, both),
    )


@monitor_performance("compute_overlap")
def compute_overlap(
    left: str,
    right: str,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    tmpdir: Optional[str] = None,
) -> OverlapReport:
    """Shared and exclusive label triples of two labeled edge files."""
    left_total, right_counts, both_counts = _count(left, right, False, chunk_size, tmpdir)
    report = _report(left, right, None, left_total, right_counts[""], both_counts[""])
    logger.info("Computed overlap", left=left, right=right, both=report.both)
    return report


@monitor_performance("compute_overlap_by_source")
def compute_overlap_by_source(
    left: str,
    right: str,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    tmpdir: Optional[str] = None,
) -> List[OverlapReport]:
    """One report per value of the right file's ``source`` column."""
    left_total, right_counts, both_counts = _count(left, right, True, chunk_size, tmpdir)
    return [
        _report(left, right, source, left_total, right_counts[source], both_counts[source])
        for source in sorted(right_counts)
    ]


def render_overlap(reports: List[OverlapReport]) -> str:
    lines = ["source\tboth\tleft_only\tright_only"]
    for r in reports:
        lines.append(
            f"{r.source or r.right}\t{r.both:,}\t{r.left_only:,} ({r.left_only_pct:.1f}%)"
            f"\t{r.right_only:,} ({r.right_only_pct:.1f}%)"
        )
    return "\n".join(lines) + "\n"
