"""Commonness filter: keep edges whose labels are common words or phrases."""

import math
import re
from typing import Dict, Iterable, Iterator, Optional

from pydantic import BaseModel, ConfigDict, Field

from wdcs.config import Combiner
from wdcs.errors import FrequencyTableError, InputFileError
from wdcs.kgtk.codec import unescape
from wdcs.kgtk.records import EdgeRecord, StageTally
from wdcs.logging_config import get_logger

logger = get_logger(__name__)

_WHITESPACE = re.compile(r"[ \t\n\r\x0b\x0c]+")


class CommonnessThreshold(BaseModel):
    """Minimum usage frequency for both endpoint labels."""

    model_config = ConfigDict(frozen=True)

    value: float = Field(1e-6, gt=0)
    strict_above: bool = False

    def passes(self, frequency: float) -> bool:
        return frequency > self.value if self.strict_above else frequency >= self.value


class FrequencyTable:
    """Lowercased term -> corpus usage frequency in (0, 1]. Immutable after load."""

    def __init__(self, frequencies: Dict[str, float], combiner: Combiner = Combiner.MIN):
        self._frequencies = frequencies
        self.combiner = Combiner(combiner)
        self.duplicates = 0
        self.source = "memory"

    def lookup(self, term: str) -> float:
        return self._frequencies.get(term.lower(), 0.0)

    def __len__(self) -> int:
        return len(self._frequencies)

    def __contains__(self, term: object) -> bool:
        return isinstance(term, str) and term.lower() in self._frequencies

    def phrase_frequency(self, label: str) -> float:
        """Frequency of a label; multi-token labels combine per-token values.

        An exact phrase entry wins over combination. Under ``min`` a phrase is
        as common as its rarest token, so one unknown token gives 0.
        """
        phrase = _WHITESPACE.sub(" ", label.strip()).lower()
        if not phrase:
            return 0.0
        exact = self._frequencies.get(phrase)
        if exact is not None:
            return exact
        tokens = phrase.split(" ")
        if len(tokens) == 1 or self.combiner is Combiner.LOOKUP:
            return 0.0
        values = [self._frequencies.get(t, 0.0) for t in tokens]
        if self.combiner is Combiner.PRODUCT:
            return math.prod(values)
        return min(values)


def phrase_frequency(table: FrequencyTable, label: str) -> float:
    return table.phrase_frequency(label)


def load_frequency_table(path: str, combiner: Combiner = Combiner.MIN) -> FrequencyTable:
    """Load a ``term<TAB>frequency`` file; duplicate terms keep the maximum."""
    frequencies: Dict[str, float] = {}
    duplicates = 0
    try:
        with open(path, "r", encoding="utf-8") as f:
            for line_number, raw in enumerate(f, start=1):
                line = raw.rstrip("\r\n")
                if not line.strip():
                    continue
                fields = line.split("\t")
                if line_number == 1 and [c.strip().lower() for c in fields] == ["term", "frequency"]:
                    continue
                if len(fields) != 2:
                    raise FrequencyTableError(path, line_number, f"expected 2 columns, found {len(fields)}")
                term = unescape(fields[0]).strip().lower()
                if not term:
                    raise FrequencyTableError(path, line_number, "empty term")
                try:
                    frequency = float(fields[1])
                except ValueError:
                    raise FrequencyTableError(
                        path, line_number, f"not a number: {fields[1]!r}"
                    ) from None
                if not math.isfinite(frequency) or frequency <= 0 or frequency > 1:
                    raise FrequencyTableError(
                        path, line_number, f"frequency {fields[1]} outside (0, 1]"
                    )
                if term in frequencies:
                    duplicates += 1
                    frequency = max(frequency, frequencies[term])
                frequencies[term] = frequency
    except OSError as e:
        raise InputFileError(path, e.strerror or str(e)) from e
    except UnicodeDecodeError as e:
        raise InputFileError(path, f"not UTF-8: {e}") from e

    table = FrequencyTable(frequencies, combiner)
    table.duplicates = duplicates
    table.source = str(path)
    if duplicates:
        logger.warning("Duplicate frequency terms, maximum kept", path=path, duplicates=duplicates)
    logger.info("Loaded frequency table", path=path, terms=len(table), combiner=table.combiner.value)
    return table


def filter_common_edges(
    edges: Iterable[EdgeRecord],
    table: FrequencyTable,
    threshold: Optional[CommonnessThreshold] = None,
    tally: Optional[StageTally] = None,
) -> Iterator[EdgeRecord]:
    """Keep edges whose node1 and node2 labels both reach the threshold."""
    threshold = threshold or CommonnessThreshold()
    tally = tally or StageTally("commonness_filter")
    for edge in edges:
        if is_common_edge(edge, table, threshold):
            tally.kept += 1
            yield edge
        else:
            tally.removed += 1


def is_common_edge(edge: EdgeRecord, table: FrequencyTable, threshold: CommonnessThreshold) -> bool:
    if not edge.node1_label or not edge.node2_label:
        return False
    return threshold.passes(table.phrase_frequency(edge.node1_label)) and threshold.passes(
        table.phrase_frequency(edge.node2_label)
    )
