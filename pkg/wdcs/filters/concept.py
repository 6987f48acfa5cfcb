"""Concept filter: keep edges between concepts, not named entities.

Wikidata labels concepts in lowercase and capitalizes named entities, so a
label is taken to name a concept when it starts with a lowercase letter and
contains no uppercase or titlecase letter anywhere.
"""

import re
import unicodedata
from typing import Iterable, Iterator, Literal, Optional, Set

from pydantic import BaseModel, ConfigDict

from wdcs.kgtk.records import EdgeRecord, LabelMap, StageTally

_ASCII_UPPER = re.compile(r"[A-Z]")
_UPPER_CATEGORIES = frozenset({"Lu", "Lt"})


class ConceptRule(BaseModel):
    """Switches for the label heuristic; defaults are the published rule."""

    model_config = ConfigDict(frozen=True)

    require_lowercase_first: bool = True
    forbid_any_uppercase: bool = True
    allow_leading_digit: bool = False
    require_label_present: Literal[True] = True


DEFAULT_RULE = ConceptRule()


def _has_uppercase(label: str) -> bool:
    if label.isascii():
        return _ASCII_UPPER.search(label) is not None
    return any(unicodedata.category(c) in _UPPER_CATEGORIES for c in label)


def is_concept_label(label: Optional[str], rule: ConceptRule = DEFAULT_RULE) -> bool:
    """True iff the label is present and passes the lowercase heuristic."""
    if not label:
        return False
    if rule.require_lowercase_first:
        first = label[0]
        if unicodedata.category(first) != "Ll" and not (
            rule.allow_leading_digit and unicodedata.category(first) == "Nd"
        ):
            return False
    if rule.forbid_any_uppercase and _has_uppercase(label):
        return False
    return True


def filter_concept_edges(
    edges: Iterable[EdgeRecord],
    rule: ConceptRule = DEFAULT_RULE,
    tally: Optional[StageTally] = None,
) -> Iterator[EdgeRecord]:
    """Keep edges whose node1 and node2 labels both name concepts."""
    tally = tally or StageTally("concept_filter")
    for edge in edges:
        if is_concept_label(edge.node1_label, rule) and is_concept_label(edge.node2_label, rule):
            tally.kept += 1
            yield edge
        else:
            tally.removed += 1


def concept_node_ids(labels: LabelMap, rule: ConceptRule = DEFAULT_RULE) -> Set[str]:
    """Ids of nodes whose label names a concept (the ifexists keep-set)."""
    return {node_id for node_id, label in labels.items() if is_concept_label(label, rule)}
