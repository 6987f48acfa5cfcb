"""Per-edge predicates for the concept and commonness principles."""

from wdcs.filters.commonness import (
    CommonnessThreshold,
    FrequencyTable,
    filter_common_edges,
    load_frequency_table,
    phrase_frequency,
)
from wdcs.filters.concept import ConceptRule, concept_node_ids, filter_concept_edges, is_concept_label

__all__ = [
    "CommonnessThreshold",
    "ConceptRule",
    "FrequencyTable",
    "concept_node_ids",
    "filter_common_edges",
    "filter_concept_edges",
    "is_concept_label",
    "load_frequency_table",
    "phrase_frequency",
]
