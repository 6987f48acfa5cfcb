"""Relation frequency distribution."""

from collections import Counter
from typing import AbstractSet, Iterable, List, Mapping, Tuple, Union

from wdcs.kgtk.records import EdgeRecord


def count_relations(edges: Iterable[EdgeRecord]) -> Counter:
    return Counter(edge.relation for edge in edges)


def relation_frequency_distribution(
    edges: Union[Iterable[EdgeRecord], Mapping[str, int]],
    top_k: int = 50,
    exclude: AbstractSet[str] = frozenset(),
) -> List[Tuple[str, int]]:
    """Most frequent relations, descending by count, ties by relation id.

    ``edges`` may also be a ready-made relation -> count mapping.
    """
    counts = edges if isinstance(edges, Mapping) else count_relations(edges)
    ranked = sorted(
        ((rel, n) for rel, n in counts.items() if rel not in exclude),
        key=lambda item: (-item[1], item[0]),
    )
    return ranked[:top_k]


def render_freqdist(rows: List[Tuple[str, int]]) -> str:
    lines = ["rank\trelation\tcount"]
    lines.extend(f"{rank}\t{rel}\t{count}" for rank, (rel, count) in enumerate(rows, start=1))
    return "\n".join(lines) + "\n"
