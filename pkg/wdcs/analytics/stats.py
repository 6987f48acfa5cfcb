"""Graph statistics over an edge file."""

from collections import Counter
from datetime import datetime, timezone
from fractions import Fraction
from typing import Dict, List, Mapping, Optional

import numpy as np
from pydantic import BaseModel, Field

from wdcs.analytics.pagerank import pagerank_arrays
from wdcs.kgtk.reader import file_digest, read_edge_file
from wdcs.logging_config import get_logger
from wdcs.performance import monitor_performance

logger = get_logger(__name__)


class RankedNode(BaseModel):
    node: str
    label: Optional[str] = None
    score: float


class GraphStats(BaseModel):
    """Counts, degree and PageRank summary for one graph.

    Degree counts every incident edge once regardless of direction, so
    ``mean_degree == 2 * edge_count / node_count``. It is None for an empty
    graph.
    """

    node_count: int
    edge_count: int
    relation_histogram: Dict[str, int] = Field(default_factory=dict)
    mean_degree: Optional[float] = None
    max_degree: int = 0
    degree_histogram: Dict[int, int] = Field(default_factory=dict)
    top_pagerank: List[RankedNode] = Field(default_factory=list)
    pagerank_converged: Optional[bool] = None
    produced_at: str = ""
    input_digest: str = ""

    def mean_degree_exact(self) -> Optional[Fraction]:
        if self.node_count == 0:
            return None
        return Fraction(2 * self.edge_count, self.node_count)

    @classmethod
    def from_counts(
        cls,
        relation_histogram: Mapping[str, int],
        node_count: int,
        edge_count: Optional[int] = None,
        input_digest: str = "",
    ) -> "GraphStats":
        """Stats from published per-relation counts, without an edge file."""
        edges = sum(relation_histogram.values()) if edge_count is None else edge_count
        return cls(
            node_count=node_count,
            edge_count=edges,
            relation_histogram=dict(relation_histogram),
            mean_degree=_mean_degree(edges, node_count),
            produced_at=_now(),
            input_digest=input_digest,
        )


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _mean_degree(edge_count: int, node_count: int) -> Optional[float]:
    if node_count == 0:
        return None
    return float(Fraction(2 * edge_count, node_count))


@monitor_performance("compute_stats")
def compute_stats(
    path: str,
    top_k: int = 10,
    damping: float = 0.85,
    tolerance: float = 1e-9,
    max_iterations: int = 200,
    strict: bool = False,
) -> GraphStats:
    """Single pass over ``path`` collecting counts, then PageRank in memory."""
    reader = read_edge_file(path, strict=strict)
    index: Dict[str, int] = {}
    labels: Dict[str, str] = {}
    src: List[int] = []
    dst: List[int] = []
    histogram: Counter = Counter()

    for edge in reader:
        a = index.setdefault(edge.node1, len(index))
        b = index.setdefault(edge.node2, len(index))
        src.append(a)
        dst.append(b)
        histogram[edge.relation] += 1
        if edge.node1_label and edge.node1 not in labels:
            labels[edge.node1] = edge.node1_label
        if edge.node2_label and edge.node2 not in labels:
            labels[edge.node2] = edge.node2_label

    node_count, edge_count = len(index), len(src)
    stats = GraphStats(
        node_count=node_count,
        edge_count=edge_count,
        relation_histogram=dict(sorted(histogram.items(), key=lambda kv: (-kv[1], kv[0]))),
        mean_degree=_mean_degree(edge_count, node_count),
        produced_at=_now(),
        input_digest=file_digest(path),
    )
    if node_count == 0:
        logger.warning("Empty graph, mean degree undefined", path=path)
        return stats

    src_arr = np.array(src, dtype=np.int64)
    dst_arr = np.array(dst, dtype=np.int64)
    degree = np.bincount(src_arr, minlength=node_count) + np.bincount(dst_arr, minlength=node_count)
    values, counts = np.unique(degree, return_counts=True)
    stats.max_degree = int(degree.max())
    stats.degree_histogram = {int(v): int(c) for v, c in zip(values, counts)}

    if top_k > 0:
        scores, iterations, converged = pagerank_arrays(
            node_count, src_arr, dst_arr, damping, tolerance, max_iterations
        )
        nodes = list(index)
        order = sorted(range(node_count), key=lambda i: (-scores[i], nodes[i]))[:top_k]
        stats.top_pagerank = [
            RankedNode(node=nodes[i], label=labels.get(nodes[i]), score=float(scores[i]))
            for i in order
        ]
        stats.pagerank_converged = converged

    logger.info(
        "Computed graph statistics",
        path=path,
        nodes=node_count,
        edges=edge_count,
        relations=len(histogram),
        mean_degree=stats.mean_degree,
    )
    return stats


def render_stats(stats: GraphStats) -> str:
    """TSV summary: counts, then the relation histogram, then top PageRank nodes.

    Sections are separated by a blank line and each starts with its own header.
    """
    mean = "" if stats.mean_degree is None else f"{stats.mean_degree:.6f}"
    converged = "" if stats.pagerank_converged is None else str(stats.pagerank_converged).lower()
    lines = [
        "statistic\tvalue",
        f"nodes\t{stats.node_count:,}",
        f"edges\t{stats.edge_count:,}",
        f"relations\t{len(stats.relation_histogram):,}",
        f"mean_degree\t{mean}",
        f"max_degree\t{stats.max_degree:,}",
        f"pagerank_converged\t{converged}",
        "",
        "relation\tcount",
    ]
    lines.extend(f"{rel}\t{count:,}" for rel, count in stats.relation_histogram.items())
    lines += ["", "rank\tnode\tlabel\tscore"]
    lines.extend(
        f"{rank}\t{r.node}\t{r.label or ''}\t{r.score:.6g}"
        for rank, r in enumerate(stats.top_pagerank, start=1)
    )
    return "\n".join(lines) + "\n"
