"""PageRank by power iteration over a sparse column-stochastic matrix."""

from typing import Dict, Hashable, Iterable, List, Tuple

import numpy as np
from pydantic import BaseModel
from scipy.sparse import csr_matrix

from wdcs.logging_config import get_logger

logger = get_logger(__name__)


class PageRankResult(BaseModel):
    scores: Dict[str, float]
    iterations: int
    converged: bool


def pagerank_arrays(
    n: int,
    src: np.ndarray,
    dst: np.ndarray,
    damping: float = 0.85,
    tolerance: float = 1e-9,
    max_iterations: int = 200,
) -> Tuple[np.ndarray, int, bool]:
    """PageRank over nodes ``0..n-1`` with edges ``src[i] -> dst[i]``.

    Parallel edges add weight. Mass on nodes without out-edges is spread
    uniformly. Stops once the L1 change drops below ``tolerance``.
    """
    if n <= 0:
        raise ValueError("pagerank needs a nonempty graph")
    if not 0 < damping < 1:
        raise ValueError(f"damping must be in (0, 1), got {damping}")

    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    out_weight = np.bincount(src, minlength=n).astype(np.float64)
    weights = 1.0 / out_weight[src] if len(src) else np.zeros(0)
    transition = csr_matrix((weights, (dst, src)), shape=(n, n))
    dangling = out_weight == 0

    x = np.full(n, 1.0 / n)
    teleport = (1.0 - damping) / n
    converged = False
    iterations = 0
    while iterations < max_iterations:
        iterations += 1
        x_next = damping * (transition @ x + x[dangling].sum() / n) + teleport
        x_next /= x_next.sum()
        change = np.abs(x_next - x).sum()
        x = x_next
        if change < tolerance:
            converged = True
            break

    if not converged:
        logger.warning(
            "PageRank did not converge", iterations=iterations, tolerance=tolerance, nodes=n
        )
    return x, iterations, converged


def pagerank(
    edges: Iterable[Tuple[Hashable, Hashable]],
    damping: float = 0.85,
    tolerance: float = 1e-9,
    max_iterations: int = 200,
) -> PageRankResult:
    """PageRank scores keyed by node for an iterable of ``(source, target)`` pairs."""
    index: Dict[Hashable, int] = {}
    src: List[int] = []
    dst: List[int] = []
    for a, b in edges:
        src.append(index.setdefault(a, len(index)))
        dst.append(index.setdefault(b, len(index)))

    scores, iterations, converged = pagerank_arrays(
        len(index), np.array(src), np.array(dst), damping, tolerance, max_iterations
    )
    nodes = list(index)
    return PageRankResult(
        scores={str(nodes[i]): float(scores[i]) for i in range(len(nodes))},
        iterations=iterations,
        converged=converged,
    )
