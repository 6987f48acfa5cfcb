"""Statistics, PageRank, overlap, temporal diff and relation frequencies."""

from wdcs.analytics.diff import DiffReport, Growth, growth_pct, temporal_diff, temporal_series
from wdcs.analytics.freqdist import relation_frequency_distribution
from wdcs.analytics.overlap import OverlapReport, compute_overlap, compute_overlap_by_source
from wdcs.analytics.pagerank import PageRankResult, pagerank
from wdcs.analytics.stats import GraphStats, RankedNode, compute_stats, render_stats

__all__ = [
    "DiffReport",
    "GraphStats",
    "Growth",
    "OverlapReport",
    "PageRankResult",
    "RankedNode",
    "compute_overlap",
    "compute_overlap_by_source",
    "compute_stats",
    "growth_pct",
    "pagerank",
    "relation_frequency_distribution",
    "render_stats",
    "temporal_diff",
    "temporal_series",
]
