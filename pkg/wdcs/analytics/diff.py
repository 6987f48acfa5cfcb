"""Version-over-version growth of per-relation edge counts."""

from fractions import Fraction
from math import floor
from typing import List, Optional, Sequence

from pydantic import BaseModel

from wdcs.analytics.stats import GraphStats
from wdcs.logging_config import get_logger

logger = get_logger(__name__)


class Growth(BaseModel):
    """Old and new count of one row; ``growth_pct`` is None when old is 0."""

    name: str
    old_count: int
    new_count: int
    growth_pct: Optional[int] = None
    status: str = "ok"


class DiffReport(BaseModel):
    relations: List[Growth]
    edges: Growth
    nodes: Growth
    old_digest: str = ""
    new_digest: str = ""


def growth_pct(old: int, new: int) -> Optional[int]:
    """``round(100 * new / old)``, halves rounded away from zero."""
    if old <= 0:
        return None
    q = Fraction(100 * new, old)
    return floor(q + Fraction(1, 2)) if q >= 0 else -floor(-q + Fraction(1, 2))


def growth(name: str, old: int, new: int) -> Growth:
    if old == 0:
        status = "new" if new > 0 else "absent"
    elif new == 0:
        status = "removed"
    else:
        status = "ok"
    return Growth(name=name, old_count=old, new_count=new, growth_pct=growth_pct(old, new), status=status)


def temporal_diff(old: GraphStats, new: GraphStats) -> DiffReport:
    """Per-relation and total growth from ``old`` to ``new``.

    Rows are ordered by new count, descending. A relation missing on one side
    counts 0 there and is flagged.
    """
    old_rel, new_rel = set(old.relation_histogram), set(new.relation_histogram)
    if old_rel != new_rel:
        logger.warning(
            "Relation vocabularies differ",
            only_old=sorted(old_rel - new_rel),
            only_new=sorted(new_rel - old_rel),
        )
    rows = [
        growth(rel, old.relation_histogram.get(rel, 0), new.relation_histogram.get(rel, 0))
        for rel in old_rel | new_rel
    ]
    rows.sort(key=lambda g: (-g.new_count, g.name))
    return DiffReport(
        relations=rows,
        edges=growth("edges", old.edge_count, new.edge_count),
        nodes=growth("nodes", old.node_count, new.node_count),
        old_digest=old.input_digest,
        new_digest=new.input_digest,
    )


def temporal_series(base: GraphStats, versions: Sequence[GraphStats]) -> List[DiffReport]:
    """Diff each later version against the same baseline."""
    return [temporal_diff(base, v) for v in versions]


def format_count(n: int) -> str:
    return f"{n:,}"


def format_growth(g: Growth) -> str:
    """``72,707 (230%)``; rows without a baseline render as ``345 (new)``."""
    if g.growth_pct is None:
        return f"{format_count(g.new_count)} ({g.status})"
    return f"{format_count(g.new_count)} ({g.growth_pct:,}%)"


def render_diff(report: DiffReport) -> str:
    return render_series(("old", "new"), [report])


def render_series(names: Sequence[str], reports: Sequence[DiffReport]) -> str:
    """Side-by-side TSV: baseline counts, then ``count (growth%)`` per version.

    ``names`` holds the baseline name followed by one name per report.
    """
    if not reports:
        return ""
    lines = ["\t".join(("relation",) + tuple(names))]

    def row(label: str, cells: List[Growth]) -> str:
        base = format_count(cells[0].old_count)
        return "\t".join([label, base] + [format_growth(g) for g in cells])

    order = [g.name for g in reports[-1].relations]
    for name in order:
        cells = []
        for r in reports:
            match = next((g for g in r.relations if g.name == name), None)
            cells.append(match or growth(name, 0, 0))
        lines.append(row(name, cells))
    lines.append(row("edges", [r.edges for r in reports]))
    lines.append(row("nodes", [r.nodes for r in reports]))
    return "\n".join(lines) + "\n"
