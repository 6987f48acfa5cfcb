"""Extraction of the commonsense subgraph from tabular Wikidata files."""

import itertools
import json
import tempfile
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from contextlib import ExitStack
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional

from pydantic import BaseModel, Field
from tqdm import tqdm

from wdcs.config import Settings
from wdcs.filters.commonness import (
    CommonnessThreshold,
    FrequencyTable,
    is_common_edge,
    load_frequency_table,
)
from wdcs.filters.concept import ConceptRule, concept_node_ids, filter_concept_edges, is_concept_label
from wdcs.kgtk.ops import JoinMode, compact, filter_if_exists, lift_labels
from wdcs.kgtk.reader import ensure_readable, file_digest, read_edge_file, read_node_labels
from wdcs.kgtk.records import CSKG_COLUMNS, EdgeRecord, StageTally
from wdcs.kgtk.writer import TsvWriter, atomic_output, edge_writer
from wdcs.logging_config import get_logger
from wdcs.mapping.consolidate import (
    CskgEdge,
    Dropped,
    MappedEdge,
    apply_blacklist,
    build_blacklist,
    consolidate,
    map_edge,
)
from wdcs.mapping.table import MappingTable, load_mapping
from wdcs.performance import PerformanceMonitor

logger = get_logger(__name__)

PROVENANCE_COLUMNS = ("final_edge_id", "original_property", "original_node1", "original_node2")
PARALLEL_CHUNK = 20_000


class StageCounts(BaseModel):
    input: int = 0
    after_concept_filter: int = 0
    after_compact: int = 0
    after_commonness_filter: int = 0
    after_mapping: int = 0
    after_blacklist: int = 0
    after_dedup: int = 0


class RelationCount(BaseModel):
    relation: str
    count: int


class ExtractionReport(BaseModel):
    """Stage-by-stage accounting of one extraction run."""

    counts: StageCounts = Field(default_factory=StageCounts)
    relation_census: List[RelationCount] = Field(default_factory=list)
    relations_entering_mapping: int = 0
    nodes_entering_mapping: int = 0
    mapped_fraction: float = 0.0
    dropped: Dict[str, Dict[str, int]] = Field(default_factory=dict)
    output_relations: Dict[str, int] = Field(default_factory=dict)
    blacklist_size: int = 0
    malformed_rows: Dict[str, int] = Field(default_factory=dict)
    duplicate_node_ids: int = 0
    duplicate_frequency_terms: int = 0
    configuration: Dict[str, Any] = Field(default_factory=dict)
    input_digests: Dict[str, str] = Field(default_factory=dict)
    stage_seconds: Dict[str, float] = Field(default_factory=dict)
    produced_at: str = ""

    def deterministic_dump(self) -> Dict[str, Any]:
        """The report without fields that vary between identical runs."""
        return self.model_dump(exclude={"produced_at", "stage_seconds"})


class CommonEdgePredicate:
    """Picklable commonness test, shipped once to each worker process."""

    def __init__(self, table: FrequencyTable, threshold: CommonnessThreshold):
        self.table = table
        self.threshold = threshold

    def __call__(self, edge: EdgeRecord) -> bool:
        return is_common_edge(edge, self.table, self.threshold)


_worker_predicate: Optional[Callable[[EdgeRecord], bool]] = None


def _init_worker(predicate: Callable[[EdgeRecord], bool]) -> None:
    global _worker_predicate
    _worker_predicate = predicate


def _evaluate_chunk(chunk: List[EdgeRecord]) -> List[bool]:
    return [_worker_predicate(edge) for edge in chunk]


def parallel_filter(
    edges: Iterable[EdgeRecord],
    predicate: Callable[[EdgeRecord], bool],
    jobs: int,
    tally: StageTally,
    chunk_size: int = PARALLEL_CHUNK,
) -> Iterator[EdgeRecord]:
    """Filter ``edges`` by ``predicate`` in worker processes, keeping order."""
    if jobs <= 1:
        for edge in edges:
            if predicate(edge):
                tally.kept += 1
                yield edge
            else:
                tally.removed += 1
        return

    iterator = iter(edges)
    chunks = iter(lambda: list(itertools.islice(iterator, chunk_size)), [])
    with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(predicate,)) as pool:
        pending = []
        for chunk in chunks:
            pending.append((chunk, pool.submit(_evaluate_chunk, chunk)))
            if len(pending) >= 2 * jobs:
                yield from _drain(pending.pop(0), tally)
        for item in pending:
            yield from _drain(item, tally)


def _drain(item, tally: StageTally) -> Iterator[EdgeRecord]:
    chunk, future = item
    for edge, keep in zip(chunk, future.result()):
        if keep:
            tally.kept += 1
            yield edge
        else:
            tally.removed += 1


def _progress(iterable: Iterable, settings: Settings, desc: str) -> Iterable:
    return tqdm(iterable, desc=desc, unit=" edges", disable=None if settings.progress else True)


class _Census:
    """Counts relations and nodes of the stream entering relation mapping."""

    def __init__(self):
        self.relations: Counter = Counter()
        self.nodes: set = set()

    def observe(self, edges: Iterable[EdgeRecord]) -> Iterator[EdgeRecord]:
        for edge in edges:
            self.relations[edge.relation] += 1
            self.nodes.add(edge.node1)
            self.nodes.add(edge.node2)
            yield edge


def run_extraction(
    edges_path: str,
    nodes_path: str,
    freq_path: str,
    out_path: str,
    report_path: str,
    settings: Settings,
    provenance_path: Optional[str] = None,
) -> ExtractionReport:
    """Filter, map and consolidate an edge file into a CSKG edge file.

    Writes the CSKG file, its provenance sidecar and the JSON report; all
    three appear together or not at all.
    """
    for path in (edges_path, nodes_path, freq_path):
        ensure_readable(path)
    if settings.mapping:
        ensure_readable(settings.mapping)

    monitor = PerformanceMonitor()
    report = ExtractionReport()
    rule = ConceptRule(allow_leading_digit=settings.allow_leading_digit)
    threshold = CommonnessThreshold(value=settings.threshold, strict_above=settings.strict_above)
    provenance_path = provenance_path or f"{out_path}.provenance.tsv"

    with monitor.stage("load"):
        mapping = load_mapping(settings.mapping)
        table = load_frequency_table(freq_path, settings.combiner)
        labels = read_node_labels(
            nodes_path,
            settings.language,
            strict=settings.strict,
            keep=lambda label: is_concept_label(label, rule),
        )
        concept_ids = concept_node_ids(labels, rule)
    report.duplicate_node_ids = labels.duplicates
    report.duplicate_frequency_terms = table.duplicates

    tallies = {
        "concept_nodes": StageTally("concept_nodes"),
        "concept_labels": StageTally("concept_labels"),
        "compact": StageTally("compact"),
        "commonness": StageTally("commonness"),
        "blacklist": StageTally("blacklist"),
        "consolidate": StageTally("consolidate"),
    }

    with ExitStack() as stack:
        spill_dir = stack.enter_context(tempfile.TemporaryDirectory(prefix="wdcs-", dir=settings.tmpdir))
        spill_path = str(Path(spill_dir) / "filtered.tsv")

        reader = read_edge_file(edges_path, strict=settings.strict)
        census = _Census()
        with monitor.stage("filter"):
            stream: Iterable[EdgeRecord] = _progress(reader, settings, "filter")
            stream = filter_if_exists(stream, concept_ids, JoinMode.BOTH, tallies["concept_nodes"])
            stream = lift_labels(stream, labels)
            stream = filter_concept_edges(stream, rule, tallies["concept_labels"])
            stream = compact(
                stream,
                chunk_size=settings.chunk_size,
                tmpdir=settings.tmpdir,
                tally=tallies["compact"],
            )
            stream = parallel_filter(
                stream, CommonEdgePredicate(table, threshold), settings.jobs, tallies["commonness"]
            )
            with edge_writer(spill_path) as spill:
                for edge in census.observe(stream):
                    spill.write(edge)
        report.malformed_rows[edges_path] = reader.stats.malformed
        report.counts.input = reader.stats.rows
        del labels, concept_ids

        with monitor.stage("blacklist"):
            blacklist = build_blacklist(read_edge_file(spill_path), mapping)
        report.blacklist_size = len(blacklist)

        dropped: Dict[str, Counter] = {}
        mapped_count = 0

        def mapped_edges() -> Iterator[MappedEdge]:
            nonlocal mapped_count
            for edge in read_edge_file(spill_path):
                result = map_edge(edge, mapping)
                if isinstance(result, Dropped):
                    dropped.setdefault(result.reason.value, Counter())[edge.relation] += 1
                else:
                    mapped_count += 1
                    yield result

        output_relations: Counter = Counter()
        out_file = stack.enter_context(atomic_output(out_path))
        prov_file = stack.enter_context(atomic_output(provenance_path))
        report_file = stack.enter_context(atomic_output(report_path))
        out_writer = TsvWriter(out_file, CSKG_COLUMNS)
        prov_writer = TsvWriter(prov_file, PROVENANCE_COLUMNS)

        with monitor.stage("consolidate"):
            edges: Iterable[MappedEdge] = apply_blacklist(mapped_edges(), blacklist, tallies["blacklist"])
            for cskg in consolidate(
                edges,
                symmetric_canonicalization=settings.symmetric_canonical,
                chunk_size=settings.chunk_size,
                tmpdir=settings.tmpdir,
                tally=tallies["consolidate"],
            ):
                _write_cskg(cskg, out_writer, prov_writer)
                output_relations[cskg.relation] += 1

        entering = tallies["commonness"].kept
        report.counts.after_concept_filter = tallies["concept_labels"].kept
        report.counts.after_compact = tallies["compact"].kept
        report.counts.after_commonness_filter = entering
        report.counts.after_mapping = mapped_count
        report.counts.after_blacklist = tallies["blacklist"].kept
        report.counts.after_dedup = out_writer.rows
        report.mapped_fraction = round(mapped_count / entering, 6) if entering else 0.0
        report.relation_census = [
            RelationCount(relation=r, count=n)
            for r, n in sorted(census.relations.items(), key=lambda kv: (-kv[1], kv[0]))[: settings.top]
        ]
        report.relations_entering_mapping = len(census.relations)
        report.nodes_entering_mapping = len(census.nodes)
        report.dropped = {reason: dict(sorted(c.items())) for reason, c in sorted(dropped.items())}
        report.output_relations = dict(sorted(output_relations.items(), key=lambda kv: (-kv[1], kv[0])))
        report.configuration = _configuration_echo(settings, mapping)
        report.input_digests = {
            "edges": file_digest(edges_path),
            "nodes": file_digest(nodes_path),
            "frequencies": file_digest(freq_path),
        }
        if settings.mapping:
            report.input_digests["mapping"] = file_digest(settings.mapping)
        report.stage_seconds = monitor.totals()
        report.produced_at = datetime.now(timezone.utc).isoformat(timespec="seconds")

        report_file.write(json.dumps(report.model_dump(), indent=2, ensure_ascii=False) + "\n")

    for tally in tallies.values():
        logger.info("Stage summary", stage=tally.name, kept=tally.kept, removed=tally.removed)
    logger.info(
        "Extraction finished",
        out=out_path,
        edges=report.counts.after_dedup,
        mapped_fraction=report.mapped_fraction,
        combiner=settings.combiner.value,
    )
    return report


def _write_cskg(edge: CskgEdge, out_writer: TsvWriter, prov_writer: TsvWriter) -> None:
    out_writer.write_row(edge.to_row())
    for prop, node1, node2 in edge.provenance:
        prov_writer.write_row((edge.id, prop, node1, node2))


def _configuration_echo(settings: Settings, mapping: MappingTable) -> Dict[str, Any]:
    return {
        "threshold": settings.threshold,
        "strict_above": settings.strict_above,
        "combiner": settings.combiner.value,
        "language": settings.language,
        "allow_leading_digit": settings.allow_leading_digit,
        "symmetric_canonical": settings.symmetric_canonical,
        "strict": settings.strict,
        "mapping": mapping.provenance,
        "top": settings.top,
    }
