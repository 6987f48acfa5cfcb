"""Command-line entry point: ``wdcs extract|stats|overlap|diff|freqdist``."""

import argparse
import json
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, Optional, Sequence, TextIO, Tuple

from wdcs.analytics.diff import render_diff, render_series, temporal_series
from wdcs.analytics.freqdist import relation_frequency_distribution, render_freqdist
from wdcs.analytics.overlap import compute_overlap, compute_overlap_by_source, render_overlap
from wdcs.analytics.stats import GraphStats, compute_stats, render_stats
from wdcs.config import Combiner, Settings, load_settings, read_config_file
from wdcs.errors import ConfigurationError, InputFileError, WdcsError
from wdcs.kgtk.reader import ensure_readable, read_edge_file
from wdcs.kgtk.writer import atomic_output
from wdcs.logging_config import bind_run_context, configure_logging, get_logger
from wdcs.performance import performance_monitor
from wdcs.pipeline import run_extraction

logger = get_logger(__name__)

# argparse dest -> Settings field, for flags that double as settings
SETTING_FLAGS = (
    "threshold",
    "combiner",
    "strict_above",
    "language",
    "allow_leading_digit",
    "strict",
    "symmetric_canonical",
    "mapping",
    "exclude",
    "jobs",
    "log_level",
    "log_format",
    "progress",
)

STATS_TOP = 10

# Input and output paths per command as (required, optional); a config file may
# supply any of them
PATH_FLAGS: Dict[str, Tuple[Tuple[str, ...], Tuple[str, ...]]] = {
    "extract": (("edges", "nodes", "freq", "out", "report"), ("provenance",)),
    "stats": (("edges",), ("out",)),
    "overlap": (("left", "right"), ("out",)),
    "diff": (("old", "new"), ("out",)),
    "freqdist": (("edges",), ("out",)),
}
ALL_PATH_KEYS = frozenset(name for groups in PATH_FLAGS.values() for group in groups for name in group)


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value or YAML file supplying any flag")
    common.add_argument("--log-level", choices=("DEBUG", "INFO", "WARNING", "ERROR"))
    common.add_argument("--log-format", choices=("console", "json"))
    common.add_argument("--no-progress", dest="progress", action="store_false", default=None)
    common.add_argument("--strict", action="store_true", default=None, help="abort on the first malformed row")
    common.add_argument("--jobs", type=int, help="worker processes (default: CPU count)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="wdcs", description="Extract and analyse the commonsense subgraph of Wikidata."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    extract = sub.add_parser("extract", parents=[common], help="filter, map and consolidate an edge file")
    extract.add_argument("--edges")
    extract.add_argument("--nodes")
    extract.add_argument("--freq")
    extract.add_argument("--out")
    extract.add_argument("--report")
    extract.add_argument("--provenance", help="provenance sidecar (default: <out>.provenance.tsv)")
    extract.add_argument("--threshold", type=float)
    extract.add_argument("--combiner", choices=[c.value for c in Combiner])
    extract.add_argument("--strict-above", action="store_true", default=None)
    extract.add_argument("--mapping", help="relation mapping TSV replacing the built-in table")
    extract.add_argument("--language")
    extract.add_argument("--allow-leading-digit", action="store_true", default=None)
    extract.add_argument("--symmetric-canonical", action="store_true", default=None)
    extract.add_argument("--top", type=int, help="relations listed in the report census")
    extract.set_defaults(handler=cmd_extract)

    stats = sub.add_parser("stats", parents=[common], help="node, edge, degree and PageRank statistics")
    stats.add_argument("--edges")
    stats.add_argument("--out")
    stats.add_argument("--format", choices=("json", "tsv"), default="json")
    stats.add_argument("--top", type=int, help=f"top PageRank nodes (default: {STATS_TOP})")
    stats.add_argument("--damping", type=float, default=0.85)
    stats.add_argument("--tolerance", type=float, default=1e-9)
    stats.add_argument("--max-iterations", type=int, default=200)
    stats.set_defaults(handler=cmd_stats)

    overlap = sub.add_parser("overlap", parents=[common], help="shared label triples of two edge files")
    overlap.add_argument("--left")
    overlap.add_argument("--right")
    overlap.add_argument("--by-source", action="store_true", help="one row per source of the right file")
    overlap.add_argument("--out")
    overlap.add_argument("--format", choices=("json", "tsv"), default="tsv")
    overlap.set_defaults(handler=cmd_overlap)

    diff = sub.add_parser("diff", parents=[common], help="growth between statistics reports")
    diff.add_argument("--old", help="baseline stats JSON")
    diff.add_argument("--new", action="append", help="later stats JSON; repeatable")
    diff.add_argument("--out")
    diff.add_argument("--format", choices=("json", "tsv"), default="tsv")
    diff.set_defaults(handler=cmd_diff)

    freqdist = sub.add_parser("freqdist", parents=[common], help="most frequent relations")
    freqdist.add_argument("--edges")
    freqdist.add_argument("--top", type=int)
    freqdist.add_argument("--exclude", help="comma-separated relations to leave out")
    freqdist.add_argument("--out")
    freqdist.add_argument("--format", choices=("json", "tsv"), default="tsv")
    freqdist.set_defaults(handler=cmd_freqdist)

    return parser


def _path_value(name: str, value: Any) -> Any:
    if name != "new":
        return str(value)
    if isinstance(value, (list, tuple)):
        return [str(v) for v in value]
    return [p.strip() for p in str(value).split(",") if p.strip()]


def resolve_paths(args: argparse.Namespace, config_values: Dict[str, Any]) -> None:
    """Fill path flags absent from the command line from config values.

    Path keys are removed from ``config_values``, including those belonging to
    other commands, so one config file can serve several commands.
    """
    from_config = {key: config_values.pop(key) for key in ALL_PATH_KEYS & set(config_values)}
    required, optional = PATH_FLAGS[args.command]
    for name in required + optional:
        if getattr(args, name, None) is None and from_config.get(name) is not None:
            setattr(args, name, _path_value(name, from_config[name]))
    missing = [f"--{name}" for name in required if not getattr(args, name, None)]
    if missing:
        raise ConfigurationError(f"{args.command} needs {', '.join(missing)} as flags or config keys")


def settings_from_args(args: argparse.Namespace) -> Settings:
    config_values = read_config_file(args.config) if args.config else {}
    resolve_paths(args, config_values)
    overrides: Dict[str, Any] = {flag: getattr(args, flag, None) for flag in SETTING_FLAGS}
    if args.command in ("extract", "freqdist"):
        overrides["top"] = getattr(args, "top", None)
    return load_settings(overrides=overrides, config_values=config_values)


@contextmanager
def _output(path: Optional[str]) -> Iterator[TextIO]:
    if path:
        with atomic_output(path) as handle:
            yield handle
    else:
        yield sys.stdout


def _emit(path: Optional[str], text: str) -> None:
    with _output(path) as handle:
        handle.write(text)


def _json(payload: Any) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def cmd_extract(args: argparse.Namespace, settings: Settings) -> int:
    report = run_extraction(
        args.edges,
        args.nodes,
        args.freq,
        args.out,
        args.report,
        settings,
        provenance_path=args.provenance,
    )
    if report.counts.after_dedup == 0:
        logger.warning("Extraction produced no edges", out=args.out)
    return 0


def check_pagerank_args(args: argparse.Namespace) -> None:
    if not 0 < args.damping < 1:
        raise ConfigurationError(f"--damping must be in (0, 1), got {args.damping}")
    if args.tolerance <= 0:
        raise ConfigurationError(f"--tolerance must be positive, got {args.tolerance}")
    if args.max_iterations < 1:
        raise ConfigurationError(f"--max-iterations must be at least 1, got {args.max_iterations}")
    if args.top is not None and args.top < 0:
        raise ConfigurationError(f"--top must not be negative, got {args.top}")


def cmd_stats(args: argparse.Namespace, settings: Settings) -> int:
    check_pagerank_args(args)
    ensure_readable(args.edges)
    stats = compute_stats(
        args.edges,
        top_k=STATS_TOP if args.top is None else args.top,
        damping=args.damping,
        tolerance=args.tolerance,
        max_iterations=args.max_iterations,
        strict=settings.strict,
    )
    if args.format == "tsv":
        _emit(args.out, render_stats(stats))
    else:
        _emit(args.out, _json(stats.model_dump(mode="json")))
    return 0


def cmd_overlap(args: argparse.Namespace, settings: Settings) -> int:
    for path in (args.left, args.right):
        ensure_readable(path)
    if args.by_source:
        reports = compute_overlap_by_source(
            args.left, args.right, chunk_size=settings.chunk_size, tmpdir=settings.tmpdir
        )
    else:
        reports = [
            compute_overlap(args.left, args.right, chunk_size=settings.chunk_size, tmpdir=settings.tmpdir)
        ]
    if args.format == "json":
        _emit(args.out, _json([r.model_dump() for r in reports]))
    else:
        _emit(args.out, render_overlap(reports))
    return 0


def load_stats(path: str) -> GraphStats:
    ensure_readable(path)
    try:
        return GraphStats.model_validate_json(Path(path).read_text(encoding="utf-8"))
    except ValueError as e:
        raise InputFileError(path, f"not a stats report: {e}") from e


def cmd_diff(args: argparse.Namespace, settings: Settings) -> int:
    base = load_stats(args.old)
    versions = [load_stats(path) for path in args.new]
    reports = temporal_series(base, versions)
    if args.format == "json":
        payload: Any = [r.model_dump() for r in reports]
        _emit(args.out, _json(payload[0] if len(payload) == 1 else payload))
    elif len(reports) == 1:
        _emit(args.out, render_diff(reports[0]))
    else:
        names = [Path(args.old).stem] + [Path(p).stem for p in args.new]
        _emit(args.out, render_series(names, reports))
    return 0


def cmd_freqdist(args: argparse.Namespace, settings: Settings) -> int:
    ensure_readable(args.edges)
    rows = relation_frequency_distribution(
        read_edge_file(args.edges, strict=settings.strict),
        top_k=settings.top,
        exclude=settings.excluded_relations,
    )
    if args.format == "json":
        _emit(args.out, _json([{"relation": rel, "count": n} for rel, n in rows]))
    else:
        _emit(args.out, render_freqdist(rows))
    return 0


Handler = Callable[[argparse.Namespace, Settings], int]


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level or "INFO", args.log_format or "console")
    bind_run_context(command=args.command)

    try:
        settings = settings_from_args(args)
        configure_logging(settings.log_level, settings.log_format)
        handler: Handler = args.handler
        performance_monitor.clear()
        with performance_monitor.stage(args.command):
            code = handler(args, settings)
        logger.info("Command finished", seconds=performance_monitor.totals())
        return code
    except WdcsError as e:
        logger.error("Command failed", error=str(e), error_type=type(e).__name__)
        print(f"wdcs {args.command}: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
