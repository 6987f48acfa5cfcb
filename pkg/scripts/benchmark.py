"""Extraction benchmark on a synthetic graph.

Usage: python scripts/benchmark.py [EDGES] [NODES]
"""

import random
import resource
import sys
import tempfile
import time
from pathlib import Path
from typing import Dict

sys.path.insert(0, str(Path(__file__).parent.parent))

from wdcs.config import load_settings  # noqa: E402
from wdcs.logging_config import configure_logging  # noqa: E402
from wdcs.mapping.builtin import BUILTIN_RULES  # noqa: E402
from wdcs.pipeline import run_extraction  # noqa: E402

SYLLABLES = ["ka", "lo", "mi", "ne", "ru", "sa", "ti", "vo", "ze", "po", "da", "fi"]
UNMAPPED = ["P1343", "P5008", "P910", "P373"]


def _word(rng: random.Random) -> str:
    return "".join(rng.choice(SYLLABLES) for _ in range(rng.randint(2, 4)))


def write_synthetic_graph(directory: str, edges: int = 1_000_000, nodes: int = 100_000, seed: int = 0) -> Dict[str, str]:
    """Write edge, node and frequency files; returns their paths by role."""
    rng = random.Random(seed)
    root = Path(directory)
    vocabulary = sorted({_word(rng) for _ in range(5_000)})
    properties = [rule[0] for rule in BUILTIN_RULES] + UNMAPPED

    paths = {
        "edges": str(root / "edges.tsv"),
        "nodes": str(root / "nodes.tsv"),
        "freq": str(root / "frequencies.tsv"),
    }
    with open(paths["nodes"], "w", encoding="utf-8") as f:
        f.write("id\tlabel\n")
        for i in range(nodes):
            label = rng.choice(vocabulary)
            if rng.random() < 0.2:
                label += " " + rng.choice(vocabulary)
            if rng.random() < 0.3:
                label = label.capitalize()
            f.write(f"Q{i}\t'{label}'@en\n")

    with open(paths["freq"], "w", encoding="utf-8") as f:
        f.write("term\tfrequency\n")
        for term in vocabulary:
            f.write(f"{term}\t{10 ** rng.uniform(-9, -3):.3e}\n")

    with open(paths["edges"], "w", encoding="utf-8") as f:
        f.write("id\tnode1\tlabel\tnode2\n")
        for i in range(edges):
            f.write(f"e{i}\tQ{rng.randrange(nodes)}\t{rng.choice(properties)}\tQ{rng.randrange(nodes)}\n")
    return paths


def peak_memory_bytes() -> int:
    # ru_maxrss is in kilobytes on Linux
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024


def benchmark_extraction(edges: int = 1_000_000, nodes: int = 100_000) -> Dict[str, float]:
    with tempfile.TemporaryDirectory() as tmp:
        paths = write_synthetic_graph(tmp, edges, nodes)
        settings = load_settings(None, {"progress": False, "log_level": "WARNING"})
        configure_logging(settings.log_level, settings.log_format)

        start = time.perf_counter()
        report = run_extraction(
            paths["edges"],
            paths["nodes"],
            paths["freq"],
            str(Path(tmp) / "cskg.tsv"),
            str(Path(tmp) / "report.json"),
            settings,
        )
        elapsed = time.perf_counter() - start

    return {
        "edges": edges,
        "nodes": nodes,
        "output_edges": report.counts.after_dedup,
        "seconds": elapsed,
        "peak_mib": peak_memory_bytes() / 2**20,
        **{f"{stage}_s": seconds for stage, seconds in report.stage_seconds.items()},
    }


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:3]]
    results = benchmark_extraction(*args)
    print("Extraction Benchmark Results:")
    for key, value in results.items():
        print(f"{key}: {value:,.2f}" if isinstance(value, float) else f"{key}: {value:,}")
