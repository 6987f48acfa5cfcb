"""Shared fixtures: file builders over ``tmp_path`` and the shipped sample graph."""

from pathlib import Path
from typing import Callable, Iterable, Sequence

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def write_tsv(tmp_path) -> Callable[..., str]:
    """Write ``rows`` under ``header`` to a file in ``tmp_path``; values are taken verbatim."""

    def _write(name: str, header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
        path = tmp_path / name
        lines = ["\t".join(header)] + ["\t".join(row) for row in rows]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return str(path)

    return _write


@pytest.fixture
def labeled_edges(write_tsv) -> Callable[..., str]:
    """Edge file with label columns, from ``(node1, relation, node2, label1, label2)`` rows."""

    def _write(name: str, rows: Iterable[Sequence[str]], source: bool = False) -> str:
        header = ["node1", "relation", "node2", "node1;label", "node2;label"]
        if source:
            header.append("source")
        return write_tsv(name, header, rows)

    return _write
