"""Tests for KGTK file reading, writing and stream operators."""

import hashlib
import random

import pytest

from wdcs.errors import InputFileError, MalformedRowError, MissingColumnError
from wdcs.kgtk import (
    EdgeRecord,
    JoinMode,
    LabelMap,
    NodeRecord,
    StageTally,
    atomic_output,
    compact,
    external_sort,
    file_digest,
    filter_if_exists,
    lift_labels,
    read_edge_file,
    read_node_file,
    read_node_labels,
    write_edge_file,
    write_node_file,
)
from wdcs.kgtk.codec import escape, unescape
from wdcs.kgtk.reader import ensure_readable, select_label
from wdcs.kgtk.records import parse_label_value


def test_label_header_is_read_as_relation(write_tsv):
    path = write_tsv("e.tsv", ["id", "node1", "label", "node2"], [["e1", "Q1", "P279", "Q2"]])
    edges = list(read_edge_file(path))
    assert edges == [EdgeRecord("Q1", "P279", "Q2", id="e1")]


def test_writer_emits_relation_header(tmp_path):
    path = str(tmp_path / "out.tsv")
    write_edge_file(path, [EdgeRecord("Q1", "P279", "Q2")], columns=("node1", "relation", "node2"))
    assert (tmp_path / "out.tsv").read_text() == "node1\trelation\tnode2\nQ1\tP279\tQ2\n"


def test_special_characters_survive_a_write_and_read(tmp_path):
    path = str(tmp_path / "e.tsv")
    record = EdgeRecord(
        "Q1",
        "P279",
        "Q2",
        id="x",
        node1_label="tab\there",
        node2_label="line\nbreak \\ slash\r",
    )
    write_edge_file(path, [record])
    assert list(read_edge_file(path)) == [record]


def test_unknown_escape_is_kept():
    assert unescape("a\\qb") == "a\\qb"
    assert escape("plain") == "plain"


def test_malformed_rows_are_counted(fixtures_dir):
    reader = read_edge_file(str(fixtures_dir / "edges.tsv"))
    edges = list(reader)
    assert len(edges) == 58
    assert reader.stats.rows == 58
    assert reader.stats.malformed == 2


def test_strict_mode_stops_at_first_malformed_row(fixtures_dir):
    reader = read_edge_file(str(fixtures_dir / "edges.tsv"), strict=True)
    with pytest.raises(MalformedRowError) as exc:
        list(reader)
    assert exc.value.line_number == 59


def test_missing_required_column(write_tsv):
    path = write_tsv("e.tsv", ["node1", "node2"], [["Q1", "Q2"]])
    with pytest.raises(MissingColumnError) as exc:
        read_edge_file(path)
    assert exc.value.column == "relation"
    assert exc.value.exit_code == 2


def test_blank_lines_are_skipped(tmp_path):
    path = tmp_path / "e.tsv"
    path.write_text("node1\trelation\tnode2\n\nQ1\tP31\tQ2\n\n")
    reader = read_edge_file(str(path))
    assert [e.triple for e in reader] == [("Q1", "P31", "Q2")]
    assert reader.stats.malformed == 0


def test_reader_can_be_iterated_twice(fixtures_dir):
    reader = read_edge_file(str(fixtures_dir / "edges.tsv"))
    assert list(reader) == list(reader)


def test_parse_label_value():
    assert list(parse_label_value("'dog'@en|'Hund'@de")) == [("dog", "en"), ("Hund", "de")]
    assert list(parse_label_value("house")) == [("house", None)]
    assert list(parse_label_value('"ice cream"')) == [("ice cream", None)]
    assert list(parse_label_value("'it\\'s'@en")) == [("it's", "en")]


def test_select_label_prefers_requested_language():
    assert select_label("'Perro'@es|'hound'@en", "en") == "hound"
    assert select_label("'Baum'@de", "en") is None
    assert select_label("tree", "en") == "tree"
    assert select_label(None, "en") is None


def test_read_node_labels(fixtures_dir):
    labels = read_node_labels(str(fixtures_dir / "nodes.tsv"))
    assert labels.get("Q31") == "dog"
    assert labels.get("Q32") == "hound"
    assert labels.get("Q36") is None
    assert labels.get("Q100") == "Versailles Palace"
    # Q33 and Q42 appear twice; the later row wins
    assert labels.get("Q33") == "cat"
    assert labels.get("Q42") == "Roof"
    assert labels.duplicates == 2


def test_read_node_labels_keep_predicate(fixtures_dir):
    labels = read_node_labels(str(fixtures_dir / "nodes.tsv"), keep=str.islower)
    assert "Q100" not in labels
    assert "Q1" in labels
    # the later capitalized row overrides the earlier concept label
    assert "Q42" not in labels
    assert labels.duplicates == 2


def test_node_file_write_and_read(tmp_path):
    path = str(tmp_path / "nodes.tsv")
    nodes = [NodeRecord("Q1", "'house'@en"), NodeRecord("Q2", None)]
    assert write_node_file(path, nodes) == 2
    assert list(read_node_file(path)) == nodes


def test_label_map_absent_id_is_none():
    labels = LabelMap.from_dict({"Q1": "house"}, "en")
    assert labels.get("Q2") is None
    assert len(labels) == 1


def test_lift_labels_fills_known_ids_and_nulls_unknown():
    labels = LabelMap.from_dict({"Q1": "house"})
    lifted = list(lift_labels([EdgeRecord("Q1", "P279", "Q2")], labels))
    assert lifted[0].node1_label == "house"
    assert lifted[0].node2_label is None


def test_lift_labels_is_idempotent():
    labels = LabelMap.from_dict({"Q1": "house", "Q2": "roof"})
    edges = [EdgeRecord("Q2", "P361", "Q1"), EdgeRecord("Q1", "P31", "Q9", node2_label="stale")]
    once = list(lift_labels(edges, labels))
    assert list(lift_labels(once, labels)) == once
    assert once[1].node2_label is None


def test_label_map_counts_every_repeat_of_an_id():
    labels = LabelMap.from_dict({})
    for label in ("kitten", "cat", "tomcat"):
        labels.add("Q33", label)
    assert labels.get("Q33") == "tomcat"
    assert labels.duplicates == 2


def test_rejected_later_row_removes_earlier_label(write_tsv):
    path = write_tsv(
        "nodes.tsv",
        ["id", "label"],
        [["Q1", "'house'@en"], ["Q2", "'roof'@en"], ["Q1", "'House'@en"]],
    )
    labels = read_node_labels(path, keep=str.islower)
    assert "Q1" not in labels
    assert labels.get("Q2") == "roof"
    assert labels.duplicates == 1


def test_kept_later_row_restores_rejected_id(write_tsv):
    path = write_tsv(
        "nodes.tsv",
        ["id", "label"],
        [["Q1", "'House'@en"], ["Q1", "'Hut'@en"], ["Q1", "'hut'@en"]],
    )
    labels = read_node_labels(path, keep=str.islower)
    assert labels.get("Q1") == "hut"
    assert labels.duplicates == 2


def test_filter_if_exists_modes():
    edges = [
        EdgeRecord("Q1", "P1", "Q2"),
        EdgeRecord("Q1", "P1", "Q9"),
        EdgeRecord("Q8", "P1", "Q9"),
    ]
    keep = {"Q1", "Q2"}
    tally = StageTally("ifexists")
    both = list(filter_if_exists(edges, keep, JoinMode.BOTH, tally))
    assert [e.node2 for e in both] == ["Q2"]
    assert (tally.kept, tally.removed) == (1, 2)
    either = list(filter_if_exists(edges, keep, JoinMode.EITHER))
    assert len(either) == 2


def test_compact_keeps_first_occurrence_sorted_by_key():
    edges = [
        EdgeRecord("Q2", "P1", "Q3", id="a"),
        EdgeRecord("Q1", "P1", "Q2", id="b"),
        EdgeRecord("Q2", "P1", "Q3", id="c"),
    ]
    tally = StageTally("compact")
    result = list(compact(edges, tally=tally))
    assert [e.id for e in result] == ["b", "a"]
    assert (tally.kept, tally.removed) == (2, 1)


def test_compact_on_single_optional_column():
    edges = [EdgeRecord("Q1", "P1", "Q2", source="CN"), EdgeRecord("Q3", "P1", "Q4")]
    result = list(compact(edges, key=("source",)))
    assert [e.source for e in result] == [None, "CN"]


def _random_edges(rng: random.Random, n: int):
    nodes = [f"Q{i}" for i in range(6)]
    relations = ["P31", "P279", "P361"]
    return [
        EdgeRecord(
            rng.choice(nodes),
            rng.choice(relations),
            rng.choice(nodes),
            id=f"e{i}",
            node1_label=rng.choice([None, "house", "roof"]),
        )
        for i in range(n)
    ]


@pytest.mark.parametrize("seed", range(200))
def test_compact_is_idempotent_and_keeps_first(seed, tmp_path):
    rng = random.Random(seed)
    edges = _random_edges(rng, rng.randint(0, 60))
    chunk = rng.randint(1, 10)
    once = list(compact(edges, chunk_size=chunk, tmpdir=str(tmp_path)))
    twice = list(compact(once, chunk_size=chunk, tmpdir=str(tmp_path)))
    assert twice == once

    first = {}
    for edge in edges:
        first.setdefault(edge.triple, edge)
    assert once == [first[t] for t in sorted(first)]


@pytest.mark.parametrize("seed", range(20))
def test_external_sort_is_stable_across_spills(seed, tmp_path):
    rng = random.Random(seed)
    items = [(rng.randint(0, 5), i) for i in range(rng.randint(0, 300))]
    result = list(external_sort(items, key=lambda t: t[0], chunk_size=17, tmpdir=str(tmp_path)))
    assert result == sorted(items, key=lambda t: t[0])


def test_atomic_output_leaves_nothing_on_error(tmp_path):
    target = tmp_path / "out.tsv"
    with pytest.raises(RuntimeError):
        with atomic_output(str(target)) as f:
            f.write("partial")
            raise RuntimeError("boom")
    assert not target.exists()
    assert list(tmp_path.iterdir()) == []


def test_atomic_output_replaces_existing_file(tmp_path):
    target = tmp_path / "out.tsv"
    target.write_text("old")
    with atomic_output(str(target)) as f:
        f.write("new")
    assert target.read_text() == "new"


def test_file_digest(fixtures_dir):
    path = fixtures_dir / "nodes.tsv"
    expected = hashlib.sha256(path.read_bytes()).hexdigest()
    assert file_digest(str(path)) == f"sha256:{expected}"


def test_ensure_readable_names_missing_path(tmp_path):
    missing = str(tmp_path / "nope.tsv")
    with pytest.raises(InputFileError) as exc:
        ensure_readable(missing)
    assert missing in str(exc.value)
    assert exc.value.exit_code == 1
