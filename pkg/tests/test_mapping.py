"""Tests for the relation mapping table, blacklisting and consolidation."""

import importlib
import random
from importlib import resources

import pytest

from wdcs.errors import ConfigurationError, IdCollisionError, MappingTableError
from wdcs.kgtk import EdgeRecord, StageTally
from wdcs.mapping import (
    Action,
    CskgEdge,
    Dropped,
    DropReason,
    MappedEdge,
    apply_blacklist,
    build_blacklist,
    consolidate,
    load_mapping,
    map_edge,
)
from wdcs.mapping.builtin import BUILTIN_RULES, builtin_table
from wdcs.mapping.table import BLACKLIST_PROPERTIES, read_mapping_file

# Properties stated in the opposite direction of their ConceptNet relation
INVERSE_PROPERTIES = {"P527", "P2670", "P2354", "P1056", "P2283", "P828", "P156", "P3095"}

consolidate_module = importlib.import_module("wdcs.mapping.consolidate")


@pytest.fixture
def table():
    return load_mapping()


def test_builtin_table_audit(table):
    assert len(table.mapped_properties) == 44
    assert len(table.targets) == 15
    assert sorted(table.blacklist_properties) == sorted(BLACKLIST_PROPERTIES)
    assert len(table) == 50


def test_inverse_properties_carry_inverse_action(table):
    inverse = {r.wikidata_property for r in table.rules if r.action is Action.INVERSE}
    assert inverse == INVERSE_PROPERTIES


def test_shipped_tsv_matches_builtin_rules():
    data = resources.files("wdcs.mapping") / "data" / "wikidata_conceptnet.tsv"
    from_file = read_mapping_file(str(data))
    assert from_file.rules == builtin_table().rules
    assert len(from_file.rules) == len(BUILTIN_RULES)


def test_relation_labels(table):
    assert table.rule_for("P279").target_label == "is a"
    assert table.rule_for("P156").target_label == "has prerequisite"
    assert table.relation_label("/r/DistinctFrom") == "distinct from"


@pytest.mark.parametrize(
    "row, reason",
    [
        ("X12\tforward\t/r/IsA\tis a", "malformed property"),
        ("P1\tsideways\t/r/IsA\tis a", "unknown action"),
        ("P1\tforward\tIsA\tis a", "malformed relation"),
        ("P1\tinverse\t/r/NoSuchRelation\t", "not a known relation"),
        ("P1\tdrop\t/r/IsA\t", "takes no target"),
        ("P1\tforward\t/r/IsA", "expected 4 columns"),
    ],
)
def test_mapping_file_errors_carry_line_numbers(write_tsv, row, reason):
    path = write_tsv("map.tsv", ["property", "action", "target", "target_label"], [])
    with open(path, "a", encoding="utf-8") as f:
        f.write("P279\tforward\t/r/IsA\tis a\n" + row + "\n")
    with pytest.raises(MappingTableError) as exc:
        load_mapping(path)
    assert exc.value.line_number == 3
    assert reason in str(exc.value)
    assert exc.value.exit_code == 2


def test_comment_lines_in_mapping_file_are_ignored(write_tsv):
    path = write_tsv(
        "map.tsv",
        ["property", "action", "target", "target_label"],
        [["# reconstructed row"], ["P144", "forward", "/r/DerivedFrom", "derived from"]],
    )
    custom = load_mapping(path)
    assert [r.wikidata_property for r in custom.rules] == ["P144"]


def test_duplicate_property_in_mapping_file(write_tsv):
    rows = [["P279", "forward", "/r/IsA", ""], ["P279", "drop", "", ""]]
    path = write_tsv("map.tsv", ["property", "action", "target", "target_label"], rows)
    with pytest.raises(MappingTableError, match="duplicate property P279"):
        load_mapping(path)


def test_inverse_target_may_be_a_forward_target_of_the_same_file(write_tsv):
    rows = [["P1", "forward", "/r/HasFlavor", "has flavor"], ["P2", "inverse", "/r/HasFlavor", ""]]
    path = write_tsv("map.tsv", ["property", "action", "target", "target_label"], rows)
    custom = load_mapping(path)
    assert custom.rule_for("P2").action is Action.INVERSE
    assert custom.provenance == path


def test_map_edge_actions(table):
    forward = map_edge(EdgeRecord("Q2", "P361", "Q1", node1_label="roof", node2_label="house"), table)
    assert forward == MappedEdge("Q2", "/r/PartOf", "Q1", "roof", "house", "part of", "P361", "Q2", "Q1")

    inverse = map_edge(EdgeRecord("Q1", "P527", "Q2", node1_label="house", node2_label="roof"), table)
    assert inverse == MappedEdge("Q2", "/r/PartOf", "Q1", "roof", "house", "part of", "P527", "Q1", "Q2")

    blacklisted = map_edge(EdgeRecord("Q23", "P680", "Q24"), table)
    assert isinstance(blacklisted, Dropped) and blacklisted.reason is DropReason.BLACKLIST

    unmapped = map_edge(EdgeRecord("Q1", "P1343", "Q4"), table)
    assert isinstance(unmapped, Dropped) and unmapped.reason is DropReason.UNMAPPED


def test_blacklist_covers_both_endpoints(table):
    edges = [EdgeRecord("Q23", "P680", "Q24"), EdgeRecord("Q1", "P279", "Q4")]
    assert build_blacklist(edges, table) == frozenset({"Q23", "Q24"})


def test_apply_blacklist(table):
    mapped = [
        map_edge(EdgeRecord("Q24", "P361", "Q12"), table),
        map_edge(EdgeRecord("Q11", "P279", "Q12"), table),
    ]
    tally = StageTally("blacklist")
    kept = list(apply_blacklist(mapped, frozenset({"Q24"}), tally))
    assert [e.node1 for e in kept] == ["Q11"]
    assert (tally.kept, tally.removed) == (1, 1)


def _mapped(node1, node2, prop, table, labels=("a", "b")):
    return map_edge(EdgeRecord(node1, prop, node2, node1_label=labels[0], node2_label=labels[1]), table)


def test_consolidate_merges_inverse_pair_with_provenance(table):
    edges = [_mapped("Q2", "Q1", "P361", table), _mapped("Q1", "Q2", "P527", table, ("b", "a"))]
    tally = StageTally("consolidate")
    result = list(consolidate(edges, tally=tally))
    assert len(result) == 1
    edge = result[0]
    assert edge.id == "Q2-partof-Q1"
    assert edge.to_row() == ("Q2-partof-Q1", "Q2", "/r/PartOf", "Q1", "a", "b", "part of", "", "WD", "")
    assert edge.provenance == (("P361", "Q2", "Q1"), ("P527", "Q1", "Q2"))
    assert (tally.kept, tally.removed) == (1, 1)


def test_consolidate_keeps_symmetric_directions_by_default(table):
    edges = [_mapped("Q7", "Q8", "P461", table), _mapped("Q8", "Q7", "P461", table)]
    assert [e.id for e in consolidate(edges)] == ["Q7-antonym-Q8", "Q8-antonym-Q7"]


def test_symmetric_canonicalization_merges_directions(table):
    edges = [_mapped("Q8", "Q7", "P461", table, ("cold", "hot")), _mapped("Q7", "Q8", "P461", table, ("hot", "cold"))]
    result = list(consolidate(edges, symmetric_canonicalization=True))
    assert len(result) == 1
    assert (result[0].node1, result[0].node2) == ("Q7", "Q8")
    assert (result[0].node1_label, result[0].node2_label) == ("hot", "cold")
    assert len(result[0].provenance) == 2


def test_colliding_ids_get_numeric_suffixes(table):
    edges = [_mapped("a-isa-b", "c", "P279", table), _mapped("a", "b-isa-c", "P279", table)]
    result = list(consolidate(edges))
    assert [e.id for e in result] == ["a-isa-b-isa-c", "a-isa-b-isa-c-0001"]
    assert result[0].node1 == "a"


def test_too_many_collisions_is_fatal(table, monkeypatch):
    monkeypatch.setattr(consolidate_module, "MAX_ID_SUFFIX", 0)
    edges = [_mapped("a-isa-b", "c", "P279", table), _mapped("a", "b-isa-c", "P279", table)]
    with pytest.raises(IdCollisionError):
        list(consolidate(edges))


def test_consolidate_output_is_sorted_by_id(table):
    edges = [_mapped(f"Q{i}", "Q0", "P279", table) for i in (3, 1, 20, 2)]
    ids = [e.id for e in consolidate(edges, chunk_size=2)]
    assert ids == sorted(ids)


def test_custom_table_with_duplicate_rules_is_rejected():
    from wdcs.mapping.table import MappingTable, make_rule

    rule = make_rule("P1", "forward", "/r/IsA")
    with pytest.raises(ConfigurationError):
        MappingTable([rule, rule], provenance="test")


NODES = [f"Q{i}" for i in range(8)]
PROPS = ["P361", "P527", "P155", "P156", "P279", "P31", "P461", "P1343", "P680"]


@pytest.mark.parametrize("seed", range(200))
def test_consolidate_is_order_independent(seed, table, tmp_path):
    rng = random.Random(seed)
    statements = [
        EdgeRecord(rng.choice(NODES), rng.choice(PROPS), rng.choice(NODES), node1_label="x", node2_label="x")
        for _ in range(rng.randint(0, 50))
    ]
    mapped = [m for m in (map_edge(s, table) for s in statements) if isinstance(m, MappedEdge)]
    shuffled = mapped[:]
    rng.shuffle(shuffled)
    chunk = rng.randint(1, 16)
    first = list(consolidate(mapped, chunk_size=chunk, tmpdir=str(tmp_path)))
    second = list(consolidate(shuffled, chunk_size=chunk, tmpdir=str(tmp_path)))
    assert first == second
    assert len({e.id for e in first}) == len(first)
    assert sum(len(e.provenance) for e in first) == len(set(mapped_key(m) for m in mapped))


def mapped_key(edge: MappedEdge):
    return (edge.node1, edge.relation, edge.node2, edge.original_property, edge.original_node1, edge.original_node2)


@pytest.mark.parametrize("seed", range(200))
def test_inverse_pairs_are_coherent(seed, table):
    rng = random.Random(seed)
    a, b = rng.sample(NODES, 2)
    for forward, inverse, relation in (("P361", "P527", "/r/PartOf"), ("P155", "P156", "/r/HasPrerequisite")):
        stated = map_edge(EdgeRecord(a, forward, b), table)
        reversed_ = map_edge(EdgeRecord(b, inverse, a), table)
        assert (stated.node1, stated.relation, stated.node2) == (a, relation, b)
        assert (reversed_.node1, reversed_.relation, reversed_.node2) == (a, relation, b)
        merged = list(consolidate([stated, reversed_] if rng.random() < 0.5 else [reversed_, stated]))
        assert len(merged) == 1
        assert isinstance(merged[0], CskgEdge)
        assert {p[0] for p in merged[0].provenance} == {forward, inverse}
