"""Slow in-memory reference extraction used to check golden outputs.

Reads everything into lists and applies each rule literally, without the
streaming, sorting or spilling machinery of ``wdcs``. Only the mapping rule
data is shared with the package.

Usage: python scripts/reference_extract.py EDGES NODES FREQ OUT [PROVENANCE]
"""

import re
import sys
import unicodedata
from pathlib import Path
from typing import Dict, List, Optional, Tuple

sys.path.insert(0, str(Path(__file__).parent.parent))

from wdcs.mapping.builtin import BUILTIN_RULES  # noqa: E402

THRESHOLD = 1e-6
CSKG_HEADER = [
    "id",
    "node1",
    "relation",
    "node2",
    "node1;label",
    "node2;label",
    "relation;label",
    "relation;dimension",
    "source",
    "sentence",
]
PROVENANCE_HEADER = ["final_edge_id", "original_property", "original_node1", "original_node2"]


def read_tsv(path: str) -> Tuple[List[str], List[List[str]]]:
    lines = Path(path).read_text(encoding="utf-8").split("\n")
    header = lines[0].split("\t")
    rows = [line.split("\t") for line in lines[1:] if line]
    return header, [r for r in rows if len(r) == len(header)]


def english_label(raw: str) -> Optional[str]:
    for part in raw.split("|"):
        match = re.match(r"^'(.*)'@(.+)$", part)
        if match and match.group(2) == "en":
            return match.group(1)
        if not match and part:
            return part
    return None


def is_concept(label: Optional[str]) -> bool:
    if not label:
        return False
    if unicodedata.category(label[0]) != "Ll":
        return False
    return all(unicodedata.category(c) not in ("Lu", "Lt") for c in label)


def frequency(table: Dict[str, float], label: str) -> float:
    phrase = " ".join(label.lower().split())
    if phrase in table:
        return table[phrase]
    tokens = phrase.split(" ")
    if len(tokens) == 1:
        return 0.0
    return min(table.get(t, 0.0) for t in tokens)


def relation_label(target: str) -> str:
    return " ".join(w.lower() for w in re.findall(r"[A-Z][a-z]*", target.split("/")[-1]))


def extract(edges_path: str, nodes_path: str, freq_path: str) -> Tuple[List[list], List[list]]:
    _, node_rows = read_tsv(nodes_path)
    english: Dict[str, str] = {}
    for node_id, raw in node_rows:
        label = english_label(raw)
        if label is not None:
            english[node_id] = label
    labels = {node_id: label for node_id, label in english.items() if is_concept(label)}

    _, freq_rows = read_tsv(freq_path)
    table: Dict[str, float] = {}
    for term, value in freq_rows:
        if term == "term":
            continue
        table[term.lower()] = max(table.get(term.lower(), 0.0), float(value))

    header, edge_rows = read_tsv(edges_path)
    n1 = header.index("node1")
    rel = header.index("label") if "label" in header else header.index("relation")
    n2 = header.index("node2")

    kept = []
    for row in edge_rows:
        a, p, b = row[n1], row[rel], row[n2]
        if not a or not p or not b:
            continue
        if a not in labels or b not in labels:
            continue
        if frequency(table, labels[a]) < THRESHOLD or frequency(table, labels[b]) < THRESHOLD:
            continue
        if (a, p, b) not in kept:
            kept.append((a, p, b))

    rules = {prop: (action, target) for prop, action, target, _ in BUILTIN_RULES}
    blacklist = set()
    for a, p, b in kept:
        if p in rules and rules[p][0] == "drop_blacklist":
            blacklist.update((a, b))

    merged: Dict[Tuple[str, str, str], set] = {}
    for a, p, b in kept:
        if p not in rules or rules[p][0] not in ("forward", "inverse"):
            continue
        action, target = rules[p]
        x, y = (b, a) if action == "inverse" else (a, b)
        if x in blacklist or y in blacklist:
            continue
        merged.setdefault((x, target, y), set()).add((p, a, b))

    cskg, provenance = [], []
    for (x, target, y), sources in merged.items():
        edge_id = f"{x}-{target.split('/')[-1].lower()}-{y}"
        cskg.append([edge_id, x, target, y, labels[x], labels[y], relation_label(target), "", "WD", ""])
        for source in sorted(sources):
            provenance.append([edge_id, *source])
    cskg.sort(key=lambda r: r[0])
    provenance.sort(key=lambda r: (r[0], r[1:]))
    return cskg, provenance


def write_tsv(path: str, header: List[str], rows: List[list]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for row in [header] + rows:
            f.write("\t".join(row) + "\n")


if __name__ == "__main__":
    if len(sys.argv) not in (5, 6):
        print(__doc__)
        sys.exit(2)
    edges, nodes, freq, out = sys.argv[1:5]
    cskg_rows, provenance_rows = extract(edges, nodes, freq)
    write_tsv(out, CSKG_HEADER, cskg_rows)
    prov_out = sys.argv[5] if len(sys.argv) == 6 else f"{out}.provenance.tsv"
    write_tsv(prov_out, PROVENANCE_HEADER, provenance_rows)
    print(f"Wrote {len(cskg_rows)} edges to {out}")
