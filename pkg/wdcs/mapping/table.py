"""Wikidata property -> ConceptNet relation mapping rules."""

import re
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from wdcs.errors import ConfigurationError, InputFileError, MappingTableError
from wdcs.kgtk.codec import unescape
from wdcs.logging_config import get_logger

logger = get_logger(__name__)

BUILTIN_PROVENANCE = "builtin"

PROPERTY_PATTERN = re.compile(r"^P[1-9][0-9]*$")
RELATION_PATTERN = re.compile(r"^/r/[A-Z][A-Za-z]*$")

CONCEPTNET_RELATIONS = frozenset(
    f"/r/{name}"
    for name in (
        "RelatedTo FormOf IsA PartOf HasA UsedFor CapableOf AtLocation Causes "
        "HasSubevent HasFirstSubevent HasLastSubevent HasPrerequisite HasProperty "
        "MotivatedByGoal ObstructedBy Desires CreatedBy Synonym Antonym "
        "DistinctFrom DerivedFrom SymbolOf DefinedAs MannerOf LocatedNear "
        "HasContext SimilarTo EtymologicallyRelatedTo EtymologicallyDerivedFrom "
        "CausesDesire MadeOf ReceivesAction InstanceOf Entails NotDesires "
        "NotUsedFor NotCapableOf NotHasProperty"
    ).split()
)

SYMMETRIC_RELATIONS = frozenset({"/r/Antonym", "/r/Synonym", "/r/DistinctFrom", "/r/SimilarTo"})


class Action(str, Enum):
    FORWARD = "forward"
    INVERSE = "inverse"
    DROP_BLACKLIST = "drop_blacklist"
    DROP = "drop"

    @property
    def maps(self) -> bool:
        return self in (Action.FORWARD, Action.INVERSE)


def conventional_label(relation: str) -> str:
    """``/r/HasPrerequisite`` -> ``has prerequisite``; ``/r/IsA`` -> ``is a``."""
    name = local_name(relation, lower=False)
    return " ".join(w.lower() for w in re.findall(r"[A-Z][a-z]*", name))


def local_name(relation: str, lower: bool = True) -> str:
    """``/r/PartOf`` -> ``partof``."""
    name = relation.rsplit("/", 1)[-1]
    return name.lower() if lower else name


class MappingRule(BaseModel):
    """What to do with edges of one Wikidata property."""

    model_config = ConfigDict(frozen=True)

    wikidata_property: str
    action: Action
    target: Optional[str] = None
    target_label: Optional[str] = None
    property_label: Optional[str] = None


class MappingTable:
    """Ordered, validated set of rules with at most one rule per property."""

    def __init__(self, rules: Iterable[MappingRule], provenance: str):
        self.rules: Tuple[MappingRule, ...] = tuple(rules)
        self.provenance = provenance
        self._by_property: Dict[str, MappingRule] = {}
        for rule in self.rules:
            if rule.wikidata_property in self._by_property:
                raise ConfigurationError(f"duplicate rule for {rule.wikidata_property}")
            self._by_property[rule.wikidata_property] = rule

    def rule_for(self, wikidata_property: str) -> Optional[MappingRule]:
        return self._by_property.get(wikidata_property)

    def __len__(self) -> int:
        return len(self.rules)

    @property
    def mapped_properties(self) -> List[str]:
        return [r.wikidata_property for r in self.rules if r.action.maps]

    @property
    def blacklist_properties(self) -> List[str]:
        return [r.wikidata_property for r in self.rules if r.action is Action.DROP_BLACKLIST]

    @property
    def targets(self) -> List[str]:
        """Distinct ConceptNet relations in first-seen order."""
        seen: Dict[str, None] = {}
        for rule in self.rules:
            if rule.action.maps and rule.target:
                seen.setdefault(rule.target)
        return list(seen)

    def relation_label(self, target: str) -> str:
        for rule in self.rules:
            if rule.target == target and rule.target_label:
                return rule.target_label
        return conventional_label(target)

    def check_builtin_invariants(self) -> None:
        """The shipped table maps 44 properties onto 15 relations and blacklists 6."""
        problems = []
        if len(self.mapped_properties) != 44:
            problems.append(f"{len(self.mapped_properties)} mapped properties, expected 44")
        if len(self.targets) != 15:
            problems.append(f"{len(self.targets)} target relations, expected 15")
        if sorted(self.blacklist_properties) != sorted(BLACKLIST_PROPERTIES):
            problems.append(f"blacklist properties {self.blacklist_properties}")
        if problems:
            raise ConfigurationError("builtin mapping: " + "; ".join(problems))


BLACKLIST_PROPERTIES = ("P681", "P2548", "P680", "P682", "P816", "P2302")


def make_rule(
    wikidata_property: str,
    action: str,
    target: Optional[str],
    target_label: Optional[str] = None,
    property_label: Optional[str] = None,
    known_targets: Iterable[str] = (),
) -> MappingRule:
    """Build one rule, raising ValueError on a malformed entry."""
    if not PROPERTY_PATTERN.match(wikidata_property):
        raise ValueError(f"malformed property id {wikidata_property!r}")
    try:
        act = Action(action)
    except ValueError:
        raise ValueError(f"unknown action {action!r}") from None
    if act.maps:
        if not target or not RELATION_PATTERN.match(target):
            raise ValueError(f"malformed relation {target!r}")
        if act is Action.INVERSE and target not in CONCEPTNET_RELATIONS and target not in set(known_targets):
            raise ValueError(f"inverse target {target} is not a known relation")
        target_label = target_label or conventional_label(target)
    elif target:
        raise ValueError(f"action {act.value} takes no target")
    else:
        target, target_label = None, None
    return MappingRule(
        wikidata_property=wikidata_property,
        action=act,
        target=target,
        target_label=target_label,
        property_label=property_label or None,
    )


_REQUIRED = ("property", "action", "target", "target_label")


def read_mapping_file(path: str) -> MappingTable:
    """Parse ``property  action  target  target_label [property_label]`` TSV."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = f.read().splitlines()
    except OSError as e:
        raise InputFileError(path, e.strerror or str(e)) from e
    if not lines:
        raise MappingTableError(path, 1, "missing header")

    header = [c.strip() for c in lines[0].split("\t")]
    for column in _REQUIRED:
        if column not in header:
            raise MappingTableError(path, 1, f"missing column '{column}'")
    pos = {name: i for i, name in enumerate(header)}

    rows = []
    for line_number, line in enumerate(lines[1:], start=2):
        if not line.strip() or line.startswith("#"):
            continue
        fields = [unescape(f) for f in line.split("\t")]
        if len(fields) != len(header):
            raise MappingTableError(path, line_number, f"expected {len(header)} columns")
        rows.append((line_number, {name: fields[i].strip() for name, i in pos.items()}))

    forward_targets = {r["target"] for _, r in rows if r["action"] == Action.FORWARD.value}
    rules: List[MappingRule] = []
    seen: Dict[str, int] = {}
    for line_number, row in rows:
        prop = row["property"]
        if prop in seen:
            raise MappingTableError(path, line_number, f"duplicate property {prop} (first at line {seen[prop]})")
        seen[prop] = line_number
        try:
            rules.append(
                make_rule(
                    prop,
                    row["action"],
                    row["target"] or None,
                    row["target_label"] or None,
                    row.get("property_label") or None,
                    known_targets=forward_targets,
                )
            )
        except ValueError as e:
            raise MappingTableError(path, line_number, str(e)) from None
    return MappingTable(rules, provenance=str(path))


def load_mapping(path: Optional[str] = None) -> MappingTable:
    """Load a custom mapping file, or the builtin table when ``path`` is None."""
    if path is None:
        from wdcs.mapping.builtin import builtin_table

        table = builtin_table()
        table.check_builtin_invariants()
    else:
        table = read_mapping_file(path)
    logger.info(
        "Loaded relation mapping",
        provenance=table.provenance,
        rules=len(table),
        mapped=len(table.mapped_properties),
        targets=len(table.targets),
    )
    return table
