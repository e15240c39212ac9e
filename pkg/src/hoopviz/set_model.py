"""Set systems derived from membership data.

A membership table maps items (people) to the labels they hold. The set
system derived from it keeps one zone per *exact* label combination that
occurs: an item belongs to exactly one zone. Zones carry positive item
counts as weights.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .errors import (
    DuplicateItemIdError,
    EmptyTableError,
    InvalidSystemError,
    InvalidTableError,
    ParseError,
)

MAX_SETS = 16


@dataclass(frozen=True)
class MembershipTable:
    """Items paired with their interest labels, in input order."""

    items: tuple[tuple[str, tuple[str, ...]], ...]


@dataclass(frozen=True)
class SetSystem:
    """Named sets plus the non-empty exact intersections present in the data.

    Zones are tuples of sorted set indices; weights are per-zone item counts.
    """

    set_names: tuple[str, ...]
    zones: tuple[tuple[int, ...], ...]
    zone_weights: tuple[int, ...]

    @property
    def n_sets(self) -> int:
        return len(self.set_names)

    @property
    def n_zones(self) -> int:
        return len(self.zones)

    def zone_masks(self) -> tuple[int, ...]:
        """Each zone as a bitmask over set indices."""
        return tuple(_mask(zone) for zone in self.zones)


def _mask(zone: tuple[int, ...]) -> int:
    mask = 0
    for s in zone:
        mask |= 1 << s
    return mask


def zones_from_memberships(table: MembershipTable) -> tuple[SetSystem, int]:
    """Derive the set system from a membership table.

    Returns the system and the number of items skipped for having an
    empty interest list. Item ids must be unique and labels within one
    item distinct.
    """
    seen_ids: set[str] = set()
    combos: dict[frozenset[str], int] = {}
    skipped = 0
    for item_id, interests in table.items:
        if item_id in seen_ids:
            raise DuplicateItemIdError(f"duplicate item id {item_id!r}")
        seen_ids.add(item_id)
        if len(set(interests)) != len(interests):
            raise InvalidTableError(f"item {item_id!r} repeats an interest label")
        if not interests:
            skipped += 1
            continue
        combo = frozenset(interests)
        combos[combo] = combos.get(combo, 0) + 1
    if not combos:
        raise EmptyTableError("no item has any interest")

    names = sorted({label for combo in combos for label in combo})
    index = {name: i for i, name in enumerate(names)}
    zones = []
    weights = []
    for combo, count in combos.items():
        zones.append(tuple(sorted(index[label] for label in combo)))
        weights.append(count)
    system = SetSystem(tuple(names), tuple(zones), tuple(weights))
    return canonicalize(system), skipped


def validate(system: SetSystem) -> list[str]:
    """Return the list of violated invariants; empty means valid."""
    violations: list[str] = []
    names = system.set_names
    if len(set(names)) != len(names):
        dupes = sorted({n for n in names if names.count(n) > 1})
        violations.append(f"duplicate set names: {', '.join(dupes)}")
    if any(not n for n in names):
        violations.append("empty set name")
    if len(names) > MAX_SETS:
        violations.append(f"{len(names)} sets exceeds the supported maximum of {MAX_SETS}")

    if len(system.zone_weights) != len(system.zones):
        violations.append("zone_weights length differs from zone count")
    for i, w in enumerate(system.zone_weights):
        if w < 1:
            violations.append(f"zone {i} has non-positive weight {w}")

    seen: dict[tuple[int, ...], int] = {}
    covered: set[int] = set()
    for i, zone in enumerate(system.zones):
        if not zone:
            violations.append(f"zone {i} is empty")
            continue
        if tuple(sorted(zone)) != zone:
            violations.append(f"zone {i} members not sorted")
        if any(s < 0 or s >= len(names) for s in zone):
            violations.append(f"zone {i} has out-of-range set index")
            continue
        key = tuple(sorted(zone))
        if key in seen:
            members = "{" + ", ".join(names[s] for s in key) + "}"
            violations.append(f"zones {seen[key]} and {i} duplicate the subset {members}")
        else:
            seen[key] = i
        covered.update(zone)
    for s, name in enumerate(names):
        if s not in covered:
            violations.append(f"set {name!r} appears in no zone")
    return violations


def canonicalize(system: SetSystem) -> SetSystem:
    """Alphabetical set names, zones sorted by (cardinality, members).

    Idempotent; raises InvalidSystemError on an invalid input system.
    """
    violations = validate(system)
    if violations:
        raise InvalidSystemError(violations)
    order = sorted(range(len(system.set_names)), key=lambda s: system.set_names[s])
    remap = {old: new for new, old in enumerate(order)}
    names = tuple(system.set_names[s] for s in order)
    rezoned = [
        (tuple(sorted(remap[s] for s in zone)), weight)
        for zone, weight in zip(system.zones, system.zone_weights)
    ]
    rezoned.sort(key=lambda zw: (len(zw[0]), zw[0]))
    zones = tuple(zone for zone, _ in rezoned)
    weights = tuple(weight for _, weight in rezoned)
    return SetSystem(names, zones, weights)


# ---------------------------------------------------------------------------
# Input formats
# ---------------------------------------------------------------------------

def parse_items_text(text: str) -> MembershipTable:
    """Parse the items format: one `item_id: label, label, ...` per line.

    Blank lines and lines starting with '#' are ignored.
    """
    items: list[tuple[str, tuple[str, ...]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise ParseError(f"line {lineno}: expected 'item_id: labels', got {line!r}")
        item_id, _, rest = line.partition(":")
        item_id = item_id.strip()
        if not item_id:
            raise ParseError(f"line {lineno}: empty item id")
        labels = [part.strip() for part in rest.split(",")] if rest.strip() else []
        if any(not label for label in labels):
            raise ParseError(f"line {lineno}: empty label")
        if len(set(labels)) != len(labels):
            raise ParseError(f"line {lineno}: repeated label for item {item_id!r}")
        items.append((item_id, tuple(labels)))
    return MembershipTable(tuple(items))


def system_from_zones_doc(doc: Any) -> SetSystem:
    """Build a SetSystem from a parsed zones-format document."""
    if not isinstance(doc, dict):
        raise ParseError("zones document must be a JSON object")
    try:
        names = doc["sets"]
        zone_entries = doc["zones"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"zones document missing field: {exc}") from exc
    if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
        raise ParseError("'sets' must be a list of strings")
    index = {name: i for i, name in enumerate(names)}
    if len(index) != len(names):
        raise ParseError("'sets' contains duplicate names")
    zones: list[tuple[int, ...]] = []
    weights: list[int] = []
    if not isinstance(zone_entries, list):
        raise ParseError("'zones' must be a list")
    for i, entry in enumerate(zone_entries):
        if not isinstance(entry, dict) or "members" not in entry:
            raise ParseError(f"zone {i}: expected an object with 'members'")
        members = entry["members"]
        if not isinstance(members, list) or not all(isinstance(mb, str) for mb in members):
            raise ParseError(f"zone {i}: 'members' must be a list of set names")
        try:
            zones.append(tuple(sorted(index[mb] for mb in members)))
        except KeyError as exc:
            raise ParseError(f"zone {i}: unknown set name {exc.args[0]!r}") from exc
        weight = entry.get("weight", 1)
        if not isinstance(weight, int) or isinstance(weight, bool):
            raise ParseError(f"zone {i}: weight must be an integer")
        weights.append(weight)
    return SetSystem(tuple(names), tuple(zones), tuple(weights))


def parse_zones_json(text: str) -> SetSystem:
    """Parse the zones format: JSON with 'sets' and 'zones' fields."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return system_from_zones_doc(doc)


def zones_doc_from_system(system: SetSystem) -> dict:
    """Serialize a SetSystem to the zones-format document structure."""
    return {
        "sets": list(system.set_names),
        "zones": [
            {"members": [system.set_names[s] for s in zone], "weight": weight}
            for zone, weight in zip(system.zones, system.zone_weights)
        ],
    }


def dumps_zones(system: SetSystem) -> str:
    """Zones-format JSON text for a system, stable byte-for-byte."""
    return json.dumps(zones_doc_from_system(system), indent=2) + "\n"
