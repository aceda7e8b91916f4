"""Global coherence checks over generated relation sets.

The constraint set is the standard point-algebra composition table restricted
to {before, equal, after}, with vague treated as "no information" (it neither
imposes nor violates a constraint); see docs/formats.md.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Iterable, Sequence

from .anchors import AnchorComparison, compare
from .model import Event, EventAxis

if TYPE_CHECKING:  # pragma: no cover
    from .relgen import RelationSet


class ConflictKind(str, Enum):
    TRANSITIVITY = "transitivity"
    COREF_DISAGREEMENT = "coref_disagreement"
    EQUAL_ASYMMETRY = "equal_asymmetry"
    ANCHOR_COREF_MISMATCH = "anchor_coref_mismatch"


@dataclass(frozen=True, slots=True)
class ConflictRecord:
    kind: ConflictKind
    events: tuple[str, ...]
    detail: str

    @property
    def sort_key(self) -> tuple[str, tuple[str, ...], str]:
        return (self.kind.value, self.events, self.detail)


# Composition of determinate point relations: r1 over (a,b) and r2 over (b,c)
# constrain (a,c) to a single relation; before/after in sequence constrain
# nothing. Keys are (label_ab, label_bc) label values.
_COMPOSE: dict[tuple[str, str], str] = {
    ("before", "before"): "before",
    ("before", "equal"): "before",
    ("equal", "before"): "before",
    ("equal", "equal"): "equal",
    ("after", "after"): "after",
    ("after", "equal"): "after",
    ("equal", "after"): "after",
}

_INVERSE = {"before": "after", "after": "before", "equal": "equal", "vague": "vague"}


def compose(label_ab: str, label_bc: str) -> str | None:
    """The single label forced on (a,c), or None when unconstrained."""
    return _COMPOSE.get((label_ab, label_bc))


def invert(label: str) -> str:
    return _INVERSE[label]


def coref_classes(events: Sequence[Event]) -> list[list[int]]:
    """Connected components of Q1 coreference links whose anchors compare SAME.

    Returns position-index classes (size >= 2) over the given ordered events.
    Q1 links with non-identical anchors do not merge; they are surfaced by
    :func:`anchor_coref_mismatches` instead.
    """
    position = {e.id: i for i, e in enumerate(events)}
    parent = list(range(len(events)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, ev in enumerate(events):
        if not ev.answers.q1.yes:
            continue
        j = position.get(ev.answers.q1.target)
        if j is None:
            continue
        if compare(ev.anchor, events[j].anchor) is not AnchorComparison.SAME:
            continue
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    groups: dict[int, list[int]] = {}
    for i in range(len(events)):
        groups.setdefault(find(i), []).append(i)
    return [sorted(g) for root, g in sorted(groups.items()) if len(g) > 1]


def anchor_coref_mismatches(events: Sequence[Event]) -> list[ConflictRecord]:
    """Q1 links whose two anchors are not textually identical."""
    position = {e.id: i for i, e in enumerate(events)}
    records = []
    for ev in events:
        if not ev.answers.q1.yes:
            continue
        j = position.get(ev.answers.q1.target)
        if j is None:
            continue
        other = events[j]
        if compare(ev.anchor, other.anchor) is not AnchorComparison.SAME:
            records.append(ConflictRecord(
                ConflictKind.ANCHOR_COREF_MISMATCH,
                (ev.id, other.id),
                f"{ev.id} marks coreference with {other.id} but their anchors "
                f"differ: {ev.anchor} vs {other.anchor}",
            ))
    return records


def check(relations: "RelationSet", events: Sequence[Event] | None = None) -> list[ConflictRecord]:
    """Report transitivity violations, duplicate-pair asymmetries, and (when the
    layer's events are supplied) coreference disagreements and anchor/coref
    mismatches. Pure and independent of the relation list's order.
    """
    conflicts: list[ConflictRecord] = []

    pair_labels: dict[tuple[str, str], str] = {}
    for rel in relations.relations:
        key = (rel.source, rel.target)
        rkey = (rel.target, rel.source)
        label = rel.label.value
        for existing_key, existing in ((key, label), (rkey, invert(label))):
            prior = pair_labels.get(existing_key)
            if prior is not None and prior != existing:
                first, second = sorted(existing_key)
                conflicts.append(ConflictRecord(
                    ConflictKind.EQUAL_ASYMMETRY,
                    (first, second),
                    f"pair {first}-{second} carries incompatible labels "
                    + " and ".join(sorted((prior, existing))),
                ))
        pair_labels[key] = label
        pair_labels[rkey] = invert(label)

    order = _event_order(relations, events)
    conflicts.extend(_transitivity_conflicts(order, pair_labels))

    if events is not None:
        main = [e for e in events if e.axis is EventAxis.MAIN]
        conflicts.extend(anchor_coref_mismatches(main))
        conflicts.extend(coref_disagreements(main, pair_labels))

    return sorted(set(conflicts), key=lambda c: c.sort_key)


def coref_disagreements(
    events: Sequence[Event],
    pair_labels: dict[tuple[str, str], str],
) -> list[ConflictRecord]:
    """Classes of coreferent events whose determinate labels toward an outside
    event disagree."""
    records = []
    ids = [e.id for e in events]
    for cls in coref_classes(events):
        members = {ids[i] for i in cls}
        for pos, eid in enumerate(ids):
            if eid in members:
                continue
            got: dict[str, list[str]] = {}
            for i in cls:
                label = pair_labels.get((ids[i], eid))
                if label is not None and label != "vague":
                    got.setdefault(label, []).append(ids[i])
            if len(got) > 1:
                involved = sorted({m for ms in got.values() for m in ms}) + [eid]
                records.append(ConflictRecord(
                    ConflictKind.COREF_DISAGREEMENT,
                    tuple(involved),
                    f"coreferent events {', '.join(sorted(members))} disagree toward "
                    f"{eid}: " + ", ".join(f"{l} ({'/'.join(ms)})" for l, ms in sorted(got.items())),
                ))
    return records


def _event_order(relations: "RelationSet", events: Sequence[Event] | None) -> list[str]:
    if events is not None:
        return [e.id for e in events if e.axis is EventAxis.MAIN]
    # Reconstruct document order from the stored orientation: in a total set,
    # an event is the target of exactly its position-many pairs.
    incoming: dict[str, int] = {}
    for rel in relations.relations:
        incoming.setdefault(rel.source, 0)
        incoming[rel.target] = incoming.get(rel.target, 0) + 1
    return sorted(incoming, key=lambda eid: (incoming[eid], eid))


def _transitivity_conflicts(
    order: Sequence[str],
    pair_labels: dict[tuple[str, str], str],
) -> Iterable[ConflictRecord]:
    for x in range(len(order)):
        for y in range(x + 1, len(order)):
            lab_xy = pair_labels.get((order[x], order[y]))
            if lab_xy is None or lab_xy == "vague":
                continue
            for z in range(y + 1, len(order)):
                lab_yz = pair_labels.get((order[y], order[z]))
                lab_xz = pair_labels.get((order[x], order[z]))
                if lab_yz in (None, "vague") or lab_xz in (None, "vague"):
                    continue
                forced = compose(lab_xy, lab_yz)
                if forced is not None and lab_xz != forced:
                    yield ConflictRecord(
                        ConflictKind.TRANSITIVITY,
                        (order[x], order[y], order[z]),
                        f"{order[x]} {lab_xy} {order[y]} and {order[y]} {lab_yz} "
                        f"{order[z]} force {forced}, but {order[x]}-{order[z]} "
                        f"is {lab_xz}",
                    )
