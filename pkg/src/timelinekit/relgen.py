"""Pairwise temporal relation generation.

Every ordered pair of main-axis events receives exactly one of
before/after/equal/vague, decided from the two anchors and the earlier
event's questionnaire answers, followed by a coreference closure that
propagates labels through classes of co-referring events.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .anchors import AnchorComparison, compare
from .consistency import (
    ConflictKind,
    ConflictRecord,
    anchor_coref_mismatches,
    coref_classes,
)
from .errors import UnresolvedAnchorError, ValidationFailed
from .model import AnnotatedDocument, Direction, Event
from .validate import validate_document


class RelationLabel(str, Enum):
    BEFORE = "before"
    AFTER = "after"
    EQUAL = "equal"
    VAGUE = "vague"


class Provenance(str, Enum):
    """Which rule of the generation method produced a label."""

    EQ_COREF = "eq_coref"              # equal: Q1 coreference, identical anchors
    EQ_SIMUL = "eq_simul"              # equal: Q2 simultaneity, identical anchors
    ANCHOR_ORDER = "anchor_order"      # before/after: determinate anchor interval order
    SAME_DAY_Q3 = "same_day_q3"        # before/after: Q3 order within a shared day
    UNKNOWN_Q4 = "unknown_q4"          # before/after: Q4 order for an unknown-date event
    IMPLICIT_Q5 = "implicit_q5"        # before/after: Q5 order under a shared implicit time
    GUARD_DCT_Q6 = "guard_dct_q6"      # vague: both events around the DCT, anchors differ
    GUARD_FUTURE_Q7 = "guard_future_q7"  # vague: both events in the future, anchors differ
    DEFAULT_VAGUE = "default_vague"    # vague: no rule fired
    COREF_PROPAGATED = "coref_propagated"  # set by the coreference closure


_EQUAL_PROVENANCES = frozenset(
    {Provenance.EQ_COREF, Provenance.EQ_SIMUL, Provenance.COREF_PROPAGATED}
)

_LABEL_INVERSE = {
    RelationLabel.BEFORE: RelationLabel.AFTER,
    RelationLabel.AFTER: RelationLabel.BEFORE,
    RelationLabel.EQUAL: RelationLabel.EQUAL,
    RelationLabel.VAGUE: RelationLabel.VAGUE,
}


@dataclass(frozen=True, slots=True)
class TemporalRelation:
    """One labelled pair; source precedes target in document order."""

    source: str
    target: str
    window: int
    label: RelationLabel
    provenance: Provenance

    def __post_init__(self) -> None:
        if self.window < 0:
            raise ValueError("relation window must be non-negative")
        if self.label is RelationLabel.EQUAL and self.provenance not in _EQUAL_PROVENANCES:
            raise ValueError(f"equal labels cannot come from {self.provenance.value}")


@dataclass(frozen=True, slots=True)
class RelationSet:
    """All pairwise relations of one document layer, plus surfaced conflicts."""

    doc_id: str
    layer: str
    relations: tuple[TemporalRelation, ...]
    conflicts: tuple[ConflictRecord, ...] = ()


def enumerate_pairs(
    doc: AnnotatedDocument, layer: str
) -> list[tuple[str, str, int]]:
    """All ordered main-axis event pairs (source, target, window), in document
    order, where the window counts the sentences separating the two events."""
    events = doc.main_events(layer)
    pairs = []
    for i, a in enumerate(events):
        for b in events[i + 1:]:
            pairs.append((a.id, b.id, b.sentence_index - a.sentence_index))
    return pairs


def label_pair(a: Event, b: Event) -> tuple[RelationLabel, Provenance]:
    """Label one ordered pair (``a`` precedes ``b``) from the anchors and
    ``a``'s answers about ``b``.

    The equal rule is tried first, then the before disjuncts, then the after
    disjuncts; Q6/Q7 only guard the anchor-order disjunct, never Q3-Q5.
    """
    if a.anchor is None or b.anchor is None:
        missing = a.id if a.anchor is None else b.id
        raise UnresolvedAnchorError(f"event {missing!r} has no resolved anchor")

    outcome = compare(a.anchor, b.anchor)
    ans = a.answers
    same = outcome is AnchorComparison.SAME

    if same and ans.q1.yes and ans.q1.target == b.id:
        return RelationLabel.EQUAL, Provenance.EQ_COREF
    if same and ans.q2.yes and ans.q2.target == b.id:
        return RelationLabel.EQUAL, Provenance.EQ_SIMUL

    guard_dct = ans.q6 and b.answers.q6
    guard_future = ans.q7 and b.answers.q7
    guarded = guard_dct or guard_future

    for label, cmp_wanted, direction in (
        (RelationLabel.BEFORE, AnchorComparison.BEFORE, Direction.BEFORE),
        (RelationLabel.AFTER, AnchorComparison.AFTER, Direction.AFTER),
    ):
        if outcome is cmp_wanted and not guarded:
            return label, Provenance.ANCHOR_ORDER
        if same and _directed_hit(ans.q3, direction, b.id):
            return label, Provenance.SAME_DAY_Q3
        if _directed_hit(ans.q4, direction, b.id):
            return label, Provenance.UNKNOWN_Q4
        if _directed_hit(ans.q5, direction, b.id):
            return label, Provenance.IMPLICIT_Q5

    if outcome in (AnchorComparison.BEFORE, AnchorComparison.AFTER) and guarded:
        blocked = Provenance.GUARD_DCT_Q6 if guard_dct else Provenance.GUARD_FUTURE_Q7
        return RelationLabel.VAGUE, blocked
    return RelationLabel.VAGUE, Provenance.DEFAULT_VAGUE


def _directed_hit(answer, direction: Direction, target: str) -> bool:
    return answer.yes and answer.direction is direction and answer.target == target


def generate_relations(doc: AnnotatedDocument, layer: str) -> RelationSet:
    """Run the full generation method for one layer: label every pair, then
    apply coreference closure and surface conflicts. Raises
    :class:`ValidationFailed` when the document has validation errors.
    """
    report = validate_document(doc)
    if not report.ok:
        raise ValidationFailed(doc.doc_id, report)

    events = doc.main_events(layer)
    labels: dict[tuple[int, int], tuple[RelationLabel, Provenance]] = {}
    for i in range(len(events)):
        for j in range(i + 1, len(events)):
            labels[(i, j)] = label_pair(events[i], events[j])

    conflicts = list(anchor_coref_mismatches(events))
    conflicts.extend(_closure(events, labels))

    relations = tuple(
        TemporalRelation(
            events[i].id,
            events[j].id,
            events[j].sentence_index - events[i].sentence_index,
            label,
            provenance,
        )
        for (i, j), (label, provenance) in sorted(labels.items())
    )
    return RelationSet(
        doc_id=doc.doc_id,
        layer=layer,
        relations=relations,
        conflicts=tuple(sorted(set(conflicts), key=lambda c: c.sort_key)),
    )


def _closure(
    events: Sequence[Event],
    labels: dict[tuple[int, int], tuple[RelationLabel, Provenance]],
) -> list[ConflictRecord]:
    """Coreference closure over Q1 classes (identical anchors only).

    Within a class every pair becomes equal; toward each outside event, a
    single determinate class label overrides vague members, while disagreeing
    determinate labels are reported and left untouched.
    """
    conflicts: list[ConflictRecord] = []
    classes = coref_classes(events)
    if not classes:
        return conflicts

    def oriented(i: int, j: int) -> RelationLabel:
        if i < j:
            return labels[(i, j)][0]
        return _LABEL_INVERSE[labels[(j, i)][0]]

    def set_oriented(i: int, j: int, label: RelationLabel) -> None:
        if i < j:
            labels[(i, j)] = (label, Provenance.COREF_PROPAGATED)
        else:
            labels[(j, i)] = (_LABEL_INVERSE[label], Provenance.COREF_PROPAGATED)

    member_of: dict[int, int] = {}
    for ci, cls in enumerate(classes):
        for i in cls:
            member_of[i] = ci

    for cls in classes:
        for a in cls:
            for b in cls:
                if a < b and labels[(a, b)][0] is not RelationLabel.EQUAL:
                    labels[(a, b)] = (RelationLabel.EQUAL, Provenance.COREF_PROPAGATED)

    for ci, cls in enumerate(classes):
        for e in range(len(events)):
            if member_of.get(e) == ci:
                continue
            determinate: dict[RelationLabel, list[int]] = {}
            vague_members: list[int] = []
            for m in cls:
                label = oriented(m, e)
                if label is RelationLabel.VAGUE:
                    vague_members.append(m)
                else:
                    determinate.setdefault(label, []).append(m)
            if len(determinate) > 1:
                involved = sorted({m for ms in determinate.values() for m in ms})
                conflicts.append(ConflictRecord(
                    ConflictKind.COREF_DISAGREEMENT,
                    tuple(events[m].id for m in involved) + (events[e].id,),
                    f"coreferent events {', '.join(events[m].id for m in cls)} "
                    f"disagree toward {events[e].id}: "
                    + ", ".join(
                        f"{lab.value} ({'/'.join(events[m].id for m in ms)})"
                        for lab, ms in sorted(determinate.items(), key=lambda kv: kv[0].value)
                    ),
                ))
            elif len(determinate) == 1 and vague_members:
                (label,) = determinate
                for m in vague_members:
                    set_oriented(m, e, label)
    return conflicts
