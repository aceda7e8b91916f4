"""Domain model: events, anchors, questionnaire answers, annotated documents."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Mapping

from .dates import GranularDate


class WordClass(str, Enum):
    VERB = "verb"
    NON_VERB = "non_verb"


class EventAxis(str, Enum):
    """Which storyline an event belongs to; only MAIN events are ordered."""

    MAIN = "main"
    ORTHOGONAL = "orthogonal"  # intentions, opinions
    PARALLEL = "parallel"      # hypotheticals, generics
    NONE = "none"              # negations: on no axis at all
    OTHER = "other"            # statics, recurrents


class AnchorOption(IntEnum):
    """The six ways an annotator anchors an event to the calendar."""

    EXPLICIT = 1  # date stated in the text, directly or relative to the DCT
    IMPLICIT = 2  # vague textual date, entered as a fuzzy date
    NC_PAST = 3   # no time given but clearly around the DCT: one day before it
    FUTURE = 4    # future event: one day after the DCT, or a stated future date
    EXTERNAL = 5  # exact date supplied from background/world knowledge
    UNKNOWN = 6   # clearly not around the DCT and otherwise unknowable


class Direction(str, Enum):
    BEFORE = "before"
    AFTER = "after"


@dataclass(frozen=True, slots=True)
class AnchorChoice:
    """An annotator's anchoring decision: the option, the textual cue (or
    knowledge note) that motivated it, and the entered date where the option
    takes one."""

    option: AnchorOption
    raw_cue: str = ""
    date: GranularDate | None = None


@dataclass(frozen=True, slots=True)
class Answer:
    """A yes/no answer that names a target event when affirmative (Q1, Q2)."""

    yes: bool = False
    target: str | None = None

    def __post_init__(self) -> None:
        if self.yes and self.target is None:
            raise ValueError("a yes answer requires a target event id")
        if not self.yes and self.target is not None:
            raise ValueError("a no answer must not carry a target")


@dataclass(frozen=True, slots=True)
class DirectedAnswer:
    """A yes/no answer with a before/after direction and target (Q3, Q4, Q5)."""

    yes: bool = False
    direction: Direction | None = None
    target: str | None = None

    def __post_init__(self) -> None:
        if self.yes and (self.target is None or self.direction is None):
            raise ValueError("a yes answer requires a direction and a target event id")
        if not self.yes and (self.target is not None or self.direction is not None):
            raise ValueError("a no answer must not carry a direction or target")


_NO = Answer()
_NO_DIRECTED = DirectedAnswer()


@dataclass(frozen=True, slots=True)
class AnswerSheet:
    """The per-event questionnaire.

    Q1 marks coreference with a later mention; Q2 simultaneity within the
    sentence; Q3 same-day order; Q4 order for unknown-date events; Q5 order
    under a shared implicit time; Q6 "happened around the DCT"; Q7 "happens
    in the future".
    """

    q1: Answer = _NO
    q2: Answer = _NO
    q3: DirectedAnswer = _NO_DIRECTED
    q4: DirectedAnswer = _NO_DIRECTED
    q5: DirectedAnswer = _NO_DIRECTED
    q6: bool = False
    q7: bool = False

    @property
    def any_affirmative(self) -> bool:
        return (
            self.q1.yes or self.q2.yes or self.q3.yes or self.q4.yes or self.q5.yes
            or self.q6 or self.q7
        )

    def targeted(self):
        """Yield (question name, answer) for every affirmative targeting answer."""
        for name in ("q1", "q2", "q3", "q4", "q5"):
            ans = getattr(self, name)
            if ans.yes:
                yield name, ans


@dataclass(frozen=True, slots=True)
class Event:
    """A trigger span in one sentence, with its anchoring and questionnaire.

    ``anchor`` is the option resolved against the document's DCT; it is only
    ``None`` when resolution was impossible (fuzzy DCT), which validation
    reports before the anchor could ever be consulted.
    """

    id: str
    sentence_index: int
    span: tuple[int, int]
    trigger_text: str
    word_class: WordClass
    axis: EventAxis
    anchor_option: AnchorChoice
    anchor: GranularDate | None
    answers: AnswerSheet = AnswerSheet()

    @property
    def order_key(self) -> tuple[int, int, int]:
        return (self.sentence_index, self.span[0], self.span[1])


@dataclass(frozen=True, slots=True)
class AnnotatedDocument:
    """One article: sentences, its creation time, and per-annotator event layers.

    Events in each layer must be listed in document order (ascending
    (sentence_index, span)) with unique ids, so that list position is the
    canonical event order used for pair enumeration and the
    "subsequent target" constraints.
    """

    doc_id: str
    dct: GranularDate
    title: str
    sentences: tuple[str, ...]
    layers: Mapping[str, tuple[Event, ...]]
    retrieval_query: str | None = None

    def __post_init__(self) -> None:
        for layer, events in self.layers.items():
            seen: set[str] = set()
            for prev, cur in zip(events, events[1:]):
                if cur.order_key <= prev.order_key:
                    raise ValueError(
                        f"layer {layer!r}: events not in strict document order "
                        f"at {cur.id!r}"
                    )
            for ev in events:
                if ev.id in seen:
                    raise ValueError(f"layer {layer!r}: duplicate event id {ev.id!r}")
                seen.add(ev.id)

    def layer(self, name: str) -> tuple[Event, ...]:
        try:
            return self.layers[name]
        except KeyError:
            raise KeyError(f"document {self.doc_id!r} has no layer {name!r}") from None

    def layer_names(self) -> list[str]:
        return sorted(self.layers)

    def main_events(self, layer: str) -> tuple[Event, ...]:
        return tuple(e for e in self.layer(layer) if e.axis is EventAxis.MAIN)


@dataclass(frozen=True, slots=True)
class ValidationIssue:
    code: str
    message: str
    event_id: str | None = None
    layer: str | None = None

    @property
    def sort_key(self) -> tuple[str, str, str, str]:
        return (self.layer or "", self.event_id or "", self.code, self.message)


@dataclass(frozen=True, slots=True)
class ValidationReport:
    """Errors block relation generation; warnings are advisory lints."""

    errors: tuple[ValidationIssue, ...] = ()
    warnings: tuple[ValidationIssue, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors

    def merged(self, other: "ValidationReport") -> "ValidationReport":
        return ValidationReport(
            tuple(sorted(self.errors + other.errors, key=lambda i: i.sort_key)),
            tuple(sorted(self.warnings + other.warnings, key=lambda i: i.sort_key)),
        )
