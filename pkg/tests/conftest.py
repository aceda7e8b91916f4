"""Shared test helpers: a compact document builder and fixture paths."""

from __future__ import annotations

from pathlib import Path

import pytest

from timelinekit.anchors import resolve_anchor
from timelinekit.dates import GranularDate, parse_date
from timelinekit.model import (
    AnchorChoice,
    AnchorOption,
    AnnotatedDocument,
    Answer,
    AnswerSheet,
    DirectedAnswer,
    Direction,
    Event,
    EventAxis,
    WordClass,
)

REPO = Path(__file__).resolve().parent.parent
FIXTURES = REPO / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


def answers(
    q1: str | None = None,
    q2: str | None = None,
    q3: tuple[str, str] | None = None,
    q4: tuple[str, str] | None = None,
    q5: tuple[str, str] | None = None,
    q6: bool = False,
    q7: bool = False,
) -> AnswerSheet:
    def directed(spec):
        if spec is None:
            return DirectedAnswer()
        direction, target = spec
        return DirectedAnswer(yes=True, direction=Direction(direction), target=target)

    return AnswerSheet(
        q1=Answer(yes=True, target=q1) if q1 else Answer(),
        q2=Answer(yes=True, target=q2) if q2 else Answer(),
        q3=directed(q3), q4=directed(q4), q5=directed(q5), q6=q6, q7=q7,
    )


class DocBuilder:
    """Builds small valid documents; spans are located from the trigger text."""

    def __init__(self, doc_id: str = "t1", dct: str = "2021-02-15", title: str = "Test"):
        self.doc_id = doc_id
        self.dct = parse_date(dct)
        self.title = title
        self.sentences: list[str] = []
        self.events: list[Event] = []
        self._n = 0

    def sentence(self, text: str) -> int:
        self.sentences.append(text)
        return len(self.sentences) - 1

    def event(
        self,
        trigger: str,
        sentence_index: int | None = None,
        *,
        eid: str | None = None,
        option: AnchorOption = AnchorOption.NC_PAST,
        date: str | None = None,
        cue: str = "",
        word_class: WordClass = WordClass.VERB,
        axis: EventAxis = EventAxis.MAIN,
        sheet: AnswerSheet | None = None,
        occurrence: int = 0,
        span: tuple[int, int] | None = None,
        trigger_text: str | None = None,
    ) -> str:
        if sentence_index is None:
            sentence_index = len(self.sentences) - 1
        sentence = self.sentences[sentence_index]
        if span is None:
            start = -1
            for _ in range(occurrence + 1):
                start = sentence.index(trigger, start + 1)
            span = (start, start + len(trigger))
        self._n += 1
        eid = eid or f"e{self._n}"
        entered = parse_date(date) if date else None
        self.events.append(Event(
            id=eid,
            sentence_index=sentence_index,
            span=span,
            trigger_text=trigger_text if trigger_text is not None else trigger,
            word_class=word_class,
            axis=axis,
            anchor_option=AnchorChoice(option=option, raw_cue=cue, date=entered),
            anchor=resolve_anchor(option, entered, self.dct) if self.dct.exact else None,
            answers=sheet or AnswerSheet(),
        ))
        return eid

    def build(self, layer: str = "ann1") -> AnnotatedDocument:
        return AnnotatedDocument(
            doc_id=self.doc_id,
            dct=self.dct,
            title=self.title,
            sentences=tuple(self.sentences),
            layers={layer: tuple(self.events)},
        )


def two_event_doc(
    anchor_a: str,
    anchor_b: str,
    sheet_a: AnswerSheet | None = None,
    sheet_b: AnswerSheet | None = None,
    *,
    same_sentence: bool = True,
    dct: str = "2021-05-01",
) -> AnnotatedDocument:
    """Two explicit events whose anchors are set directly (fuzzy allowed)."""
    b = DocBuilder(dct=dct)
    if same_sentence:
        b.sentence("The board met before the panel spoke.")
        b.event("met", option=AnchorOption.IMPLICIT, date=anchor_a, sheet=sheet_a)
        b.event("spoke", option=AnchorOption.IMPLICIT, date=anchor_b, sheet=sheet_b)
    else:
        b.sentence("The board met early.")
        b.event("met", option=AnchorOption.IMPLICIT, date=anchor_a, sheet=sheet_a)
        b.sentence("Later the panel spoke.")
        b.event("spoke", option=AnchorOption.IMPLICIT, date=anchor_b, sheet=sheet_b)
    return b.build()
