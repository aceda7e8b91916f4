"""Synthetic corpus generation: a simulated, competent annotator.

Each document carries a hidden ground-truth timeline (an exact day plus an
intra-day position per event). Anchor options and questionnaire answers are
derived from that truth exactly the way the guidelines direct, so any
determinate generated relation agrees with the hidden order. Fixtures and the
randomized property suites are built on this.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from datetime import date, timedelta

from .dates import GranularDate
from .model import (
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
from .corpus_io import Corpus

_SUBJECTS = (
    "The committee", "Local officials", "The ministry", "Investors", "The union",
    "Residents", "The regulator", "Analysts", "The council", "Party leaders",
)
_VERBS = (
    "approved", "announced", "rejected", "signed", "opened", "suspended",
    "launched", "confirmed", "published", "delayed", "endorsed", "unveiled",
    "halted", "expanded", "reviewed",
)
_NOUNS = (
    "summit", "election", "merger", "ceremony", "rollout", "inquiry", "strike",
    "hearing", "auction", "festival", "outbreak", "referendum", "protest", "audit",
)
_TAILS = (
    "the new measures", "the revised plan", "a second phase", "the draft budget",
    "the joint programme", "further restrictions", "the updated schedule",
    "an interim report",
)
_FILLERS = (
    "Markets stayed calm throughout the week.",
    "Few details were available at the time.",
    "The mood in the capital remained tense.",
    "Observers called the situation unusual.",
    "Coverage continued across national media.",
)


@dataclass
class _Planned:
    """One planned event before it is turned into a model Event."""

    trigger: str
    word_class: WordClass
    axis: EventAxis
    option: AnchorOption
    cue: str
    entered: GranularDate | None
    truth_day: date
    truth_frac: float
    sentence_index: int = -1
    span: tuple[int, int] = (0, 0)
    q1: tuple[int, ...] = ()   # target planned-index, set later
    q2: tuple[int, ...] = ()
    q3: tuple[int, str] | None = None
    q4: tuple[int, str] | None = None
    q5: tuple[int, str] | None = None

    def truth(self) -> tuple[date, float]:
        return (self.truth_day, self.truth_frac)


def _granular(day: date) -> GranularDate:
    return GranularDate(day.year, day.month, day.day)


def _compose_sentence(tokens: list[tuple[str, bool]]) -> tuple[str, list[tuple[int, int]]]:
    """Join tokens with single spaces and a final period, returning the text
    and the char spans of tokens flagged as triggers."""
    spans = []
    pos = 0
    words = []
    for i, (token, is_trigger) in enumerate(tokens):
        if i:
            pos += 1
        if is_trigger:
            spans.append((pos, pos + len(token)))
        words.append(token)
        pos += len(token)
    return " ".join(words) + ".", spans


def _anchored_plan(rng: random.Random, dct: date, scenario: str) -> tuple[
    AnchorOption, str, GranularDate | None, date
]:
    """Pick the anchoring inputs plus a hidden truth day consistent with them."""
    if scenario == "explicit":
        day = dct - timedelta(days=rng.randint(0, 300))
        return AnchorOption.EXPLICIT, day.strftime("on %d %B %Y"), _granular(day), day
    if scenario == "implicit":
        day = dct - timedelta(days=rng.randint(20, 400))
        truth = date(day.year, day.month, rng.randint(1, 28))
        return AnchorOption.IMPLICIT, truth.strftime("in %B"), GranularDate(day.year, day.month), truth
    if scenario == "nc_past":
        return AnchorOption.NC_PAST, "", None, dct - timedelta(days=1)
    if scenario == "future_default":
        return AnchorOption.FUTURE, "soon", None, dct + timedelta(days=1)
    if scenario == "future_dated":
        day = dct + timedelta(days=rng.randint(2, 90))
        return AnchorOption.FUTURE, day.strftime("on %d %B"), _granular(day), day
    if scenario == "external":
        day = dct - timedelta(days=rng.randint(30, 2000))
        return AnchorOption.EXTERNAL, "widely reported date", _granular(day), day
    if scenario == "unknown":
        day = dct - timedelta(days=rng.randint(400, 3000))
        return AnchorOption.UNKNOWN, "", None, day
    raise ValueError(scenario)


_SINGLE_SCENARIOS = (
    ("explicit", 0.30), ("implicit", 0.15), ("nc_past", 0.15),
    ("future_default", 0.10), ("future_dated", 0.05), ("external", 0.10),
    ("unknown", 0.15),
)
_PAIR_SCENARIOS = (
    ("coref", 0.15), ("simul", 0.15), ("same_day", 0.20),
    ("unknown_pair", 0.15), ("implicit_pair", 0.15), ("independent", 0.20),
)


def _weighted(rng: random.Random, table) -> str:
    roll = rng.random() * sum(w for _, w in table)
    for name, weight in table:
        roll -= weight
        if roll < 0:
            return name
    return table[-1][0]


def _single_plan(rng: random.Random, dct: date, *, main_prob: float = 0.88) -> _Planned:
    scenario = _weighted(rng, _SINGLE_SCENARIOS)
    option, cue, entered, truth = _anchored_plan(rng, dct, scenario)
    non_verb = rng.random() < 0.25
    axis = EventAxis.MAIN
    if rng.random() > main_prob:
        axis = rng.choice((EventAxis.ORTHOGONAL, EventAxis.PARALLEL, EventAxis.NONE, EventAxis.OTHER))
    return _Planned(
        trigger=rng.choice(_NOUNS) if non_verb else rng.choice(_VERBS),
        word_class=WordClass.NON_VERB if non_verb else WordClass.VERB,
        axis=axis,
        option=option, cue=cue, entered=entered,
        truth_day=truth, truth_frac=rng.random(),
    )


def _clone_anchor(rng: random.Random, src: _Planned, *, same_truth: bool) -> _Planned:
    """A second event sharing the first one's anchor (and truth, for
    coreference/simultaneity)."""
    twin = _Planned(
        trigger=rng.choice(_VERBS),
        word_class=WordClass.VERB,
        axis=EventAxis.MAIN,
        option=src.option, cue=src.cue, entered=src.entered,
        truth_day=src.truth_day,
        truth_frac=src.truth_frac if same_truth else rng.random(),
    )
    return twin


def _paired_plans(rng: random.Random, dct: date) -> tuple[_Planned, _Planned, str]:
    scenario = _weighted(rng, _PAIR_SCENARIOS)
    if scenario in ("coref", "simul"):
        base = rng.choice(("explicit", "nc_past", "implicit", "external"))
        option, cue, entered, truth = _anchored_plan(rng, dct, base)
        first = _Planned(
            trigger=rng.choice(_VERBS), word_class=WordClass.VERB, axis=EventAxis.MAIN,
            option=option, cue=cue, entered=entered, truth_day=truth, truth_frac=rng.random(),
        )
        return first, _clone_anchor(rng, first, same_truth=True), scenario
    if scenario == "same_day":
        day = dct - timedelta(days=rng.randint(0, 200))
        fracs = sorted((rng.random(), rng.random()))
        if fracs[0] == fracs[1]:
            fracs = (0.25, 0.75)
        order = rng.random() < 0.5
        first_frac, second_frac = (fracs[0], fracs[1]) if order else (fracs[1], fracs[0])
        make = lambda frac: _Planned(
            trigger=rng.choice(_VERBS), word_class=WordClass.VERB, axis=EventAxis.MAIN,
            option=AnchorOption.EXPLICIT, cue=day.strftime("on %d %B %Y"),
            entered=_granular(day), truth_day=day, truth_frac=frac,
        )
        return make(first_frac), make(second_frac), scenario
    if scenario == "unknown_pair":
        make = lambda: _Planned(
            trigger=rng.choice(_VERBS), word_class=WordClass.VERB, axis=EventAxis.MAIN,
            option=AnchorOption.UNKNOWN, cue="", entered=None,
            truth_day=dct - timedelta(days=rng.randint(400, 3000)), truth_frac=rng.random(),
        )
        return make(), make(), scenario
    if scenario == "implicit_pair":
        day = dct - timedelta(days=rng.randint(40, 400))
        month = GranularDate(day.year, day.month)
        make = lambda: _Planned(
            trigger=rng.choice(_VERBS), word_class=WordClass.VERB, axis=EventAxis.MAIN,
            option=AnchorOption.IMPLICIT, cue=day.strftime("in %B"), entered=month,
            truth_day=date(day.year, day.month, rng.randint(1, 28)), truth_frac=rng.random(),
        )
        return make(), make(), scenario
    return _single_plan(rng, dct), _single_plan(rng, dct), "independent"


def random_document(
    rng: random.Random,
    doc_id: str,
    n_events: int,
    layer: str = "ann1",
) -> AnnotatedDocument:
    """One synthetic article with ``n_events`` events under a single layer."""
    dct = date(rng.randint(2019, 2021), rng.randint(1, 12), rng.randint(1, 28))
    planned: list[_Planned] = []
    sentences: list[str] = []
    sentence_plans: list[list[tuple[_Planned, str | None]]] = []

    while len(planned) < n_events:
        if rng.random() < 0.22:
            sentences.append(rng.choice(_FILLERS))
            sentence_plans.append([])
            continue
        remaining = n_events - len(planned)
        if remaining >= 2 and rng.random() < 0.45:
            first, second, scenario = _paired_plans(rng, dct)
            planned.extend((first, second))
            sentence_plans.append([(first, scenario), (second, None)])
        else:
            single = _single_plan(rng, dct)
            planned.append(single)
            sentence_plans.append([(single, None)])
        sentences.append("")  # filled below

    # Optional cross-sentence re-mention of an earlier anchored main event.
    if planned and rng.random() < 0.25:
        candidates = [
            i for i, p in enumerate(planned)
            if p.axis is EventAxis.MAIN and not p.q1 and p.option is not AnchorOption.UNKNOWN
        ]
        if candidates:
            src_index = rng.choice(candidates)
            twin = _clone_anchor(rng, planned[src_index], same_truth=True)
            planned.append(twin)
            sentence_plans.append([(twin, "coref_chain")])
            sentences.append("")
            planned[src_index].q1 = (len(planned) - 1,)

    # Realize sentences and spans.
    index_of = {id(p): i for i, p in enumerate(planned)}
    for s_i, plans in enumerate(sentence_plans):
        if not plans:
            continue
        tokens: list[tuple[str, bool]] = []
        subject = rng.choice(_SUBJECTS)
        if len(plans) == 1:
            p = plans[0][0]
            if p.word_class is WordClass.NON_VERB:
                tokens = [("The", False), (p.trigger, True),
                          ("drew", False), ("wide", False), ("attention", False)]
            else:
                tokens = [(subject, False), (p.trigger, True),
                          (rng.choice(_TAILS), False)]
        else:
            first, second = plans[0][0], plans[1][0]
            tokens = [(subject, False), (first.trigger, True), (rng.choice(_TAILS), False)]
            if second.word_class is WordClass.NON_VERB:
                tokens += [("after", False), ("the", False), (second.trigger, True)]
            else:
                tokens += [("while", False), ("delegates", False), (second.trigger, True),
                           (rng.choice(_TAILS), False)]
        text, spans = _compose_sentence(tokens)
        sentences[s_i] = text
        for (p, _), span in zip(plans, spans):
            p.sentence_index = s_i
            p.span = span

    # Questionnaire answers, derived from the hidden truth.
    for s_plans in sentence_plans:
        if len(s_plans) != 2:
            continue
        first, scenario = s_plans[0]
        second = s_plans[1][0]
        j = index_of[id(second)]
        if scenario == "coref":
            first.q1 = (j,)
        elif scenario == "simul":
            first.q2 = (j,)
        elif scenario == "same_day" and first.truth() != second.truth():
            first.q3 = (j, "before" if first.truth() < second.truth() else "after")
        elif scenario == "unknown_pair" and first.truth() != second.truth():
            first.q4 = (j, "before" if first.truth() < second.truth() else "after")
        elif scenario == "implicit_pair" and first.truth() != second.truth():
            first.q5 = (j, "before" if first.truth() < second.truth() else "after")

    events = []
    for i, p in enumerate(planned):
        if p.axis is EventAxis.MAIN:
            q6 = p.truth_day in (dct - timedelta(days=1), dct)
            q7 = p.truth_day > dct
        else:
            q6 = q7 = False
        answers = AnswerSheet(
            q1=Answer(yes=True, target=f"e{p.q1[0] + 1}") if p.q1 else Answer(),
            q2=Answer(yes=True, target=f"e{p.q2[0] + 1}") if p.q2 else Answer(),
            q3=_directed(p.q3),
            q4=_directed(p.q4),
            q5=_directed(p.q5),
            q6=q6,
            q7=q7,
        )
        events.append(Event(
            id=f"e{i + 1}",
            sentence_index=p.sentence_index,
            span=p.span,
            trigger_text=p.trigger,
            word_class=p.word_class,
            axis=p.axis,
            anchor_option=AnchorChoice(option=p.option, raw_cue=p.cue, date=p.entered),
            anchor=_resolve_for_plan(p, dct),
            answers=answers,
        ))

    return AnnotatedDocument(
        doc_id=doc_id,
        dct=_granular(dct),
        title=f"Synthetic article {doc_id}",
        sentences=tuple(sentences),
        layers={layer: tuple(events)},
        retrieval_query="synthetic fixture",
    )


def _directed(spec: tuple[int, str] | None) -> DirectedAnswer:
    if spec is None:
        return DirectedAnswer()
    j, direction = spec
    return DirectedAnswer(yes=True, direction=Direction(direction), target=f"e{j + 1}")


def _resolve_for_plan(p: _Planned, dct: date) -> GranularDate:
    from .anchors import resolve_anchor

    return resolve_anchor(p.option, p.entered, _granular(dct))


def random_corpus(
    seed: int,
    n_docs: int,
    name: str = "synthetic",
    min_events: int = 3,
    max_events: int = 12,
    layer: str = "ann1",
) -> Corpus:
    """A deterministic synthetic corpus with one annotator layer per document."""
    rng = random.Random(seed)
    documents = {}
    doc_paths = {}
    for i in range(n_docs):
        doc_id = f"d{i + 1:03d}"
        doc = random_document(rng, doc_id, rng.randint(min_events, max_events), layer=layer)
        documents[doc_id] = doc
        doc_paths[doc_id] = f"documents/{doc_id}.json"
    return Corpus(name=name, documents=documents, doc_paths=doc_paths)
