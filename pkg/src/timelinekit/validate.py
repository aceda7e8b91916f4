"""Document validation (blocking errors) and advisory event lints (warnings)."""

from __future__ import annotations

import re

from .model import (
    AnnotatedDocument,
    AnchorOption,
    Event,
    EventAxis,
    ValidationIssue,
    ValidationReport,
)

E_SPAN = "E_SPAN"
E_TARGET_MISSING = "E_TARGET_MISSING"
E_TARGET_NOT_SUBSEQUENT = "E_TARGET_NOT_SUBSEQUENT"
E_TARGET_NOT_SAME_SENTENCE = "E_TARGET_NOT_SAME_SENTENCE"
E_AXIS = "E_AXIS"
E_Q4_OPTION = "E_Q4_OPTION"
E_DCT_FUZZY = "E_DCT_FUZZY"

W_NEGATED = "W_NEGATED"
W_MODAL = "W_MODAL"
W_INTENDED = "W_INTENDED"

# Q2-Q5 targets must share the owner's sentence; Q1 may cross into following
# sentences (subsequentness alone suffices there).
_SAME_SENTENCE_QUESTIONS = {"q2", "q3", "q4", "q5"}


def validate_document(doc: AnnotatedDocument) -> ValidationReport:
    """Collect every blocking violation in every layer, deterministically ordered.

    An empty error list is exactly the admission condition for relation
    generation.
    """
    errors: list[ValidationIssue] = []

    if not doc.dct.exact:
        errors.append(ValidationIssue(E_DCT_FUZZY, f"DCT must be an exact date, got {doc.dct}"))

    for layer in doc.layer_names():
        events = doc.layers[layer]
        position = {e.id: i for i, e in enumerate(events)}

        def err(code: str, message: str, event_id: str | None, _layer=layer) -> None:
            errors.append(ValidationIssue(code, message, event_id, _layer))

        for pos, ev in enumerate(events):
            _check_span(doc, ev, err)

            if ev.axis is not EventAxis.MAIN and ev.answers.any_affirmative:
                err(
                    E_AXIS,
                    f"event {ev.id!r} is on the {ev.axis.value} axis but carries "
                    "affirmative answers; only main-axis events are ordered",
                    ev.id,
                )
            if ev.answers.q4.yes and ev.anchor_option.option is not AnchorOption.UNKNOWN:
                err(
                    E_Q4_OPTION,
                    f"event {ev.id!r} answers Q4 yes but its anchor option is "
                    f"{ev.anchor_option.option.value}, not 6 (unknown date)",
                    ev.id,
                )

            for question, answer in ev.answers.targeted():
                tpos = position.get(answer.target)
                if tpos is None:
                    err(
                        E_TARGET_MISSING,
                        f"{question} of {ev.id!r} targets {answer.target!r}, "
                        "which does not exist in this layer",
                        ev.id,
                    )
                    continue
                target = events[tpos]
                if tpos <= pos:
                    err(
                        E_TARGET_NOT_SUBSEQUENT,
                        f"{question} of {ev.id!r} targets {target.id!r}, which does "
                        "not come after it in the document",
                        ev.id,
                    )
                if question in _SAME_SENTENCE_QUESTIONS and (
                    target.sentence_index != ev.sentence_index
                ):
                    err(
                        E_TARGET_NOT_SAME_SENTENCE,
                        f"{question} of {ev.id!r} targets {target.id!r} in sentence "
                        f"{target.sentence_index}, outside its own sentence "
                        f"{ev.sentence_index}",
                        ev.id,
                    )
                if target.axis is not EventAxis.MAIN:
                    err(
                        E_AXIS,
                        f"{question} of {ev.id!r} targets {target.id!r}, which is on "
                        f"the {target.axis.value} axis",
                        ev.id,
                    )

    return ValidationReport(errors=tuple(sorted(errors, key=lambda i: i.sort_key)))


def _check_span(doc: AnnotatedDocument, ev: Event, err) -> None:
    start, end = ev.span
    if not 0 <= ev.sentence_index < len(doc.sentences):
        err(
            E_SPAN,
            f"event {ev.id!r} references sentence {ev.sentence_index}, but the "
            f"document has {len(doc.sentences)} sentences",
            ev.id,
        )
        return
    sentence = doc.sentences[ev.sentence_index]
    if not (0 <= start < end <= len(sentence)):
        err(E_SPAN, f"event {ev.id!r} span [{start}, {end}) is empty or out of bounds", ev.id)
        return
    if sentence[start:end] != ev.trigger_text:
        err(
            E_SPAN,
            f"event {ev.id!r} trigger {ev.trigger_text!r} does not match the "
            f"sentence text {sentence[start:end]!r}",
            ev.id,
        )


_NEGATION_TOKENS = {"not", "never", "cancelled", "canceled"}
_MODAL_TOKENS = {"may", "might", "must", "could", "should", "would"}
_INTENT_LEMMAS = {"plan", "aim", "intend", "hope", "want", "mean"}
_INTENT_FORMS = {
    "plan": "plan", "plans": "plan", "planned": "plan", "planning": "plan",
    "aim": "aim", "aims": "aim", "aimed": "aim", "aiming": "aim",
    "intend": "intend", "intends": "intend", "intended": "intend", "intending": "intend",
    "hope": "hope", "hopes": "hope", "hoped": "hope", "hoping": "hope",
    "want": "want", "wants": "want", "wanted": "want", "wanting": "want",
    "mean": "mean", "means": "mean", "meant": "mean", "meaning": "mean",
}

_TOKEN_RE = re.compile(r"[a-z]+'?[a-z]*")


def _tokens_before(sentence: str, start: int, n: int) -> list[str]:
    return _TOKEN_RE.findall(sentence[:start].lower())[-n:]


def _intent_lemma(token: str) -> str | None:
    return _INTENT_FORMS.get(token)


def lint_events(doc: AnnotatedDocument) -> ValidationReport:
    """Heuristic warnings for triggers that the guidelines say should not be
    annotated at all: negated, modal-governed, and intended events.

    Purely advisory; never blocks generation. No parsing is attempted — these
    are token-window cues around the trigger.
    """
    warnings: list[ValidationIssue] = []
    for layer in doc.layer_names():
        for ev in doc.layers[layer]:
            if not 0 <= ev.sentence_index < len(doc.sentences):
                continue
            sentence = doc.sentences[ev.sentence_index]
            before3 = _tokens_before(sentence, ev.span[0], 3)
            before2 = before3[-2:]

            negated = any(t in _NEGATION_TOKENS or t.endswith("n't") for t in before3) or (
                "failed" in before3 and "to" in before3
            )
            if negated:
                warnings.append(ValidationIssue(
                    W_NEGATED,
                    f"trigger {ev.trigger_text!r} follows a negation cue; cancelled "
                    "or negated events should not be annotated",
                    ev.id, layer,
                ))

            modal = False
            if before2:
                if before2[-1] in _MODAL_TOKENS:
                    modal = True
                elif len(before2) == 2 and before2[1] in ("to", "be"):
                    modal = before2[0] in _MODAL_TOKENS or before2 == ["have", "to"]
            if modal:
                warnings.append(ValidationIssue(
                    W_MODAL,
                    f"trigger {ev.trigger_text!r} is governed by a modal auxiliary; "
                    "events after modals should not be annotated",
                    ev.id, layer,
                ))

            trigger_token = ev.trigger_text.split()[0].lower() if ev.trigger_text.split() else ""
            governor = None
            if before2:
                governor = _intent_lemma(before2[-1])
                if governor is None and before2[-1] == "to" and len(before2) == 2:
                    governor = _intent_lemma(before2[0])
            if _intent_lemma(trigger_token) in _INTENT_LEMMAS or governor in _INTENT_LEMMAS:
                warnings.append(ValidationIssue(
                    W_INTENDED,
                    f"trigger {ev.trigger_text!r} looks like an intended event "
                    "(plan/aim/intend family); these should not be annotated",
                    ev.id, layer,
                ))
    return ValidationReport(warnings=tuple(sorted(warnings, key=lambda i: i.sort_key)))
