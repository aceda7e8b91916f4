"""Acceptance suite: one test per release criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines alongside the pytest verdicts.
"""

from __future__ import annotations

import datetime
import itertools
import random
import time

from timelinekit.anchors import resolve_anchor
from timelinekit.consistency import ConflictKind, check
from timelinekit.corpus_io import (
    AblationCriterion,
    AblationSpec,
    ablate,
    dumps_canonical,
    export_pairs,
    load_corpus,
    manifest_to_json,
    non_vague_counts,
    relation_set_to_json,
    split_corpus,
)
from timelinekit.dates import GranularDate
from timelinekit.metrics import ContingencyMatrix, agreement_from_matrix, evaluate, round2
from timelinekit.model import (
    AnchorChoice,
    AnchorOption,
    AnswerSheet,
    Answer,
    DirectedAnswer,
    Direction,
    Event,
    EventAxis,
    WordClass,
)
from timelinekit.relgen import Provenance, RelationLabel, generate_relations, label_pair
from timelinekit.synth import random_document

from tests.conftest import FIXTURES, GOLDEN


def _report(name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[{status}] {name}{suffix}")
    assert ok, f"{name}{suffix}"


# -- criterion 1: published contingency-matrix oracle -------------------------


def test_contingency_matrix_oracle():
    started = time.perf_counter()
    matrix = ContingencyMatrix((
        (397, 11, 0, 26),
        (8, 336, 1, 28),
        (2, 0, 10, 2),
        (36, 17, 0, 1268),
    ))
    report = agreement_from_matrix(matrix)
    elapsed = time.perf_counter() - started
    ok = (
        abs(report.relation_micro_f1 - 93.88) <= 0.01
        and abs(report.kappa - 0.8882) <= 0.0005
        and elapsed < 1.0
    )
    _report(
        "contingency-matrix oracle",
        ok,
        f"micro={report.relation_micro_f1:.4f} kappa={report.kappa:.6f} {elapsed:.3f}s",
    )


# -- criterion 2: generation-rule truth table ---------------------------------

# Independent transcription of the published generation method, straight from
# its boolean structure (the production code is an ordered rule cascade with
# provenance; this is the raw formula).


def _reference_label(cmp, q1_hit, q2_hit, q3, q4, q5, q6_a, q6_b, q7_a, q7_b):
    eq = (cmp == "same") and (q1_hit or q2_hit)
    guards_pass = ((not q6_a) or (not q6_b)) and ((not q7_a) or (not q7_b))
    before = (
        ((cmp == "before") and guards_pass)
        or ((cmp == "same") and q3 == "before")
        or (q4 == "before")
        or (q5 == "before")
    )
    after = (
        ((cmp == "after") and guards_pass)
        or ((cmp == "same") and q3 == "after")
        or (q4 == "after")
        or (q5 == "after")
    )
    if eq:
        return "equal"
    if before:
        return "before"
    if after:
        return "after"
    return "vague"


_CMP_ANCHORS = {
    "same": (GranularDate(2021, 5, 10), GranularDate(2021, 5, 10)),
    "before": (GranularDate(2021, 5, 9), GranularDate(2021, 5, 10)),
    "after": (GranularDate(2021, 5, 10), GranularDate(2021, 5, 9)),
    "indeterminate": (GranularDate(2021, 5), GranularDate(2021, 5, 10)),
}


def _case_event(eid, anchor, q1, q2, q3, q4, q5, q6, q7, target):
    def directed(direction):
        if direction is None:
            return DirectedAnswer()
        return DirectedAnswer(yes=True, direction=Direction(direction), target=target)

    return Event(
        id=eid, sentence_index=0, span=(0, 3), trigger_text="met",
        word_class=WordClass.VERB, axis=EventAxis.MAIN,
        anchor_option=AnchorChoice(option=AnchorOption.IMPLICIT, date=anchor),
        anchor=anchor,
        answers=AnswerSheet(
            q1=Answer(yes=True, target=target) if q1 else Answer(),
            q2=Answer(yes=True, target=target) if q2 else Answer(),
            q3=directed(q3), q4=directed(q4), q5=directed(q5), q6=q6, q7=q7,
        ),
    )


def test_generation_truth_table_equivalence():
    started = time.perf_counter()
    cases = 0
    mismatches = []
    directions = (None, "before", "after")
    for cmp, q1, q2, q3, q4, q5, q6_a, q6_b, q7_a, q7_b in itertools.product(
        _CMP_ANCHORS, (False, True), (False, True), directions, directions,
        directions, (False, True), (False, True), (False, True), (False, True),
    ):
        anchor_a, anchor_b = _CMP_ANCHORS[cmp]
        a = _case_event("a", anchor_a, q1, q2, q3, q4, q5, q6_a, q7_a, target="b")
        b = _case_event("b", anchor_b, False, False, None, None, None, q6_b, q7_b,
                        target="a")
        got, _ = label_pair(a, b)
        want = _reference_label(
            cmp if cmp != "indeterminate" else "indet",
            q1, q2, q3, q4, q5, q6_a, q6_b, q7_a, q7_b,
        )
        cases += 1
        if got.value != want:
            mismatches.append((cmp, q1, q2, q3, q4, q5, q6_a, q6_b, q7_a, q7_b,
                               got.value, want))

    # answers aimed at a different event must count as misses
    for q3 in ("before", "after"):
        anchor_a, anchor_b = _CMP_ANCHORS["same"]
        a = _case_event("a", anchor_a, True, True, q3, q3, q3, False, False,
                        target="zzz")
        b = _case_event("b", anchor_b, False, False, None, None, None, False, False,
                        target="a")
        got, _ = label_pair(a, b)
        cases += 1
        if got is not RelationLabel.VAGUE:
            mismatches.append(("miss-target", q3, got.value))

    elapsed = time.perf_counter() - started
    _report(
        "generation-rule truth table",
        not mismatches and elapsed < 5.0,
        f"{cases} cases, {len(mismatches)} mismatches, {elapsed:.2f}s",
    )


# -- criterion 3: soft transitivity over randomized documents ------------------

_ANCHOR_DERIVED = {Provenance.ANCHOR_ORDER, Provenance.EQ_COREF, Provenance.EQ_SIMUL}


def test_soft_transitivity_over_randomized_documents():
    started = time.perf_counter()
    rng = random.Random(20240613)
    inversions = 0
    anchor_transitivity_conflicts = 0
    documents = 10_000
    for i in range(documents):
        doc = random_document(rng, f"d{i}", rng.randint(3, 12))
        relset = generate_relations(doc, "ann1")
        labels = {}
        provenance = {}
        order = {e.id: k for k, e in enumerate(doc.main_events("ann1"))}
        for rel in relset.relations:
            key = (order[rel.source], order[rel.target])
            labels[key] = rel.label
            provenance[key] = rel.provenance
        n = len(order)
        for x in range(n):
            for y in range(x + 1, n):
                if labels[(x, y)] is not RelationLabel.BEFORE:
                    continue
                for z in range(y + 1, n):
                    if labels[(y, z)] is RelationLabel.BEFORE and labels[(x, z)] in (
                        RelationLabel.AFTER, RelationLabel.EQUAL,
                    ):
                        inversions += 1
        for conflict in check(relset, doc.layer("ann1")):
            if conflict.kind is not ConflictKind.TRANSITIVITY:
                continue
            ids = conflict.events
            keys = [
                (order[ids[0]], order[ids[1]]),
                (order[ids[1]], order[ids[2]]),
                (order[ids[0]], order[ids[2]]),
            ]
            if all(provenance[k] in _ANCHOR_DERIVED for k in keys):
                anchor_transitivity_conflicts += 1
    elapsed = time.perf_counter() - started
    _report(
        "soft transitivity over randomized documents",
        inversions == 0 and anchor_transitivity_conflicts == 0 and elapsed < 60.0,
        f"{documents} documents, {inversions} inversions, "
        f"{anchor_transitivity_conflicts} anchor-derived conflicts, {elapsed:.1f}s",
    )


# -- criterion 4: totality and determinism over the fixtures -------------------


def test_totality_and_determinism_on_fixtures():
    checked = 0
    ok = True
    for name in ("mini", "dual", "synth48"):
        corpus = load_corpus(FIXTURES / name)
        for doc in corpus.documents.values():
            for layer in doc.layer_names():
                first = generate_relations(doc, layer)
                second = generate_relations(doc, layer)
                n = len(doc.main_events(layer))
                checked += 1
                if len(first.relations) != n * (n - 1) // 2:
                    ok = False
                if dumps_canonical(relation_set_to_json(first)) != dumps_canonical(
                    relation_set_to_json(second)
                ):
                    ok = False
    _report("totality and determinism on fixtures", ok, f"{checked} document-layers")


# -- criterion 5: narrative-container arithmetic vs calendar oracle ------------


def test_narrative_container_arithmetic_against_calendar_oracle():
    rng = random.Random(99)
    dcts = [
        datetime.date(2020, 2, 29), datetime.date(2020, 3, 1),
        datetime.date(2021, 1, 1), datetime.date(2020, 12, 31),
        datetime.date(2000, 3, 1), datetime.date(1900, 3, 1),
        datetime.date(2400, 2, 29), datetime.date(1999, 12, 31),
    ]
    while len(dcts) < 1000:
        year = rng.randint(1001, 2998)
        month = rng.randint(1, 12)
        day = rng.randint(1, [31, 29 if (year % 4 == 0 and (year % 100 != 0 or year % 400 == 0)) else 28,
                               31, 30, 31, 30, 31, 31, 30, 31, 30, 31][month - 1])
        dcts.append(datetime.date(year, month, day))
    mismatches = 0
    for dct in dcts:
        granular = GranularDate(dct.year, dct.month, dct.day)
        past = resolve_anchor(AnchorOption.NC_PAST, None, granular)
        future = resolve_anchor(AnchorOption.FUTURE, None, granular)
        want_past = dct - datetime.timedelta(days=1)
        want_future = dct + datetime.timedelta(days=1)
        if (past.year, past.month, past.day) != (want_past.year, want_past.month, want_past.day):
            mismatches += 1
        if (future.year, future.month, future.day) != (
            want_future.year, want_future.month, want_future.day,
        ):
            mismatches += 1
    _report(
        "narrative-container arithmetic vs calendar oracle",
        mismatches == 0,
        f"{len(dcts)} DCTs incl. leap days and year boundaries",
    )


# -- criterion 6: split construction -------------------------------------------


def test_split_construction_on_synth48():
    corpus = load_corpus(FIXTURES / "synth48")
    counts = non_vague_counts(corpus)
    total = sum(counts.values())
    bound = max(counts.values())
    first = split_corpus(corpus, ratios=(0.7, 0.1, 0.2), seed=13)
    second = split_corpus(corpus, ratios=(0.7, 0.1, 0.2), seed=13)
    first_bytes = dumps_canonical(manifest_to_json(first))
    ok = first_bytes == dumps_canonical(manifest_to_json(second))
    golden = (GOLDEN / "synth48_manifest_seed13.json").read_text(encoding="utf-8")
    ok = ok and first_bytes == golden
    detail = []
    for name, ratio in zip(("train", "dev", "test"), (0.7, 0.1, 0.2)):
        got = sum(counts[d] for d, s in first.split.assignment.items() if s == name)
        detail.append(f"{name}={100 * got / total:.2f}%")
        if abs(got - ratio * total) > bound:
            ok = False
    _report(
        "split construction (seed 13)",
        ok,
        f"{' '.join(detail)}, bound={bound} pairs, bit-stable",
    )


# -- criterion 7: ablation partitions -------------------------------------------


def test_ablation_partitions_exactly():
    corpus = load_corpus(FIXTURES / "synth48")
    manifest = split_corpus(corpus, ratios=(0.7, 0.1, 0.2), seed=13)
    test_docs = [d for d, s in manifest.split.assignment.items() if s == "test"]
    items = [
        (corpus.documents[d], generate_relations(corpus.documents[d], "ann1"))
        for d in corpus.documents
        if d in test_docs
    ]
    records = export_pairs(items, include_vague=True)
    ok = len(records) > 0
    for spec in (
        AblationSpec(AblationCriterion.WORD_CLASS),
        AblationSpec(AblationCriterion.WINDOW, threshold=4),
    ):
        split_a, split_b = ablate(records, spec)
        union = sorted(
            (r.doc_id, r.source, r.target) for r in split_a + split_b
        )
        whole = sorted((r.doc_id, r.source, r.target) for r in records)
        if union != whole or len(split_a) + len(split_b) != len(records):
            ok = False
        overlap = {(r.doc_id, r.source, r.target) for r in split_a} & {
            (r.doc_id, r.source, r.target) for r in split_b
        }
        if overlap:
            ok = False
    _report("ablation partitions", ok, f"{len(records)} test pairs")


# -- criterion 8: evaluation harness ---------------------------------------------


def test_eval_harness_exact_values():
    B, A, E, V = (RelationLabel.BEFORE, RelationLabel.AFTER,
                  RelationLabel.EQUAL, RelationLabel.VAGUE)
    gold = {1: B, 2: B, 3: A, 4: E, 5: V}
    perfect = evaluate(gold, {1: B, 2: B, 3: A, 4: E})
    ok = perfect.micro_f1 == 100.0 and all(
        s.precision == s.recall == s.f1 == 100.0 for s in perfect.per_label.values()
    )
    hand = evaluate({1: B, 2: B, 3: A, 4: E}, {1: B, 2: A, 3: A, 4: A})
    before = hand.per_label[B]
    after = hand.per_label[A]
    equal = hand.per_label[E]
    ok = ok and (before.precision, before.recall, round2(before.f1)) == (100.0, 50.0, 66.67)
    ok = ok and (round2(after.precision), after.recall, after.f1) == (33.33, 100.0, 50.0)
    ok = ok and (equal.precision, equal.recall, equal.f1) == (0.0, 0.0, 0.0)
    ok = ok and hand.micro_f1 == 50.0
    _report("evaluation harness", ok, "perfect=100, hand-counted example exact")
