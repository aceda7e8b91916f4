#!/usr/bin/env python3
"""Deterministically (re)build the bundled fixture corpora.

    python3 tools/build_fixtures.py [--out fixtures] [--goldens]

Three corpora are produced:

* ``mini``    — two hand-crafted articles covering every labelling rule.
* ``dual``    — a two-annotator corpus engineered so that relation agreement
                produces one exact, pre-chosen contingency matrix.
* ``synth48`` — 48 simulated articles from the seeded generator.

``--goldens`` additionally refreshes the frozen outputs under tests/golden/.
Fixtures are checked in; this script exists so they can be audited and
reproduced bit-for-bit.
"""

from __future__ import annotations

import argparse
import sys
from datetime import date, timedelta
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from timelinekit.corpus_io import Corpus, save_corpus  # noqa: E402
from timelinekit.dates import GranularDate  # noqa: E402
from timelinekit.model import (  # noqa: E402
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
from timelinekit.anchors import resolve_anchor  # noqa: E402
from timelinekit.synth import random_corpus  # noqa: E402


def _granular(day: date) -> GranularDate:
    return GranularDate(day.year, day.month, day.day)


def _event(
    eid: str,
    sentence_index: int,
    sentence: str,
    trigger: str,
    *,
    dct: GranularDate,
    option: AnchorOption = AnchorOption.EXPLICIT,
    cue: str = "",
    entered: GranularDate | None = None,
    word_class: WordClass = WordClass.VERB,
    axis: EventAxis = EventAxis.MAIN,
    q1: str | None = None,
    q2: str | None = None,
    q3: tuple[str, str] | None = None,
    q4: tuple[str, str] | None = None,
    q5: tuple[str, str] | None = None,
    q6: bool = False,
    q7: bool = False,
    occurrence: int = 0,
) -> Event:
    start = -1
    for _ in range(occurrence + 1):
        start = sentence.index(trigger, start + 1)
    choice = AnchorChoice(option=option, raw_cue=cue, date=entered)

    def directed(spec):
        if spec is None:
            return DirectedAnswer()
        direction, target = spec
        return DirectedAnswer(yes=True, direction=Direction(direction), target=target)

    return Event(
        id=eid,
        sentence_index=sentence_index,
        span=(start, start + len(trigger)),
        trigger_text=trigger,
        word_class=word_class,
        axis=axis,
        anchor_option=choice,
        anchor=resolve_anchor(option, entered, dct),
        answers=AnswerSheet(
            q1=Answer(yes=True, target=q1) if q1 else Answer(),
            q2=Answer(yes=True, target=q2) if q2 else Answer(),
            q3=directed(q3),
            q4=directed(q4),
            q5=directed(q5),
            q6=q6,
            q7=q7,
        ),
    )


# --------------------------------------------------------------------------
# mini corpus


def build_mini() -> Corpus:
    dct1 = GranularDate(2020, 8, 1)
    s = (
        "The pound rallied sharply against the dollar yesterday.",
        "Analysts said the gains could fade before winter.",
        "The treasury published its outlook today.",
        "Traders cheered when the index climbed last month.",
        "Officials will unveil the package at a summit next week.",
        "Few further details were released.",
    )
    events1 = (
        _event("e1", 0, s[0], "rallied", dct=dct1, option=AnchorOption.EXPLICIT,
               cue="yesterday", entered=GranularDate(2020, 7, 31), q6=True),
        _event("e2", 1, s[1], "said", dct=dct1, option=AnchorOption.NC_PAST, q6=True),
        _event("e3", 2, s[2], "published", dct=dct1, option=AnchorOption.EXPLICIT,
               cue="today", entered=GranularDate(2020, 8, 1), q6=True),
        _event("e4", 3, s[3], "cheered", dct=dct1, option=AnchorOption.IMPLICIT,
               cue="last month", entered=GranularDate(2020, 7),
               q5=("after", "e5")),
        _event("e5", 3, s[3], "climbed", dct=dct1, option=AnchorOption.IMPLICIT,
               cue="last month", entered=GranularDate(2020, 7)),
        _event("e6", 4, s[4], "unveil", dct=dct1, option=AnchorOption.FUTURE,
               cue="next week", entered=GranularDate(2020, 8, 9), q2="e7", q7=True),
        _event("e7", 4, s[4], "summit", dct=dct1, option=AnchorOption.FUTURE,
               cue="next week", entered=GranularDate(2020, 8, 9),
               word_class=WordClass.NON_VERB, q7=True),
    )
    m01 = AnnotatedDocument(
        doc_id="m01", dct=dct1, title="Currency steadies after rally",
        sentences=s, layers={"ann1": events1},
        retrieval_query="currency AND rally",
    )

    dct2 = GranularDate(2021, 3, 10)
    t = (
        "The firm announced a merger on Friday.",
        "Regulators hope to review the deal quickly.",
        "The announcement rattled markets across Europe.",
        "Shares of the target company surged in January.",
    )
    events2 = (
        _event("e1", 0, t[0], "announced", dct=dct2, option=AnchorOption.EXPLICIT,
               cue="on Friday", entered=GranularDate(2021, 3, 5),
               q1="e4", q3=("after", "e2")),
        _event("e2", 0, t[0], "merger", dct=dct2, option=AnchorOption.EXPLICIT,
               cue="on Friday", entered=GranularDate(2021, 3, 5),
               word_class=WordClass.NON_VERB),
        _event("e3", 1, t[1], "review", dct=dct2, option=AnchorOption.UNKNOWN,
               axis=EventAxis.ORTHOGONAL),
        _event("e4", 2, t[2], "announcement", dct=dct2, option=AnchorOption.EXPLICIT,
               cue="the merger announcement", entered=GranularDate(2021, 3, 5),
               word_class=WordClass.NON_VERB),
        _event("e5", 3, t[3], "surged", dct=dct2, option=AnchorOption.IMPLICIT,
               cue="in January", entered=GranularDate(2021, 1)),
    )
    m02 = AnnotatedDocument(
        doc_id="m02", dct=dct2, title="Merger shakes the market",
        sentences=t, layers={"ann1": events2},
        retrieval_query="merger AND markets",
    )

    docs = {"m01": m01, "m02": m02}
    return Corpus(
        name="mini", documents=docs,
        doc_paths={d: f"documents/{d}.json" for d in docs},
    )


# --------------------------------------------------------------------------
# dual corpus: engineered agreement matrix
#
# Target contingency matrix over common pairs (rows annotator 1, columns
# annotator 2), chosen to exercise every agreement/disagreement cell:
#
#            before  after  equal  vague
#   before      397     11      0     26
#   after         8    336      1     28
#   equal         2      0     10      2
#   vague        36     17      0   1268
#
# Diagonal mass comes from multi-event documents whose pair counts are
# triangular numbers; every off-diagonal pair is its own 2-event document.

_DIAGONAL_SIZES = {
    "before": (28, 6, 3, 2),   # 378 + 15 + 3 + 1 = 397
    "after": (26, 5, 2),       # 325 + 10 + 1 = 336
    "equal": (5,),             # 10
    "vague": (50, 9, 4, 2),    # 1225 + 36 + 6 + 1 = 1268
}
_OFF_DIAGONAL = {
    ("before", "after"): 11,
    ("before", "vague"): 26,
    ("after", "before"): 8,
    ("after", "vague"): 28,
    ("after", "equal"): 1,
    ("equal", "before"): 2,
    ("equal", "vague"): 2,
    ("vague", "before"): 36,
    ("vague", "after"): 17,
}


def _dual_sentences(n: int) -> tuple[str, ...]:
    return tuple(f"Delegates met for session {i + 1} of the talks." for i in range(n))


def _dual_layer(sentences, kind: str, dct: GranularDate):
    """Events over one-per-sentence 'met' triggers, anchored per label recipe.

    'equal' layers mark a Q1 coreference chain (allowed across sentences), so
    the whole document collapses to one coreference class.
    """
    base = date(2018, 1, 1)
    n = len(sentences)
    events = []
    for i, sentence in enumerate(sentences):
        eid = f"e{i + 1}"
        kwargs: dict = {}
        if kind == "before":
            option, entered = AnchorOption.EXPLICIT, _granular(base + timedelta(days=3 * i))
        elif kind == "after":
            option, entered = AnchorOption.EXPLICIT, _granular(base + timedelta(days=3 * (n - i)))
        elif kind == "equal":
            option, entered = AnchorOption.EXPLICIT, GranularDate(2020, 6, 15)
            if i + 1 < n:
                kwargs["q1"] = f"e{i + 2}"
        else:  # vague
            option, entered = AnchorOption.UNKNOWN, None
        events.append(_event(
            eid, i, sentence, "met", dct=dct, option=option,
            cue="" if option is AnchorOption.UNKNOWN else "session schedule",
            entered=entered, **kwargs,
        ))
    return tuple(events)


def build_dual() -> Corpus:
    dct = GranularDate(2021, 5, 1)
    docs: dict[str, AnnotatedDocument] = {}

    def add(doc_id: str, n: int, kind_a: str, kind_b: str) -> None:
        sentences = _dual_sentences(n)
        docs[doc_id] = AnnotatedDocument(
            doc_id=doc_id, dct=dct, title=f"Session report {doc_id}",
            sentences=sentences,
            layers={
                "ann1": _dual_layer(sentences, kind_a, dct),
                "ann2": _dual_layer(sentences, kind_b, dct),
            },
            retrieval_query="talks",
        )

    serial = 0
    for kind, sizes in _DIAGONAL_SIZES.items():
        for n in sizes:
            serial += 1
            add(f"g{serial:03d}", n, kind, kind)
    for (kind_a, kind_b), count in _OFF_DIAGONAL.items():
        for _ in range(count):
            serial += 1
            add(f"g{serial:03d}", 2, kind_a, kind_b)

    return Corpus(
        name="dual", documents=docs,
        doc_paths={d: f"documents/{d}.json" for d in docs},
    )


# --------------------------------------------------------------------------


def build_all(out_root: Path) -> dict[str, Corpus]:
    corpora = {
        "mini": build_mini(),
        "dual": build_dual(),
        "synth48": random_corpus(seed=20240611, n_docs=48, name="synth48",
                                 min_events=3, max_events=14),
    }
    for name, corpus in corpora.items():
        save_corpus(corpus, out_root / name)
    return corpora


def refresh_goldens(out_root: Path, golden_dir: Path) -> None:
    from timelinekit.corpus_io import (
        dumps_canonical, export_pairs, load_corpus, manifest_to_json, split_corpus,
        write_pairs_csv,
    )
    from timelinekit.metrics import corpus_stats
    from timelinekit.relgen import generate_relations
    from timelinekit.report import stats_to_json
    from timelinekit.corpus_io import relation_set_to_json

    golden_dir.mkdir(parents=True, exist_ok=True)

    synth = load_corpus(out_root / "synth48")
    items = [
        (doc, generate_relations(doc, "ann1")) for doc in synth.documents.values()
    ]
    (golden_dir / "synth48_stats.json").write_text(
        dumps_canonical(stats_to_json(corpus_stats(items))), encoding="utf-8"
    )
    manifest = split_corpus(synth, ratios=(0.7, 0.1, 0.2), seed=13)
    (golden_dir / "synth48_manifest_seed13.json").write_text(
        dumps_canonical(manifest_to_json(manifest)), encoding="utf-8"
    )

    mini = load_corpus(out_root / "mini")
    relset = generate_relations(mini.documents["m01"], "ann1")
    (golden_dir / "mini_m01_relations.json").write_text(
        dumps_canonical(relation_set_to_json(relset)), encoding="utf-8"
    )
    records = export_pairs(
        [(doc, generate_relations(doc, "ann1")) for doc in mini.documents.values()]
    )
    with (golden_dir / "mini_pairs.csv").open("w", newline="", encoding="utf-8") as fp:
        write_pairs_csv(records, fp)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(REPO / "fixtures"))
    parser.add_argument("--goldens", action="store_true",
                        help="also refresh tests/golden/ from the rebuilt fixtures")
    args = parser.parse_args()
    out_root = Path(args.out)
    build_all(out_root)
    print(f"fixtures written to {out_root}")
    if args.goldens:
        refresh_goldens(out_root, REPO / "tests" / "golden")
        print("golden files refreshed")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
