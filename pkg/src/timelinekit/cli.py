"""Command-line interface tying the pipeline together.

All report output goes to stdout, diagnostics to stderr. Exit codes: 0 success,
1 validation errors or conflicts, 2 usage/IO/schema errors. The ``TIMELINE_DATA``
environment variable supplies the default corpus path.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import report as reportmod
from .corpus_io import (
    AblationCriterion,
    AblationSpec,
    Corpus,
    ablate,
    dumps_canonical,
    export_pairs,
    load_corpus,
    manifest_to_json,
    read_pair_labels,
    relation_set_to_json,
    report_to_json,
    split_corpus,
    write_pairs_csv,
    MANIFEST_FILE,
)
from .consistency import check
from .errors import TimelineError, ValidationFailed
from .metrics import corpus_stats, evaluate, event_iaa, relation_iaa, span_keyed_labels
from .relgen import generate_relations
from .validate import lint_events, validate_document


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationFailed as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except TimelineError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="timelinekit",
        description="Fuzzy-anchored event timeline annotation toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def corpus_arg(p):
        p.add_argument(
            "corpus", nargs="?", default=os.environ.get("TIMELINE_DATA"),
            help="corpus directory (default: $TIMELINE_DATA)",
        )

    p = sub.add_parser("validate", help="validate every document and print lints")
    corpus_arg(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("generate", help="generate pairwise relations per document")
    corpus_arg(p)
    p.add_argument("--layer", help="annotator layer (default: every layer)")
    p.add_argument("-o", "--out", help="write one relations file per document/layer")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("check", help="report consistency conflicts")
    corpus_arg(p)
    p.add_argument("--layer")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("stats", help="corpus-level statistics")
    corpus_arg(p)
    p.add_argument("--layer")
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--out", help="write stats.json/stats.csv and figures here")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("iaa", help="inter-annotator agreement between two layers")
    corpus_arg(p)
    p.add_argument("--layer-a", required=True)
    p.add_argument("--layer-b", required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--out", help="write agreement.json/contingency.csv and figure here")
    p.set_defaults(func=_cmd_iaa)

    p = sub.add_parser("split", help="build a train/dev/test manifest")
    corpus_arg(p)
    p.add_argument("--train", type=float, required=True)
    p.add_argument("--dev", type=float, required=True)
    p.add_argument("--test", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--layer")
    p.add_argument("--write", action="store_true", help="update corpus.json in place")
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("ablate", help="partition the test split for ablation")
    corpus_arg(p)
    p.add_argument("--by", required=True, choices=["word-class", "window"])
    p.add_argument("--threshold", type=int, default=4)
    p.add_argument("--layer")
    p.add_argument("--include-vague", action="store_true")
    p.add_argument("-o", "--out", help="write split_a.csv / split_b.csv here")
    p.set_defaults(func=_cmd_ablate)

    p = sub.add_parser("export", help="export pairwise classification records")
    corpus_arg(p)
    p.add_argument("--layer")
    p.add_argument("--include-vague", action="store_true")
    p.add_argument("-o", "--out", help="output CSV file (default: stdout)")
    p.set_defaults(func=_cmd_export)

    p = sub.add_parser("eval", help="score predictions against gold pairs")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--out", help="write eval.json/eval.csv and figure here")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("serve", help="run the annotation HTTP service")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--data", default=os.environ.get("TIMELINE_DATA"))
    p.add_argument("--ui", default="frontend/dist",
                   help="static UI directory to serve at / (if it exists)")
    p.set_defaults(func=_cmd_serve)

    return parser


def _load(args) -> Corpus:
    if not args.corpus:
        raise TimelineError("no corpus given and TIMELINE_DATA is not set")
    return load_corpus(args.corpus)


def _layers(corpus: Corpus, doc_id: str, requested: str | None) -> list[str]:
    doc = corpus.documents[doc_id]
    if requested is None:
        return doc.layer_names()
    if requested not in doc.layers:
        raise TimelineError(f"document {doc_id!r} has no layer {requested!r}")
    return [requested]


def _generated(corpus: Corpus, layer: str | None):
    """Yield (doc, layer, relation set) over the corpus in manifest order."""
    for doc_id, doc in corpus.documents.items():
        for name in _layers(corpus, doc_id, layer):
            yield doc, name, generate_relations(doc, name)


def _cmd_validate(args) -> int:
    corpus = _load(args)
    any_errors = False
    payload = {}
    for doc_id, doc in corpus.documents.items():
        merged = validate_document(doc).merged(lint_events(doc))
        any_errors = any_errors or not merged.ok
        payload[doc_id] = report_to_json(merged)
        if not args.json:
            for issue in merged.errors:
                print(f"{doc_id}: error {issue.code} [{issue.event_id or '-'}] {issue.message}")
            for issue in merged.warnings:
                print(f"{doc_id}: warning {issue.code} [{issue.event_id or '-'}] {issue.message}")
    if args.json:
        print(dumps_canonical(payload), end="")
    elif not any_errors:
        print(f"{len(corpus.documents)} documents valid")
    return 1 if any_errors else 0


def _cmd_generate(args) -> int:
    corpus = _load(args)
    outputs = [
        (doc.doc_id, layer, relation_set_to_json(relset))
        for doc, layer, relset in _generated(corpus, args.layer)
    ]
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for doc_id, layer, payload in outputs:
            path = outdir / f"{doc_id}.{layer}.relations.json"
            path.write_text(dumps_canonical(payload), encoding="utf-8")
        print(f"wrote {len(outputs)} relation files to {outdir}", file=sys.stderr)
    else:
        print(dumps_canonical([payload for _, _, payload in outputs]), end="")
    return 0


def _cmd_check(args) -> int:
    corpus = _load(args)
    total = 0
    payload = []
    for doc, layer, relset in _generated(corpus, args.layer):
        conflicts = check(relset, corpus.documents[doc.doc_id].layer(layer))
        total += len(conflicts)
        for c in conflicts:
            payload.append({
                "doc_id": doc.doc_id, "layer": layer, "kind": c.kind.value,
                "events": list(c.events), "detail": c.detail,
            })
            if not args.json:
                print(f"{doc.doc_id}/{layer}: {c.kind.value} ({', '.join(c.events)}) {c.detail}")
    if args.json:
        print(dumps_canonical(payload), end="")
    elif total == 0:
        print("no conflicts")
    return 1 if total else 0


def _cmd_stats(args) -> int:
    corpus = _load(args)
    stats = corpus_stats(
        (doc, relset) for doc, _, relset in _generated(corpus, args.layer)
    )
    if args.out:
        written = reportmod.save_stats_report(stats, args.out)
        print("\n".join(str(p) for p in written), file=sys.stderr)
    if args.json:
        print(dumps_canonical(reportmod.stats_to_json(stats)), end="")
    else:
        print(reportmod.format_stats(stats), end="")
    return 0


def _cmd_iaa(args) -> int:
    corpus = _load(args)
    events_a, events_b = {}, {}
    labels_a, labels_b = {}, {}
    for doc_id, doc in corpus.documents.items():
        if args.layer_a in doc.layers:
            events_a[doc_id] = doc.layers[args.layer_a]
            labels_a.update(span_keyed_labels(doc, args.layer_a, generate_relations(doc, args.layer_a)))
        if args.layer_b in doc.layers:
            events_b[doc_id] = doc.layers[args.layer_b]
            labels_b.update(span_keyed_labels(doc, args.layer_b, generate_relations(doc, args.layer_b)))
    f1 = event_iaa(events_a, events_b)
    agreement = relation_iaa(labels_a, labels_b, event_f1=f1)
    if args.out:
        written = reportmod.save_agreement_report(agreement, args.out)
        print("\n".join(str(p) for p in written), file=sys.stderr)
    if args.json:
        print(dumps_canonical(reportmod.agreement_to_json(agreement)), end="")
    else:
        print(reportmod.format_agreement(agreement), end="")
    return 0


def _cmd_split(args) -> int:
    corpus = _load(args)
    manifest = split_corpus(
        corpus, ratios=(args.train, args.dev, args.test), seed=args.seed, layer=args.layer
    )
    if args.write:
        path = Path(args.corpus) / MANIFEST_FILE
        path.write_text(dumps_canonical(manifest_to_json(manifest)), encoding="utf-8")
        print(f"wrote {path}", file=sys.stderr)
    print(dumps_canonical(manifest_to_json(manifest)), end="")
    return 0


def _cmd_ablate(args) -> int:
    corpus = _load(args)
    if corpus.split is not None:
        doc_ids = [d for d, s in corpus.split.assignment.items() if s == "test"]
    else:
        print("corpus has no split; ablating over every document", file=sys.stderr)
        doc_ids = list(corpus.documents)
    items = []
    for doc_id in corpus.documents:
        if doc_id not in doc_ids:
            continue
        for layer in _layers(corpus, doc_id, args.layer):
            items.append((corpus.documents[doc_id], generate_relations(corpus.documents[doc_id], layer)))
    records = export_pairs(items, include_vague=args.include_vague)
    criterion = (
        AblationCriterion.WORD_CLASS if args.by == "word-class" else AblationCriterion.WINDOW
    )
    split_a, split_b = ablate(records, AblationSpec(criterion, threshold=args.threshold))
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for name, chunk in (("split_a.csv", split_a), ("split_b.csv", split_b)):
            with (outdir / name).open("w", newline="", encoding="utf-8") as fp:
                write_pairs_csv(chunk, fp)
        print(f"wrote split_a.csv ({len(split_a)}) and split_b.csv ({len(split_b)}) "
              f"to {outdir}", file=sys.stderr)
    print(dumps_canonical({
        "criterion": criterion.value,
        "threshold": args.threshold if criterion is AblationCriterion.WINDOW else None,
        "split_a": len(split_a),
        "split_b": len(split_b),
    }), end="")
    return 0


def _cmd_export(args) -> int:
    corpus = _load(args)
    items = [(doc, relset) for doc, _, relset in _generated(corpus, args.layer)]
    records = export_pairs(items, include_vague=args.include_vague)
    if args.out:
        with Path(args.out).open("w", newline="", encoding="utf-8") as fp:
            write_pairs_csv(records, fp)
        print(f"wrote {len(records)} records to {args.out}", file=sys.stderr)
    else:
        write_pairs_csv(records, sys.stdout)
    return 0


def _cmd_eval(args) -> int:
    gold = read_pair_labels(args.gold)
    pred = read_pair_labels(args.pred)
    result = evaluate(gold, pred)
    if args.out:
        written = reportmod.save_eval_report(result, args.out)
        print("\n".join(str(p) for p in written), file=sys.stderr)
    if args.json:
        print(dumps_canonical(reportmod.eval_to_json(result)), end="")
    else:
        print(reportmod.format_eval(result), end="")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    if not args.data:
        raise TimelineError("no corpus given: pass --data or set TIMELINE_DATA")
    app = create_app(args.data, static_dir=args.ui)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


if __name__ == "__main__":
    sys.exit(main())
