"""Corpus file formats: strict schema parsing, canonical byte-stable
serialization, split construction, ablation splits, and pairwise export.

A corpus is a directory holding ``corpus.json`` (the manifest) and one JSON
file per document. All files are UTF-8 with sorted keys, two-space indent and
a trailing newline, so re-serialization is byte-identical. The schemas are
documented in docs/formats.md alongside golden examples.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .anchors import resolve_anchor
from .dates import GranularDate, parse_date
from .errors import (
    FuzzyForbiddenError,
    NeedDateError,
    RatioError,
    SchemaError,
)
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
    ValidationReport,
    WordClass,
)
from .relgen import RelationLabel, RelationSet, generate_relations

SCHEMA_VERSION = 1
SPLIT_NAMES = ("train", "dev", "test")

MANIFEST_FILE = "corpus.json"


# --------------------------------------------------------------------------
# canonical JSON


def dumps_canonical(payload) -> str:
    return json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def _pointer(*parts) -> str:
    escaped = [str(p).replace("~", "~0").replace("/", "~1") for p in parts]
    return "/" + "/".join(escaped) if escaped else ""


class _Ctx:
    """Carries the source filename so every schema error points at file+path."""

    def __init__(self, source: str):
        self.source = source

    def fail(self, pointer: str, reason: str) -> "SchemaError":
        raise SchemaError(reason, source=self.source, pointer=pointer)

    def obj(self, value, pointer: str) -> dict:
        if not isinstance(value, dict):
            self.fail(pointer, f"expected an object, got {type(value).__name__}")
        return value

    def arr(self, value, pointer: str) -> list:
        if not isinstance(value, list):
            self.fail(pointer, f"expected an array, got {type(value).__name__}")
        return value

    def str_(self, value, pointer: str) -> str:
        if not isinstance(value, str):
            self.fail(pointer, f"expected a string, got {type(value).__name__}")
        return value

    def int_(self, value, pointer: str) -> int:
        if not isinstance(value, int) or isinstance(value, bool):
            self.fail(pointer, f"expected an integer, got {type(value).__name__}")
        return value

    def keys(self, obj: dict, pointer: str, required: Sequence[str], optional: Sequence[str] = ()) -> None:
        for key in required:
            if key not in obj:
                self.fail(_pointer_join(pointer, key), f"missing required field {key!r}")
        unknown = set(obj) - set(required) - set(optional)
        if unknown:
            key = sorted(unknown)[0]
            self.fail(_pointer_join(pointer, key), f"unknown field {key!r}")

    def date(self, value, pointer: str) -> GranularDate:
        text = self.str_(value, pointer)
        try:
            return parse_date(text)
        except ValueError as exc:
            self.fail(pointer, str(exc))

    def yesno(self, value, pointer: str) -> bool:
        if value not in ("yes", "no"):
            self.fail(pointer, f"expected 'yes' or 'no', got {value!r}")
        return value == "yes"


def _pointer_join(pointer: str, *parts) -> str:
    return pointer + _pointer(*parts)


# --------------------------------------------------------------------------
# documents

# For each anchor option: whether an entered date is required / allowed.
_DATE_REQUIRED = {AnchorOption.EXPLICIT, AnchorOption.IMPLICIT, AnchorOption.EXTERNAL}
_DATE_FORBIDDEN = {AnchorOption.NC_PAST, AnchorOption.UNKNOWN}


def parse_document(data, *, source: str = "<memory>") -> AnnotatedDocument:
    """Parse and strictly validate one document payload.

    Shape violations raise :class:`SchemaError` with a JSON pointer; semantic
    problems (bad spans, bad targets, fuzzy DCT) are left to
    :func:`timelinekit.validate.validate_document`.
    """
    ctx = _Ctx(source)
    root = ctx.obj(data, "")
    ctx.keys(
        root, "",
        required=["schema_version", "doc_id", "title", "dct", "sentences", "layers"],
        optional=["retrieval_query"],
    )
    version = ctx.int_(root["schema_version"], "/schema_version")
    if version != SCHEMA_VERSION:
        ctx.fail("/schema_version", f"unsupported schema version {version}")
    doc_id = ctx.str_(root["doc_id"], "/doc_id")
    title = ctx.str_(root["title"], "/title")
    dct = ctx.date(root["dct"], "/dct")
    sentences = tuple(
        ctx.str_(s, _pointer("sentences", i))
        for i, s in enumerate(ctx.arr(root["sentences"], "/sentences"))
    )
    query = None
    if "retrieval_query" in root:
        query = ctx.str_(root["retrieval_query"], "/retrieval_query")

    layers = {}
    for layer_name, raw_events in sorted(ctx.obj(root["layers"], "/layers").items()):
        pointer = _pointer("layers", layer_name)
        events = tuple(
            _parse_event(ctx, raw, _pointer_join(pointer, i), dct)
            for i, raw in enumerate(ctx.arr(raw_events, pointer))
        )
        layers[layer_name] = events

    try:
        return AnnotatedDocument(
            doc_id=doc_id, dct=dct, title=title, sentences=sentences,
            layers=layers, retrieval_query=query,
        )
    except ValueError as exc:
        ctx.fail("/layers", str(exc))


def _parse_event(ctx: _Ctx, data, pointer: str, dct: GranularDate) -> Event:
    obj = ctx.obj(data, pointer)
    ctx.keys(
        obj, pointer,
        required=["id", "sentence_index", "span", "trigger", "word_class", "axis",
                  "anchor", "answers"],
    )
    span_raw = ctx.arr(obj["span"], _pointer_join(pointer, "span"))
    if len(span_raw) != 2:
        ctx.fail(_pointer_join(pointer, "span"), "span must be a [start, end) pair")
    span = (
        ctx.int_(span_raw[0], _pointer_join(pointer, "span", 0)),
        ctx.int_(span_raw[1], _pointer_join(pointer, "span", 1)),
    )
    word_class = _parse_enum(ctx, WordClass, obj["word_class"], _pointer_join(pointer, "word_class"))
    axis = _parse_enum(ctx, EventAxis, obj["axis"], _pointer_join(pointer, "axis"))
    choice = _parse_anchor(ctx, obj["anchor"], _pointer_join(pointer, "anchor"))
    answers = _parse_answers(ctx, obj["answers"], _pointer_join(pointer, "answers"))

    anchor: GranularDate | None
    needs_dct = choice.option is AnchorOption.NC_PAST or (
        choice.option is AnchorOption.FUTURE and choice.date is None
    )
    if needs_dct and not dct.exact:
        anchor = None  # validation will report E_DCT_FUZZY
    else:
        try:
            anchor = resolve_anchor(choice.option, choice.date, dct)
        except (NeedDateError, FuzzyForbiddenError) as exc:
            ctx.fail(_pointer_join(pointer, "anchor"), str(exc))

    sentence_index = ctx.int_(obj["sentence_index"], _pointer_join(pointer, "sentence_index"))
    if sentence_index < 0:
        ctx.fail(_pointer_join(pointer, "sentence_index"), "sentence_index must be >= 0")
    return Event(
        id=ctx.str_(obj["id"], _pointer_join(pointer, "id")),
        sentence_index=sentence_index,
        span=span,
        trigger_text=ctx.str_(obj["trigger"], _pointer_join(pointer, "trigger")),
        word_class=word_class,
        axis=axis,
        anchor_option=choice,
        anchor=anchor,
        answers=answers,
    )


def _parse_enum(ctx: _Ctx, enum_cls, value, pointer: str):
    try:
        return enum_cls(value)
    except ValueError:
        allowed = ", ".join(repr(m.value) for m in enum_cls)
        ctx.fail(pointer, f"expected one of {allowed}, got {value!r}")


def _parse_anchor(ctx: _Ctx, data, pointer: str) -> AnchorChoice:
    obj = ctx.obj(data, pointer)
    ctx.keys(obj, pointer, required=["option"], optional=["cue", "date"])
    number = ctx.int_(obj["option"], _pointer_join(pointer, "option"))
    try:
        option = AnchorOption(number)
    except ValueError:
        ctx.fail(_pointer_join(pointer, "option"), f"anchor option must be 1-6, got {number}")
    cue = ctx.str_(obj.get("cue", ""), _pointer_join(pointer, "cue"))
    date = None
    if "date" in obj:
        if option in _DATE_FORBIDDEN:
            ctx.fail(_pointer_join(pointer, "date"), f"option {option.value} takes no date")
        date = ctx.date(obj["date"], _pointer_join(pointer, "date"))
    elif option in _DATE_REQUIRED:
        ctx.fail(_pointer_join(pointer, "date"), f"option {option.value} requires a date")
    return AnchorChoice(option=option, raw_cue=cue, date=date)


def _parse_answers(ctx: _Ctx, data, pointer: str) -> AnswerSheet:
    obj = ctx.obj(data, pointer)
    ctx.keys(obj, pointer, required=["q1", "q2", "q3", "q4", "q5", "q6", "q7"])
    return AnswerSheet(
        q1=_parse_answer(ctx, obj["q1"], _pointer_join(pointer, "q1"), directed=False),
        q2=_parse_answer(ctx, obj["q2"], _pointer_join(pointer, "q2"), directed=False),
        q3=_parse_answer(ctx, obj["q3"], _pointer_join(pointer, "q3"), directed=True),
        q4=_parse_answer(ctx, obj["q4"], _pointer_join(pointer, "q4"), directed=True),
        q5=_parse_answer(ctx, obj["q5"], _pointer_join(pointer, "q5"), directed=True),
        q6=ctx.yesno(obj["q6"], _pointer_join(pointer, "q6")),
        q7=ctx.yesno(obj["q7"], _pointer_join(pointer, "q7")),
    )


def _parse_answer(ctx: _Ctx, data, pointer: str, *, directed: bool):
    obj = ctx.obj(data, pointer)
    yes = ctx.yesno(obj.get("answer"), _pointer_join(pointer, "answer"))
    fields = ["target", "direction"] if directed else ["target"]
    if yes:
        ctx.keys(obj, pointer, required=["answer"] + fields)
    else:
        ctx.keys(obj, pointer, required=["answer"])
    if not yes:
        return DirectedAnswer() if directed else Answer()
    target = ctx.str_(obj["target"], _pointer_join(pointer, "target"))
    if directed:
        direction = _parse_enum(ctx, Direction, obj["direction"], _pointer_join(pointer, "direction"))
        return DirectedAnswer(yes=True, direction=direction, target=target)
    return Answer(yes=True, target=target)


def document_to_json(doc: AnnotatedDocument) -> dict:
    payload = {
        "schema_version": SCHEMA_VERSION,
        "doc_id": doc.doc_id,
        "title": doc.title,
        "dct": doc.dct.render(),
        "sentences": list(doc.sentences),
        "layers": {
            name: [_event_to_json(e) for e in events]
            for name, events in sorted(doc.layers.items())
        },
    }
    if doc.retrieval_query is not None:
        payload["retrieval_query"] = doc.retrieval_query
    return payload


def _event_to_json(ev: Event) -> dict:
    anchor: dict = {"option": int(ev.anchor_option.option), "cue": ev.anchor_option.raw_cue}
    if ev.anchor_option.date is not None:
        anchor["date"] = ev.anchor_option.date.render()
    return {
        "id": ev.id,
        "sentence_index": ev.sentence_index,
        "span": list(ev.span),
        "trigger": ev.trigger_text,
        "word_class": ev.word_class.value,
        "axis": ev.axis.value,
        "anchor": anchor,
        "answers": {
            "q1": _answer_to_json(ev.answers.q1),
            "q2": _answer_to_json(ev.answers.q2),
            "q3": _answer_to_json(ev.answers.q3),
            "q4": _answer_to_json(ev.answers.q4),
            "q5": _answer_to_json(ev.answers.q5),
            "q6": "yes" if ev.answers.q6 else "no",
            "q7": "yes" if ev.answers.q7 else "no",
        },
    }


def _answer_to_json(answer) -> dict:
    if not answer.yes:
        return {"answer": "no"}
    payload = {"answer": "yes", "target": answer.target}
    if isinstance(answer, DirectedAnswer):
        payload["direction"] = answer.direction.value
    return payload


def report_to_json(report: ValidationReport) -> dict:
    def issue(i):
        return {"code": i.code, "message": i.message, "event_id": i.event_id, "layer": i.layer}

    return {
        "errors": [issue(i) for i in report.errors],
        "warnings": [issue(i) for i in report.warnings],
    }


def relation_set_to_json(relset: RelationSet) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "doc_id": relset.doc_id,
        "layer": relset.layer,
        "relations": [
            {
                "source": r.source,
                "target": r.target,
                "window": r.window,
                "label": r.label.value,
                "provenance": r.provenance.value,
            }
            for r in relset.relations
        ],
        "conflicts": [
            {"kind": c.kind.value, "events": list(c.events), "detail": c.detail}
            for c in relset.conflicts
        ],
    }


# --------------------------------------------------------------------------
# corpus and manifest


@dataclass(frozen=True, slots=True)
class SplitAssignment:
    seed: int
    ratios: tuple[float, float, float]
    assignment: Mapping[str, str]  # doc_id -> train/dev/test


@dataclass(frozen=True, slots=True)
class CorpusManifest:
    name: str
    documents: tuple[str, ...]  # relative file paths, load order
    split: SplitAssignment | None = None


@dataclass(slots=True)
class Corpus:
    name: str
    documents: dict[str, AnnotatedDocument]  # insertion order = manifest order
    doc_paths: dict[str, str]
    split: SplitAssignment | None = None

    @property
    def manifest(self) -> CorpusManifest:
        return CorpusManifest(
            name=self.name,
            documents=tuple(self.doc_paths[d] for d in self.documents),
            split=self.split,
        )

    def default_layer(self, doc_id: str) -> str:
        layers = self.documents[doc_id].layer_names()
        if not layers:
            raise KeyError(f"document {doc_id!r} has no layers")
        return layers[0]


def parse_manifest(data, *, source: str = "<memory>") -> CorpusManifest:
    ctx = _Ctx(source)
    root = ctx.obj(data, "")
    ctx.keys(root, "", required=["schema_version", "name", "documents"], optional=["split"])
    version = ctx.int_(root["schema_version"], "/schema_version")
    if version != SCHEMA_VERSION:
        ctx.fail("/schema_version", f"unsupported schema version {version}")
    name = ctx.str_(root["name"], "/name")
    documents = tuple(
        ctx.str_(p, _pointer("documents", i))
        for i, p in enumerate(ctx.arr(root["documents"], "/documents"))
    )
    split = None
    if "split" in root and root["split"] is not None:
        sp = ctx.obj(root["split"], "/split")
        ctx.keys(sp, "/split", required=["seed", "ratios", "assignment"])
        ratios_raw = ctx.arr(sp["ratios"], "/split/ratios")
        if len(ratios_raw) != 3:
            ctx.fail("/split/ratios", "ratios must be [train, dev, test]")
        ratios = []
        for i, r in enumerate(ratios_raw):
            if not isinstance(r, (int, float)) or isinstance(r, bool):
                ctx.fail(_pointer("split", "ratios", i), "ratio must be a number")
            ratios.append(float(r))
        assignment = {}
        for doc_id, split_name in sorted(ctx.obj(sp["assignment"], "/split/assignment").items()):
            if split_name not in SPLIT_NAMES:
                ctx.fail(_pointer("split", "assignment", doc_id),
                         f"split must be one of {SPLIT_NAMES}, got {split_name!r}")
            assignment[doc_id] = split_name
        split = SplitAssignment(
            seed=ctx.int_(sp["seed"], "/split/seed"),
            ratios=tuple(ratios),
            assignment=assignment,
        )
    return CorpusManifest(name=name, documents=documents, split=split)


def manifest_to_json(manifest: CorpusManifest) -> dict:
    payload = {
        "schema_version": SCHEMA_VERSION,
        "name": manifest.name,
        "documents": list(manifest.documents),
    }
    if manifest.split is not None:
        payload["split"] = {
            "seed": manifest.split.seed,
            "ratios": list(manifest.split.ratios),
            "assignment": dict(sorted(manifest.split.assignment.items())),
        }
    return payload


def _load_json(path: Path):
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read file: {exc}", source=str(path))
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}", source=str(path))


def load_corpus(path: str | Path) -> Corpus:
    """Load a corpus directory; every file is strictly schema-checked."""
    root = Path(path)
    manifest_path = root / MANIFEST_FILE
    manifest = parse_manifest(_load_json(manifest_path), source=str(manifest_path))
    documents: dict[str, AnnotatedDocument] = {}
    doc_paths: dict[str, str] = {}
    for rel in manifest.documents:
        doc_path = root / rel
        doc = parse_document(_load_json(doc_path), source=str(doc_path))
        if doc.doc_id in documents:
            raise SchemaError(
                f"duplicate doc_id {doc.doc_id!r}", source=str(doc_path), pointer="/doc_id"
            )
        documents[doc.doc_id] = doc
        doc_paths[doc.doc_id] = rel
    if manifest.split is not None:
        for doc_id in manifest.split.assignment:
            if doc_id not in documents:
                raise SchemaError(
                    f"split assigns unknown document {doc_id!r}",
                    source=str(manifest_path),
                    pointer=_pointer("split", "assignment", doc_id),
                )
    return Corpus(
        name=manifest.name, documents=documents, doc_paths=doc_paths, split=manifest.split
    )


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    """Write the manifest and every document file in canonical form."""
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)
    (root / MANIFEST_FILE).write_text(
        dumps_canonical(manifest_to_json(corpus.manifest)), encoding="utf-8"
    )
    for doc_id, doc in corpus.documents.items():
        doc_path = root / corpus.doc_paths[doc_id]
        doc_path.parent.mkdir(parents=True, exist_ok=True)
        doc_path.write_text(dumps_canonical(document_to_json(doc)), encoding="utf-8")


def save_document(corpus: Corpus, root: str | Path, doc_id: str) -> None:
    """Persist a single document file (used by the annotation service)."""
    doc_path = Path(root) / corpus.doc_paths[doc_id]
    doc_path.parent.mkdir(parents=True, exist_ok=True)
    doc_path.write_text(
        dumps_canonical(document_to_json(corpus.documents[doc_id])), encoding="utf-8"
    )


# --------------------------------------------------------------------------
# deterministic split construction

_MASK64 = (1 << 64) - 1


def _splitmix64(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31), state


def seeded_shuffle(items: Iterable[str], seed: int) -> list[str]:
    """Fisher-Yates permutation driven by splitmix64, identical in any language.

    Items are first sorted lexicographically; then for i = n-1 .. 1 the item at
    j = next_u64() % (i + 1) is swapped into position i.
    """
    out = sorted(items)
    state = seed & _MASK64
    for i in range(len(out) - 1, 0, -1):
        value, state = _splitmix64(state)
        j = value % (i + 1)
        out[i], out[j] = out[j], out[i]
    return out


def non_vague_counts(corpus: Corpus, layer: str | None = None) -> dict[str, int]:
    """Non-vague pair count per document (the unit the split ratios measure)."""
    counts = {}
    for doc_id, doc in corpus.documents.items():
        chosen = layer or corpus.default_layer(doc_id)
        relset = generate_relations(doc, chosen)
        counts[doc_id] = sum(
            1 for r in relset.relations if r.label is not RelationLabel.VAGUE
        )
    return counts


def split_corpus(
    corpus: Corpus,
    ratios: tuple[float, float, float] = (0.7, 0.1, 0.2),
    seed: int = 0,
    layer: str | None = None,
) -> CorpusManifest:
    """Assign documents to train/dev/test so that non-vague pair counts match
    the ratios as closely as a greedy largest-deficit pass can.

    Deterministic for fixed (corpus, ratios, seed): documents are shuffled with
    :func:`seeded_shuffle` and each goes to the split whose non-vague deficit
    is currently largest (ties prefer train, then dev).
    """
    if len(ratios) != 3 or any(r < 0 for r in ratios):
        raise RatioError(f"need three non-negative ratios, got {ratios!r}")
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise RatioError(f"ratios must sum to 1, got {sum(ratios)!r}")

    counts = non_vague_counts(corpus, layer)
    total = sum(counts.values())
    targets = [r * total for r in ratios]
    assigned = [0, 0, 0]
    assignment: dict[str, str] = {}
    for doc_id in seeded_shuffle(corpus.documents.keys(), seed):
        deficits = [targets[i] - assigned[i] for i in range(3)]
        pick = max(range(3), key=lambda i: (deficits[i], -i))
        assignment[doc_id] = SPLIT_NAMES[pick]
        assigned[pick] += counts[doc_id]

    return CorpusManifest(
        name=corpus.name,
        documents=tuple(corpus.doc_paths[d] for d in corpus.documents),
        split=SplitAssignment(seed=seed, ratios=tuple(float(r) for r in ratios),
                              assignment=assignment),
    )


# --------------------------------------------------------------------------
# pairwise export and ablation splits


@dataclass(frozen=True, slots=True)
class PairRecord:
    """One row of the pairwise classification export."""

    doc_id: str
    source: str
    target: str
    source_trigger: str
    target_trigger: str
    source_sentence_index: int
    target_sentence_index: int
    source_sentence: str
    target_sentence: str
    source_word_class: WordClass
    target_word_class: WordClass
    window: int
    label: RelationLabel


PAIR_CSV_COLUMNS = (
    "doc_id", "source", "target", "source_trigger", "target_trigger",
    "source_sentence_index", "target_sentence_index", "source_sentence",
    "target_sentence", "source_word_class", "target_word_class", "window", "label",
)


def export_pairs(
    items: Iterable[tuple[AnnotatedDocument, RelationSet]],
    include_vague: bool = False,
) -> list[PairRecord]:
    """Flatten relation sets into per-pair records, dropping vague pairs unless
    asked to keep them. Ordering follows the input documents, then pair order."""
    records = []
    for doc, relset in items:
        by_id = {e.id: e for e in doc.layer(relset.layer)}
        for rel in relset.relations:
            if rel.label is RelationLabel.VAGUE and not include_vague:
                continue
            src, tgt = by_id[rel.source], by_id[rel.target]
            records.append(PairRecord(
                doc_id=doc.doc_id,
                source=src.id,
                target=tgt.id,
                source_trigger=src.trigger_text,
                target_trigger=tgt.trigger_text,
                source_sentence_index=src.sentence_index,
                target_sentence_index=tgt.sentence_index,
                source_sentence=doc.sentences[src.sentence_index],
                target_sentence=doc.sentences[tgt.sentence_index],
                source_word_class=src.word_class,
                target_word_class=tgt.word_class,
                window=rel.window,
                label=rel.label,
            ))
    return records


def write_pairs_csv(records: Sequence[PairRecord], fp) -> None:
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(PAIR_CSV_COLUMNS)
    for r in records:
        writer.writerow([
            r.doc_id, r.source, r.target, r.source_trigger, r.target_trigger,
            r.source_sentence_index, r.target_sentence_index, r.source_sentence,
            r.target_sentence, r.source_word_class.value, r.target_word_class.value,
            r.window, r.label.value,
        ])


def read_pair_labels(path: str | Path) -> dict[tuple[str, str, str], RelationLabel]:
    """Read (doc_id, source, target) -> label from any CSV carrying at least
    those four columns (the export format qualifies)."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fp:
        reader = csv.DictReader(fp)
        needed = {"doc_id", "source", "target", "label"}
        if reader.fieldnames is None or not needed <= set(reader.fieldnames):
            raise SchemaError(
                f"CSV must carry columns {sorted(needed)}", source=str(path)
            )
        out = {}
        for i, row in enumerate(reader):
            try:
                label = RelationLabel(row["label"])
            except ValueError:
                raise SchemaError(
                    f"unknown label {row['label']!r}", source=str(path),
                    pointer=_pointer("rows", i, "label"),
                )
            out[(row["doc_id"], row["source"], row["target"])] = label
    return out


class AblationCriterion(str, Enum):
    WORD_CLASS = "word_class"
    WINDOW = "window"


@dataclass(frozen=True, slots=True)
class AblationSpec:
    criterion: AblationCriterion
    threshold: int = 4  # WINDOW only: A gets window <= threshold

    def __post_init__(self) -> None:
        if self.threshold < 0:
            raise ValueError("window threshold must be >= 0")


def ablate(
    records: Sequence[PairRecord], spec: AblationSpec
) -> tuple[list[PairRecord], list[PairRecord]]:
    """Partition pair records into (A, B): verb-only vs non-verb-involved pairs,
    or short- vs long-distance pairs under the window threshold."""
    if spec.criterion is AblationCriterion.WORD_CLASS:
        in_a = lambda r: (
            r.source_word_class is WordClass.VERB and r.target_word_class is WordClass.VERB
        )
    else:
        in_a = lambda r: r.window <= spec.threshold
    split_a = [r for r in records if in_a(r)]
    split_b = [r for r in records if not in_a(r)]
    return split_a, split_b
