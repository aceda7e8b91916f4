"""Inter-annotator agreement, prediction scoring, and corpus statistics.

Events from two layers are matched by exact (doc_id, sentence_index, span)
identity; relation agreement is computed only over pairs whose both endpoints
are matched events, per the annotation protocol.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import CoverageError, DegenerateMatrixError, EmptyLayersError
from .model import AnnotatedDocument, Event, WordClass
from .relgen import RelationLabel, RelationSet

LABELS = (
    RelationLabel.BEFORE,
    RelationLabel.AFTER,
    RelationLabel.EQUAL,
    RelationLabel.VAGUE,
)
SCORED_LABELS = (RelationLabel.BEFORE, RelationLabel.AFTER, RelationLabel.EQUAL)

EventKey = tuple[str, int, int, int]
PairKey = tuple[str, EventKey, EventKey]


def round2(value: float) -> float:
    """Half-up rounding to two decimals, the rendering used in all reports."""
    return float(Decimal(repr(value)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def event_key(doc_id: str, event: Event) -> EventKey:
    return (doc_id, event.sentence_index, event.span[0], event.span[1])


@dataclass(frozen=True, slots=True)
class ContingencyMatrix:
    """4x4 label-by-label counts; rows are annotator 1, columns annotator 2."""

    counts: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self) -> None:
        if len(self.counts) != 4 or any(len(row) != 4 for row in self.counts):
            raise ValueError("contingency matrix must be 4x4")
        if any(c < 0 for row in self.counts for c in row):
            raise ValueError("contingency counts must be non-negative")

    @property
    def labels(self) -> tuple[RelationLabel, ...]:
        return LABELS

    @property
    def row_totals(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.counts)

    @property
    def col_totals(self) -> tuple[int, ...]:
        return tuple(sum(row[j] for row in self.counts) for j in range(4))

    @property
    def total(self) -> int:
        return sum(self.row_totals)

    @property
    def trace(self) -> int:
        return sum(self.counts[i][i] for i in range(4))


@dataclass(frozen=True, slots=True)
class AgreementReport:
    """Observed agreement (micro F1 over single-label pairs) and Cohen's kappa."""

    relation_micro_f1: float
    kappa: float
    matrix: ContingencyMatrix
    event_f1: float | None = None


@dataclass(frozen=True, slots=True)
class LabelScore:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True, slots=True)
class EvalReport:
    """Per-label precision/recall/F1 over before/after/equal, plus micro F1.

    Vague pairs are discarded before scoring, so micro F1 equals accuracy over
    the scored pairs.
    """

    per_label: Mapping[RelationLabel, LabelScore]
    micro_f1: float
    scored_pairs: int


@dataclass(frozen=True, slots=True)
class CorpusStats:
    label_distribution: Mapping[RelationLabel, float]
    window_histogram: Mapping[int, int]
    average_window: float
    possible_pairs: int
    non_vague_pairs: int
    non_vague_percentage: float
    non_verb_involved_percentage: float
    documents: int


def event_iaa(
    events_a: Mapping[str, Sequence[Event]],
    events_b: Mapping[str, Sequence[Event]],
) -> float:
    """F1 between two event layers over a document set, as a percentage.

    A match is an identical (doc_id, sentence_index, char span).
    """
    keys_a = {event_key(d, e) for d, evs in events_a.items() for e in evs}
    keys_b = {event_key(d, e) for d, evs in events_b.items() for e in evs}
    if not keys_a and not keys_b:
        raise EmptyLayersError("event agreement is undefined for two empty layers")
    return 100.0 * 2 * len(keys_a & keys_b) / (len(keys_a) + len(keys_b))


def span_keyed_labels(
    doc: AnnotatedDocument, layer: str, relations: RelationSet
) -> dict[PairKey, RelationLabel]:
    """Key a relation set by span identity so layers with different event ids
    can be aligned."""
    by_id = {e.id: e for e in doc.layer(layer)}
    out: dict[PairKey, RelationLabel] = {}
    for rel in relations.relations:
        src = event_key(doc.doc_id, by_id[rel.source])
        tgt = event_key(doc.doc_id, by_id[rel.target])
        out[(doc.doc_id, src, tgt)] = rel.label
    return out


def contingency_from_labels(
    labels_a: Mapping[PairKey, RelationLabel],
    labels_b: Mapping[PairKey, RelationLabel],
) -> ContingencyMatrix:
    """Cross-tabulate the two annotators over the pairs they share."""
    index = {label: i for i, label in enumerate(LABELS)}
    counts = [[0] * 4 for _ in range(4)]
    for key in labels_a.keys() & labels_b.keys():
        counts[index[labels_a[key]]][index[labels_b[key]]] += 1
    return ContingencyMatrix(tuple(tuple(row) for row in counts))


def agreement_from_matrix(
    matrix: ContingencyMatrix, event_f1: float | None = None
) -> AgreementReport:
    """Observed agreement and Cohen's kappa from a contingency matrix.

    kappa = (Po - Pe) / (1 - Pe) with Pe the product-of-marginals chance
    agreement; computed in exact arithmetic before the final division.
    """
    total = matrix.total
    if total == 0:
        raise DegenerateMatrixError("agreement is undefined for an empty matrix")
    po = Fraction(matrix.trace, total)
    pe = Fraction(
        sum(r * c for r, c in zip(matrix.row_totals, matrix.col_totals)),
        total * total,
    )
    if pe == 1:
        raise DegenerateMatrixError(
            "kappa is undefined: both annotators used a single label (Pe = 1)"
        )
    kappa = (po - pe) / (1 - pe)
    return AgreementReport(
        relation_micro_f1=float(100 * po),
        kappa=float(kappa),
        matrix=matrix,
        event_f1=event_f1,
    )


def relation_iaa(
    labels_a: Mapping[PairKey, RelationLabel],
    labels_b: Mapping[PairKey, RelationLabel],
    event_f1: float | None = None,
) -> AgreementReport:
    """Agreement over the relation pairs common to both layers."""
    return agreement_from_matrix(contingency_from_labels(labels_a, labels_b), event_f1)


def evaluate(
    gold: Mapping[PairKey, RelationLabel],
    pred: Mapping[PairKey, RelationLabel],
) -> EvalReport:
    """Score predictions against gold labels, discarding vague gold pairs.

    Predictions must cover exactly the non-vague gold pairs with non-vague
    labels; anything else raises :class:`CoverageError`.
    """
    scored = {k: v for k, v in gold.items() if v is not RelationLabel.VAGUE}
    missing = scored.keys() - pred.keys()
    unknown = pred.keys() - scored.keys()
    if missing or unknown:
        raise CoverageError(
            f"predictions must cover exactly the non-vague gold pairs "
            f"({len(missing)} missing, {len(unknown)} unknown)"
        )
    if any(v is RelationLabel.VAGUE for v in pred.values()):
        raise CoverageError("predicted labels must be before/after/equal, not vague")

    per_label = {}
    for label in SCORED_LABELS:
        tp = sum(1 for k, g in scored.items() if g is label and pred[k] is label)
        fp = sum(1 for k in scored if pred[k] is label) - tp
        fn = sum(1 for g in scored.values() if g is label) - tp
        precision = 100.0 * tp / (tp + fp) if tp + fp else 0.0
        recall = 100.0 * tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        per_label[label] = LabelScore(precision, recall, f1, support=tp + fn)

    correct = sum(1 for k, g in scored.items() if pred[k] is g)
    micro = 100.0 * correct / len(scored) if scored else 0.0
    return EvalReport(per_label=per_label, micro_f1=micro, scored_pairs=len(scored))


def corpus_stats(
    items: Iterable[tuple[AnnotatedDocument, RelationSet]],
) -> CorpusStats:
    """Aggregate label distribution, windows, and pair counts over a corpus."""
    label_counts = {label: 0 for label in LABELS}
    histogram: dict[int, int] = {}
    window_sum = 0
    non_verb = 0
    total = 0
    doc_count = 0
    for doc, relset in items:
        doc_count += 1
        word_class = {e.id: e.word_class for e in doc.layer(relset.layer)}
        for rel in relset.relations:
            total += 1
            label_counts[rel.label] += 1
            histogram[rel.window] = histogram.get(rel.window, 0) + 1
            window_sum += rel.window
            if (
                word_class[rel.source] is WordClass.NON_VERB
                or word_class[rel.target] is WordClass.NON_VERB
            ):
                non_verb += 1

    non_vague = total - label_counts[RelationLabel.VAGUE]
    distribution = {
        label: (100.0 * count / total if total else 0.0)
        for label, count in label_counts.items()
    }
    return CorpusStats(
        label_distribution=distribution,
        window_histogram=dict(sorted(histogram.items())),
        average_window=window_sum / total if total else 0.0,
        possible_pairs=total,
        non_vague_pairs=non_vague,
        non_vague_percentage=100.0 * non_vague / total if total else 0.0,
        non_verb_involved_percentage=100.0 * non_verb / total if total else 0.0,
        documents=doc_count,
    )
