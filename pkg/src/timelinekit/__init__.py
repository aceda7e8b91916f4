"""timelinekit: fuzzy-anchored event timeline annotation toolkit.

Annotators mark events, anchor them to (possibly fuzzy) calendar dates, and
answer a fixed questionnaire; the toolkit deterministically generates every
pairwise temporal relation in a document, checks global consistency, computes
agreement and corpus statistics, builds dataset splits, and scores external
predictions.
"""

from .anchors import AnchorComparison, compare, resolve_anchor
from .consistency import ConflictKind, ConflictRecord, check
from .dates import FULLY_WILDCARD, GranularDate, minus_one_day, parse_date, plus_one_day
from .errors import (
    CoverageError,
    DegenerateMatrixError,
    EmptyLayersError,
    FuzzyForbiddenError,
    NeedDateError,
    RatioError,
    SchemaError,
    TimelineError,
    UnresolvedAnchorError,
    ValidationFailed,
)
from .metrics import (
    AgreementReport,
    ContingencyMatrix,
    CorpusStats,
    EvalReport,
    agreement_from_matrix,
    corpus_stats,
    evaluate,
    event_iaa,
    relation_iaa,
    span_keyed_labels,
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
    ValidationIssue,
    ValidationReport,
    WordClass,
)
from .corpus_io import (
    AblationCriterion,
    AblationSpec,
    Corpus,
    CorpusManifest,
    PairRecord,
    SplitAssignment,
    ablate,
    export_pairs,
    load_corpus,
    save_corpus,
    seeded_shuffle,
    split_corpus,
)
from .relgen import (
    Provenance,
    RelationLabel,
    RelationSet,
    TemporalRelation,
    enumerate_pairs,
    generate_relations,
    label_pair,
)
from .validate import lint_events, validate_document

__version__ = "0.1.0"
