"""Exception types shared across the toolkit. Every error carries a stable code."""

from __future__ import annotations


class TimelineError(Exception):
    """Base class for all toolkit errors."""

    code = "E_ERROR"


class NeedDateError(TimelineError):
    """An anchor option that requires an entered date was given none."""

    code = "E_NEED_DATE"


class FuzzyForbiddenError(TimelineError):
    """A wildcard date was supplied where only an exact date is allowed."""

    code = "E_FUZZY_FORBIDDEN"


class UnresolvedAnchorError(TimelineError):
    """An event reached relation generation without a resolved anchor."""

    code = "E_UNRESOLVED_ANCHOR"


class SchemaError(TimelineError):
    """A corpus file failed strict schema validation.

    Carries the offending file and a JSON pointer to the bad value.
    """

    code = "E_SCHEMA"

    def __init__(self, reason: str, *, source: str = "<memory>", pointer: str = ""):
        super().__init__(f"{source}:{pointer or '/'}: {reason}")
        self.source = source
        self.pointer = pointer or "/"
        self.reason = reason


class ValidationFailed(TimelineError):
    """A document with validation errors reached a stage that requires a clean one."""

    code = "E_INVALID_DOCUMENT"

    def __init__(self, doc_id: str, report):
        codes = ", ".join(sorted({e.code for e in report.errors}))
        super().__init__(f"document {doc_id!r} has validation errors: {codes}")
        self.doc_id = doc_id
        self.report = report


class RatioError(TimelineError):
    """Split ratios are malformed (wrong count, negative, or do not sum to 1)."""

    code = "E_RATIO"


class CoverageError(TimelineError):
    """Predictions do not cover exactly the scorable gold pairs."""

    code = "E_COVERAGE"


class EmptyLayersError(TimelineError):
    """Event agreement is undefined because both layers are empty."""

    code = "E_EMPTY"


class DegenerateMatrixError(TimelineError):
    """Cohen's kappa is undefined because expected agreement equals 1."""

    code = "E_DEGENERATE"
