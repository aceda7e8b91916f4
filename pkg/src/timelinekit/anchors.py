"""Anchor resolution against the document creation time, and the partial order
on granular dates used by relation generation."""

from __future__ import annotations

from enum import Enum

from .dates import FULLY_WILDCARD, GranularDate, minus_one_day, plus_one_day
from .errors import FuzzyForbiddenError, NeedDateError
from .model import AnchorOption


class AnchorComparison(Enum):
    BEFORE = "before"
    AFTER = "after"
    SAME = "same"
    INDETERMINATE = "indeterminate"


def compare(a: GranularDate, b: GranularDate) -> AnchorComparison:
    """Order two granular dates under interval semantics.

    SAME means the canonical text forms are identical, not that the intervals
    overlap: two events anchored to the same fuzzy month are deliberately SAME
    so that the questionnaire (not the calendar) decides their order, while a
    fuzzy month versus a day inside it is INDETERMINATE.
    """
    if a == b:
        return AnchorComparison.SAME
    if a.last_day() < b.first_day():
        return AnchorComparison.BEFORE
    if b.last_day() < a.first_day():
        return AnchorComparison.AFTER
    return AnchorComparison.INDETERMINATE


def resolve_anchor(
    option: AnchorOption,
    entered_date: GranularDate | None,
    dct: GranularDate,
) -> GranularDate:
    """Resolve one of the six anchoring options to a granular date.

    EXPLICIT and EXTERNAL take the entered exact date as-is; IMPLICIT takes the
    entered date which may carry wildcards; NC_PAST is the 24-hour narrative
    container default of one day before the DCT; FUTURE defaults to one day
    after the DCT unless a date was entered; UNKNOWN is fully wildcard.
    """
    if not dct.exact:
        raise FuzzyForbiddenError(f"DCT must be an exact date, got {dct}")
    if option in (AnchorOption.EXPLICIT, AnchorOption.EXTERNAL):
        if entered_date is None:
            raise NeedDateError(f"option {option.value} requires an entered date")
        if not entered_date.exact:
            raise FuzzyForbiddenError(
                f"option {option.value} requires an exact date, got {entered_date}"
            )
        return entered_date
    if option is AnchorOption.IMPLICIT:
        if entered_date is None:
            raise NeedDateError("option 2 requires an entered (possibly fuzzy) date")
        return entered_date
    if option is AnchorOption.NC_PAST:
        if entered_date is not None:
            raise ValueError("option 3 takes no entered date")
        return minus_one_day(dct)
    if option is AnchorOption.FUTURE:
        return plus_one_day(dct) if entered_date is None else entered_date
    if option is AnchorOption.UNKNOWN:
        if entered_date is not None:
            raise ValueError("option 6 takes no entered date")
        return FULLY_WILDCARD
    raise ValueError(f"unknown anchor option: {option!r}")
