"""Granular calendar dates: exact days, or fuzzy dates with wildcard month/day.

The canonical text form is ``YYYY-MM-DD`` with ``XXXX``/``XX`` for wildcard
components, e.g. ``2020-08-XX`` for "some day in August 2020". A granular date
denotes the closed interval of all exact dates that complete it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

WILDCARD = None

MIN_YEAR = 1000
MAX_YEAR = 2999

_DATE_RE = re.compile(r"^(\d{4}|XXXX)-(\d{2}|XX)-(\d{2}|XX)$")
_MONTH_DAYS = (31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31)


def is_leap_year(year: int) -> bool:
    return year % 4 == 0 and (year % 100 != 0 or year % 400 == 0)


def days_in_month(year: int, month: int) -> int:
    if month == 2 and is_leap_year(year):
        return 29
    return _MONTH_DAYS[month - 1]


@dataclass(frozen=True, slots=True)
class GranularDate:
    """A date at year/month/day granularity; ``None`` components are wildcards.

    Granularity is prefix-shaped: a wildcard year forces a wildcard month, and
    a wildcard month forces a wildcard day.
    """

    year: int | None
    month: int | None = None
    day: int | None = None

    def __post_init__(self) -> None:
        if self.year is None and self.month is not None:
            raise ValueError("a wildcard year requires a wildcard month")
        if self.month is None and self.day is not None:
            raise ValueError("a wildcard month requires a wildcard day")
        if self.year is not None and not MIN_YEAR <= self.year <= MAX_YEAR:
            raise ValueError(f"year out of range [{MIN_YEAR}, {MAX_YEAR}]: {self.year}")
        if self.month is not None and not 1 <= self.month <= 12:
            raise ValueError(f"month out of range: {self.month}")
        if self.day is not None and not 1 <= self.day <= days_in_month(self.year, self.month):
            raise ValueError(f"day out of range for {self.year}-{self.month:02d}: {self.day}")

    @property
    def exact(self) -> bool:
        """True when no component is a wildcard."""
        return self.day is not None

    @property
    def fully_wildcard(self) -> bool:
        return self.year is None

    def render(self) -> str:
        y = "XXXX" if self.year is None else f"{self.year:04d}"
        m = "XX" if self.month is None else f"{self.month:02d}"
        d = "XX" if self.day is None else f"{self.day:02d}"
        return f"{y}-{m}-{d}"

    def __str__(self) -> str:
        return self.render()

    def first_day(self) -> tuple[int, int, int]:
        """Earliest exact completion, as a comparable (year, month, day) tuple."""
        y = MIN_YEAR if self.year is None else self.year
        m = 1 if self.month is None else self.month
        d = 1 if self.day is None else self.day
        return (y, m, d)

    def last_day(self) -> tuple[int, int, int]:
        """Latest exact completion, as a comparable (year, month, day) tuple."""
        y = MAX_YEAR if self.year is None else self.year
        m = 12 if self.month is None else self.month
        d = days_in_month(y, m) if self.day is None else self.day
        return (y, m, d)


FULLY_WILDCARD = GranularDate(None, None, None)


def parse_date(text: str) -> GranularDate:
    """Parse the canonical ``YYYY-MM-DD`` form; inverse of :meth:`GranularDate.render`."""
    m = _DATE_RE.match(text)
    if not m:
        raise ValueError(f"not a granular date (YYYY-MM-DD with XXXX/XX wildcards): {text!r}")
    ys, ms, ds = m.groups()
    return GranularDate(
        None if ys == "XXXX" else int(ys),
        None if ms == "XX" else int(ms),
        None if ds == "XX" else int(ds),
    )


def _require_exact(d: GranularDate) -> None:
    if not d.exact:
        raise ValueError(f"calendar arithmetic needs an exact date, got {d}")


def minus_one_day(d: GranularDate) -> GranularDate:
    """The exact calendar day before ``d``, honoring month lengths and leap years."""
    _require_exact(d)
    if d.day > 1:
        return GranularDate(d.year, d.month, d.day - 1)
    if d.month > 1:
        return GranularDate(d.year, d.month - 1, days_in_month(d.year, d.month - 1))
    return GranularDate(d.year - 1, 12, 31)


def plus_one_day(d: GranularDate) -> GranularDate:
    """The exact calendar day after ``d``, honoring month lengths and leap years."""
    _require_exact(d)
    if d.day < days_in_month(d.year, d.month):
        return GranularDate(d.year, d.month, d.day + 1)
    if d.month < 12:
        return GranularDate(d.year, d.month + 1, 1)
    return GranularDate(d.year + 1, 1, 1)
