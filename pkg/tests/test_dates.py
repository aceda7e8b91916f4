"""Granular date parsing, rendering, and hand-rolled calendar arithmetic."""

from __future__ import annotations

import datetime

import pytest
from hypothesis import given, strategies as st

from timelinekit.dates import (
    GranularDate,
    days_in_month,
    is_leap_year,
    minus_one_day,
    parse_date,
    plus_one_day,
)

exact_dates = st.dates(
    min_value=datetime.date(1000, 1, 2), max_value=datetime.date(2999, 12, 30)
).map(lambda d: GranularDate(d.year, d.month, d.day))


def granular_dates():
    def build(d: datetime.date, granularity: int) -> GranularDate:
        if granularity == 0:
            return GranularDate(None)
        if granularity == 1:
            return GranularDate(d.year)
        if granularity == 2:
            return GranularDate(d.year, d.month)
        return GranularDate(d.year, d.month, d.day)

    return st.builds(
        build,
        st.dates(min_value=datetime.date(1000, 1, 1), max_value=datetime.date(2999, 12, 31)),
        st.integers(min_value=0, max_value=3),
    )


def test_render_wildcards():
    assert GranularDate(2020, 8).render() == "2020-08-XX"
    assert GranularDate(2020).render() == "2020-XX-XX"
    assert GranularDate(None).render() == "XXXX-XX-XX"
    assert GranularDate(2020, 8, 14).render() == "2020-08-14"


@given(granular_dates())
def test_parse_render_round_trip(d: GranularDate):
    assert parse_date(d.render()) == d


@pytest.mark.parametrize("text", [
    "2020-8-14", "2020-08-14T00:00", "20-08-14", "XXXX-08-XX", "XXXX-08-14",
    "2020-XX-14", "2020-13-01", "2020-00-10", "2021-02-29", "2020-04-31",
    "0999-01-01", "3000-01-01", "", "yesterday",
])
def test_rejects_malformed(text):
    with pytest.raises(ValueError):
        parse_date(text)


def test_prefix_granularity_enforced():
    with pytest.raises(ValueError):
        GranularDate(None, 5, None)
    with pytest.raises(ValueError):
        GranularDate(2020, None, 14)


def test_leap_years():
    assert is_leap_year(2020) and is_leap_year(2000)
    assert not is_leap_year(1900) and not is_leap_year(2021)
    assert days_in_month(2020, 2) == 29
    assert days_in_month(2021, 2) == 28


@given(exact_dates)
def test_day_arithmetic_matches_calendar_oracle(d: GranularDate):
    py = datetime.date(d.year, d.month, d.day)
    before = minus_one_day(d)
    after = plus_one_day(d)
    assert (before.year, before.month, before.day) == tuple(
        (py - datetime.timedelta(days=1)).timetuple()
    )[:3]
    assert (after.year, after.month, after.day) == tuple(
        (py + datetime.timedelta(days=1)).timetuple()
    )[:3]


@pytest.mark.parametrize("date,prev,nxt", [
    ("2020-03-01", "2020-02-29", "2020-03-02"),
    ("2021-03-01", "2021-02-28", "2021-03-02"),
    ("2021-01-01", "2020-12-31", "2021-01-02"),
    ("2020-12-31", "2020-12-30", "2021-01-01"),
    ("1900-03-01", "1900-02-28", "1900-03-02"),
    ("2000-03-01", "2000-02-29", "2000-03-02"),
])
def test_day_arithmetic_edges(date, prev, nxt):
    d = parse_date(date)
    assert minus_one_day(d).render() == prev
    assert plus_one_day(d).render() == nxt


def test_arithmetic_requires_exact():
    with pytest.raises(ValueError):
        minus_one_day(parse_date("2020-08-XX"))
    with pytest.raises(ValueError):
        plus_one_day(parse_date("XXXX-XX-XX"))


def test_interval_bounds():
    d = parse_date("2020-08-XX")
    assert d.first_day() == (2020, 8, 1)
    assert d.last_day() == (2020, 8, 31)
    assert parse_date("2020-02-XX").last_day() == (2020, 2, 29)
    assert parse_date("XXXX-XX-XX").first_day() == (1000, 1, 1)
    assert parse_date("XXXX-XX-XX").last_day() == (2999, 12, 31)
    assert parse_date("2020-XX-XX").last_day() == (2020, 12, 31)
