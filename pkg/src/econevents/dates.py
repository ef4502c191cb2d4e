"""Date mention extraction: absolute and relative patterns with granularity.

Absolute forms (6/7/2015, "October 9, 2006", "in October", bare years) and
relative forms ("two days ago", "last year") are resolved against the
article's publication date.  Month mentions without a year resolve to the
nearest such month not after the publication date.  Numeric dates use
month-first (US) order.
"""

from __future__ import annotations

import calendar
import logging
import re
from dataclasses import dataclass
from datetime import date, timedelta

logger = logging.getLogger(__name__)

GRAN_DAY = "day"
GRAN_MONTH = "month"
GRAN_YEAR = "year"


@dataclass(frozen=True)
class DateMention:
    date: date
    granularity: str
    char_span: tuple[int, int] | None
    is_relative: bool = False

    def to_record(self) -> dict:
        return {
            "date": self.date.isoformat(),
            "granularity": self.granularity,
            "char_span": list(self.char_span) if self.char_span else None,
            "is_relative": self.is_relative,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "DateMention":
        span = rec.get("char_span")
        return cls(
            date=date.fromisoformat(rec["date"]),
            granularity=rec["granularity"],
            char_span=tuple(span) if span else None,
            is_relative=bool(rec.get("is_relative", False)),
        )


_MONTHS = {name.lower(): i for i, name in enumerate(calendar.month_name) if name}
_MONTHS.update({name.lower(): i for i, name in enumerate(calendar.month_abbr) if name})
_MONTHS["sept"] = 9

# Capitalized only: "may", "march" etc. double as ordinary words.
_MONTH_SRC = (
    "January|February|March|April|May|June|July|August|September|October|November|December"
    "|Jan|Feb|Mar|Apr|Jun|Jul|Aug|Sept|Sep|Oct|Nov|Dec"
)

_WORD_NUMBERS = {
    "a": 1, "an": 1, "one": 1, "two": 2, "three": 3, "four": 4, "five": 5,
    "six": 6, "seven": 7, "eight": 8, "nine": 9, "ten": 10, "eleven": 11,
    "twelve": 12, "twenty": 20, "thirty": 30,
}

_NUMERIC_RE = re.compile(r"\b(\d{1,2})/(\d{1,2})/(\d{4})\b")
_MONTH_DAY_YEAR_RE = re.compile(
    rf"\b(?P<month>{_MONTH_SRC})\.?\s+(?P<day>\d{{1,2}})(?:st|nd|rd|th)?,?\s+(?P<year>\d{{4}})\b"
)
_MONTH_YEAR_RE = re.compile(rf"\b(?P<month>{_MONTH_SRC})\.?\s+(?P<year>\d{{4}})\b")
_MONTH_DAY_RE = re.compile(
    rf"\b(?P<month>{_MONTH_SRC})\.?\s+(?P<day>\d{{1,2}})(?:st|nd|rd|th)?\b"
)
_MONTH_BARE_RE = re.compile(rf"\b(?P<month>{_MONTH_SRC})\b\.?")
_YEAR_RE = re.compile(r"\b(19\d\d|20\d\d)\b")
_AGO_RE = re.compile(
    r"\b(?P<count>\d{1,3}|[A-Za-z]+)\s+(?P<unit>day|week|month|year)s?\s+(?:ago|earlier)\b",
    re.IGNORECASE,
)
_DEICTIC_RE = re.compile(r"\b(yesterday|today|tomorrow)\b", re.IGNORECASE)
_LAST_NEXT_RE = re.compile(r"\b(?P<dir>last|next)\s+(?P<unit>week|month|year)\b", re.IGNORECASE)


def _clamp_day(year: int, month: int, day: int) -> date:
    return date(year, month, min(day, calendar.monthrange(year, month)[1]))


def _shift_months(anchor: date, delta: int) -> tuple[int, int]:
    total = anchor.year * 12 + (anchor.month - 1) + delta
    return total // 12, total % 12 + 1


def _nearest_month(month: int, anchor: date) -> int:
    """Year of the nearest such month not after the anchor."""
    return anchor.year if month <= anchor.month else anchor.year - 1


def extract_dates(text: str, publication_date: date) -> list[DateMention]:
    """All resolvable date mentions, ordered by position.

    Overlapping pattern matches keep the longest (ties: leftmost), so the
    year inside "October 9, 2006" is not reported twice.  Unresolvable
    matches (e.g. an invalid calendar day) are dropped with a diagnostic.
    """
    found: list[tuple[int, int, DateMention | None]] = []

    def mention(span: tuple[int, int], d: date, gran: str, relative: bool = False) -> None:
        found.append((span[0], span[1], DateMention(d, gran, span, relative)))

    for m in _NUMERIC_RE.finditer(text):
        mo, dy, yr = int(m.group(1)), int(m.group(2)), int(m.group(3))
        try:
            resolved = date(yr, mo, dy)
        except ValueError:
            logger.debug("unresolvable numeric date %r", m.group())
            found.append((m.start(), m.end(), None))
            continue
        mention(m.span(), resolved, GRAN_DAY)

    for m in _MONTH_DAY_YEAR_RE.finditer(text):
        mo = _MONTHS[m.group("month").lower()]
        try:
            resolved = date(int(m.group("year")), mo, int(m.group("day")))
        except ValueError:
            logger.debug("unresolvable date %r", m.group())
            found.append((m.start(), m.end(), None))
            continue
        mention(m.span(), resolved, GRAN_DAY)

    for m in _MONTH_YEAR_RE.finditer(text):
        mo = _MONTHS[m.group("month").lower()]
        mention(m.span(), date(int(m.group("year")), mo, 1), GRAN_MONTH)

    for m in _MONTH_DAY_RE.finditer(text):
        mo = _MONTHS[m.group("month").lower()]
        year = _nearest_month(mo, publication_date)
        try:
            resolved = date(year, mo, int(m.group("day")))
        except ValueError:
            logger.debug("unresolvable date %r", m.group())
            found.append((m.start(), m.end(), None))
            continue
        mention(m.span(), resolved, GRAN_DAY)

    for m in _MONTH_BARE_RE.finditer(text):
        mo = _MONTHS[m.group("month").lower().rstrip(".")]
        year = _nearest_month(mo, publication_date)
        mention((m.start(), m.start() + len(m.group("month"))), date(year, mo, 1), GRAN_MONTH)

    for m in _YEAR_RE.finditer(text):
        mention(m.span(), date(int(m.group(1)), 1, 1), GRAN_YEAR)

    anchor = publication_date
    for m in _AGO_RE.finditer(text):
        raw = m.group("count").lower()
        count = int(raw) if raw.isdigit() else _WORD_NUMBERS.get(raw)
        if count is None:
            continue
        unit = m.group("unit").lower()
        if unit == "day":
            mention(m.span(), anchor - timedelta(days=count), GRAN_DAY, True)
        elif unit == "week":
            mention(m.span(), anchor - timedelta(weeks=count), GRAN_DAY, True)
        elif unit == "month":
            y, mo = _shift_months(anchor, -count)
            mention(m.span(), date(y, mo, 1), GRAN_MONTH, True)
        else:
            mention(m.span(), date(anchor.year - count, 1, 1), GRAN_YEAR, True)

    for m in _DEICTIC_RE.finditer(text):
        offset = {"yesterday": -1, "today": 0, "tomorrow": 1}[m.group(1).lower()]
        mention(m.span(), anchor + timedelta(days=offset), GRAN_DAY, True)

    for m in _LAST_NEXT_RE.finditer(text):
        sign = -1 if m.group("dir").lower() == "last" else 1
        unit = m.group("unit").lower()
        if unit == "week":
            mention(m.span(), anchor + timedelta(weeks=sign), GRAN_DAY, True)
        elif unit == "month":
            y, mo = _shift_months(anchor, sign)
            mention(m.span(), date(y, mo, 1), GRAN_MONTH, True)
        else:
            mention(m.span(), date(anchor.year + sign, 1, 1), GRAN_YEAR, True)

    found.sort(key=lambda item: (-(item[1] - item[0]), item[0]))
    accepted: list[DateMention] = []
    occupied: list[tuple[int, int]] = []
    for s, e, dm in found:
        if any(not (e <= os or s >= oe) for os, oe in occupied):
            continue
        occupied.append((s, e))
        if dm is not None:
            accepted.append(dm)
    accepted.sort(key=lambda d: d.char_span[0] if d.char_span else 0)
    return accepted


def truncate_to_granularity(d: date, granularity: str) -> tuple[int, ...]:
    """Comparison key for a date at the given granularity."""
    if granularity == GRAN_YEAR:
        return (d.year,)
    if granularity == GRAN_MONTH:
        return (d.year, d.month)
    return (d.year, d.month, d.day)
