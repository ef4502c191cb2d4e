"""Ground-truth records and event/attribute matching rules.

Relaxed matching compares only the year part of dates and tolerates a
monetary deviation of up to 10% of the ground-truth value (inclusive
boundary, exact decimal arithmetic).  Strict matching requires the exact
amount and the date to agree at the truth's granularity.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from decimal import Decimal
from pathlib import Path

import json

from .dates import GRAN_DAY, GRAN_MONTH, GRAN_YEAR, truncate_to_granularity
from .events import CandidateQuintuple
from .money import format_amount
from .ontology import Ontology

MODE_EVENTS_ONLY = "events_only"
MODE_STRICT = "strict"
MODE_RELAXED = "relaxed"
MODES = (MODE_EVENTS_ONLY, MODE_STRICT, MODE_RELAXED)


@dataclass(frozen=True)
class GroundTruthEvent:
    company_tag: str
    subject_id: str
    predicate: str
    object_id: str
    amount: Decimal
    currency: str
    event_date: date
    granularity: str

    def to_record(self) -> dict:
        if self.granularity == GRAN_YEAR:
            date_str = str(self.event_date.year)
        elif self.granularity == GRAN_MONTH:
            date_str = f"{self.event_date.year:04d}-{self.event_date.month:02d}"
        else:
            date_str = self.event_date.isoformat()
        return {
            "company": self.company_tag,
            "subject": self.subject_id,
            "predicate": self.predicate,
            "object": self.object_id,
            "amount": format_amount(self.amount),
            "currency": self.currency,
            "date": date_str,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "GroundTruthEvent":
        event_date, granularity = _parse_truth_date(rec["date"])
        return cls(
            company_tag=rec["company"],
            subject_id=rec["subject"],
            predicate=rec["predicate"],
            object_id=rec["object"],
            amount=Decimal(str(rec["amount"])),
            currency=rec["currency"],
            event_date=event_date,
            granularity=granularity,
        )


def _parse_truth_date(raw: str) -> tuple[date, str]:
    """Granularity is implied by the date format: 2004, 2004-10, 2004-10-26."""
    raw = str(raw)
    parts = raw.split("-")
    if len(parts) == 1:
        return date(int(parts[0]), 1, 1), GRAN_YEAR
    if len(parts) == 2:
        return date(int(parts[0]), int(parts[1]), 1), GRAN_MONTH
    return date.fromisoformat(raw), GRAN_DAY


def load_ground_truth(path: str | Path) -> list[GroundTruthEvent]:
    truths = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line:
            truths.append(GroundTruthEvent.from_record(json.loads(line)))
    return truths


def values_match_relaxed(extracted: Decimal, truth: Decimal) -> bool:
    """|extracted - truth| <= 10% of the truth value, computed exactly."""
    return abs(extracted - truth) * 10 <= truth


def match_event(
    candidate: CandidateQuintuple, truth: GroundTruthEvent, ontology: Ontology
) -> bool:
    """Entities must be identical and the predicates class-equivalent."""
    return (
        candidate.subject_id == truth.subject_id
        and candidate.object_id == truth.object_id
        and ontology.predicates_equivalent(candidate.predicate_label, truth.predicate)
    )


def match_attributes(
    candidate: CandidateQuintuple, truth: GroundTruthEvent, mode: str
) -> bool:
    if candidate.value.currency != truth.currency:
        return False
    if mode == MODE_STRICT:
        return candidate.value.amount == truth.amount and truncate_to_granularity(
            candidate.date.date, truth.granularity
        ) == truncate_to_granularity(truth.event_date, truth.granularity)
    if mode == MODE_RELAXED:
        return (
            values_match_relaxed(candidate.value.amount, truth.amount)
            and candidate.date.date.year == truth.event_date.year
        )
    raise ValueError(f"unknown attribute mode {mode!r}")
