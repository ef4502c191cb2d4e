"""Curated knowledge-base store: pending/accepted/rejected candidate records.

Decisions are serialized through one lock and persisted to an append-only
journal; replaying the journal over the initial records reconstructs the
exact store state.  Accepting a candidate auto-rejects its siblings, so at
most one record per event is ever accepted.
"""

from __future__ import annotations

import json
import logging
import threading
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .corpus import load_corpus
from .events import CandidateQuintuple, EventKey
from .selection import (
    METHOD_EARLIEST,
    METHOD_FREQUENT,
    METHOD_LATEST,
    METHOD_SUPERVISED,
    score_candidates,
    select_earliest,
    select_latest,
    select_most_frequent,
)

logger = logging.getLogger(__name__)

STATUS_PENDING = "pending"
STATUS_ACCEPTED = "accepted"
STATUS_REJECTED = "rejected"

ACTION_ACCEPT = "accept"
ACTION_REJECT = "reject"


class RecordNotFoundError(KeyError):
    pass


class DecisionConflictError(RuntimeError):
    """The record was already decided."""


class ProvenanceSourceError(RuntimeError):
    """The configured corpus file backing provenance is unavailable."""


@dataclass(frozen=True)
class KBRecord:
    record_id: str
    event_key: EventKey
    candidate: CandidateQuintuple
    confidence: float
    methods: tuple[str, ...]
    status: str = STATUS_PENDING
    decided_at: str | None = None
    decided_by: str | None = None

    def to_record(self) -> dict:
        return {
            "record_id": self.record_id,
            "event_key": self.event_key.encode(),
            "candidate": self.candidate.to_record(),
            "confidence": self.confidence,
            "methods": list(self.methods),
            "status": self.status,
            "decided_at": self.decided_at,
            "decided_by": self.decided_by,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "KBRecord":
        return cls(
            record_id=rec["record_id"],
            event_key=EventKey.parse(rec["event_key"]),
            candidate=CandidateQuintuple.from_record(rec["candidate"]),
            confidence=float(rec["confidence"]),
            methods=tuple(rec.get("methods") or ()),
            status=rec.get("status", STATUS_PENDING),
            decided_at=rec.get("decided_at"),
            decided_by=rec.get("decided_by"),
        )


class KBStore:
    def __init__(
        self,
        records: Iterable[KBRecord],
        journal_path: str | Path | None = None,
        corpus_path: str | Path | None = None,
    ) -> None:
        self._records: dict[str, KBRecord] = {}
        self._by_event: dict[EventKey, list[str]] = {}
        for rec in records:
            if rec.record_id in self._records:
                raise ValueError(f"duplicate record id {rec.record_id!r}")
            self._records[rec.record_id] = rec
            self._by_event.setdefault(rec.event_key, []).append(rec.record_id)
        self._lock = threading.Lock()
        self.journal_path = Path(journal_path) if journal_path else None
        self.corpus_path = Path(corpus_path) if corpus_path else None

    @classmethod
    def from_candidates(
        cls,
        by_event: Mapping[EventKey, Sequence[CandidateQuintuple]],
        model=None,
        gamma: float = 0.3,
        journal_path: str | Path | None = None,
        corpus_path: str | Path | None = None,
    ) -> "KBStore":
        """Build pending records for every candidate of every event.

        With a model, confidence is the supervised score and the argmax
        (when above gamma) carries the "supervised" badge; without one,
        baseline picks show confidence 1.0 and everything else 0.0.
        """
        records = []
        for key in sorted(by_event):
            pool = list(by_event[key])
            badges: dict[int, list[str]] = {}
            for method, pick in (
                (METHOD_EARLIEST, select_earliest(pool)),
                (METHOD_LATEST, select_latest(pool)),
                (METHOD_FREQUENT, select_most_frequent(pool)),
            ):
                badges.setdefault(pool.index(pick), []).append(method)
            scores = None
            if model is not None:
                scores = score_candidates(pool, model)
                top = max(range(len(pool)), key=lambda i: (scores[i], -i))
                if scores[top] >= gamma:
                    badges.setdefault(top, []).append(METHOD_SUPERVISED)
            for i, cand in enumerate(pool):
                if scores is not None:
                    confidence = scores[i]
                else:
                    confidence = 1.0 if i in badges else 0.0
                records.append(
                    KBRecord(
                        record_id=f"{key.encode()}@{i}",
                        event_key=key,
                        candidate=cand,
                        confidence=confidence,
                        methods=tuple(badges.get(i, ())),
                    )
                )
        return cls(records, journal_path=journal_path, corpus_path=corpus_path)

    # -- read side ---------------------------------------------------------

    def get(self, record_id: str) -> KBRecord:
        try:
            return self._records[record_id]
        except KeyError:
            raise RecordNotFoundError(record_id) from None

    def event_keys(self) -> list[EventKey]:
        return sorted(self._by_event)

    def list_candidates(self, event_key: EventKey) -> list[KBRecord]:
        """All records of one event, ranked by descending confidence (stable)."""
        if event_key not in self._by_event:
            raise RecordNotFoundError(event_key.encode())
        records = [self._records[rid] for rid in self._by_event[event_key]]
        return sorted(records, key=lambda r: -r.confidence)

    def query_objects(self, subject_id: str, predicate_class: str) -> list[tuple[str, float]]:
        """Distinct objects related to the subject, best confidence first."""
        best: dict[str, float] = {}
        for key, rids in self._by_event.items():
            if key.subject_id != subject_id or key.predicate_class != predicate_class:
                continue
            top = max(self._records[rid].confidence for rid in rids)
            if key.object_id not in best or top > best[key.object_id]:
                best[key.object_id] = top
        return sorted(best.items(), key=lambda kv: (-kv[1], kv[0]))

    def records(self) -> list[KBRecord]:
        return list(self._records.values())

    def provenance_sentence_ids(self, record_id: str) -> list[str]:
        """Distinct supporting sentences of the record's event, chronological."""
        rec = self.get(record_id)
        return [c.sentence_id for c in self._event_sentences(rec)]

    def _event_sentences(self, rec: KBRecord) -> list[CandidateQuintuple]:
        representatives: dict[str, CandidateQuintuple] = {}
        for sibling_id in self._by_event[rec.event_key]:
            cand = self._records[sibling_id].candidate
            representatives.setdefault(cand.sentence_id, cand)
        representatives[rec.candidate.sentence_id] = rec.candidate
        return sorted(
            representatives.values(),
            key=lambda c: (c.published, c.doc_id, c.provenance.order_index),
        )

    def get_provenance(self, record_id: str) -> list[dict]:
        """Every sentence supporting the record's event, oldest first.

        Each item carries the text and the value/date spans of the
        candidate extracted from that sentence (the record's own candidate
        for its source sentence).  Document titles come from the configured
        corpus file, whose absence is surfaced as an error without touching
        the record itself.
        """
        rec = self.get(record_id)
        docs = None
        if self.corpus_path is not None:
            try:
                docs = {d.doc_id: d for d in load_corpus(self.corpus_path)}
            except OSError as exc:
                raise ProvenanceSourceError(str(exc)) from exc
        items = []
        for cand in self._event_sentences(rec):
            item = {
                "sentence_id": cand.sentence_id,
                "doc_id": cand.doc_id,
                "text": cand.provenance.text,
                "published": cand.published.isoformat(),
                "value_span": list(cand.value.char_span),
                "date_span": list(cand.date.char_span) if cand.date.char_span else None,
            }
            if docs is not None:
                doc = docs.get(cand.doc_id)
                if doc is not None:
                    item["title"] = doc.title
                    item["descriptors"] = list(doc.descriptors)
            items.append(item)
        return items

    # -- write side --------------------------------------------------------

    def decide(self, record_id: str, action: str, curator: str) -> KBRecord:
        """Accept or reject a pending record; accepting auto-rejects siblings."""
        if action not in (ACTION_ACCEPT, ACTION_REJECT):
            raise ValueError(f"unknown action {action!r}")
        with self._lock:
            decided_at = datetime.now(timezone.utc).isoformat()
            updated = self._apply_decision(record_id, action, curator, decided_at)
            self._journal({"record_id": record_id, "action": action,
                           "curator": curator, "at": decided_at})
            return updated

    def _apply_decision(
        self, record_id: str, action: str, curator: str, decided_at: str
    ) -> KBRecord:
        rec = self.get(record_id)
        if rec.status != STATUS_PENDING:
            raise DecisionConflictError(f"{record_id} already {rec.status}")
        status = STATUS_ACCEPTED if action == ACTION_ACCEPT else STATUS_REJECTED
        updated = replace(rec, status=status, decided_at=decided_at, decided_by=curator)
        self._records[record_id] = updated
        if action == ACTION_ACCEPT:
            for sibling_id in self._by_event[rec.event_key]:
                sibling = self._records[sibling_id]
                if sibling_id != record_id and sibling.status == STATUS_PENDING:
                    self._records[sibling_id] = replace(
                        sibling,
                        status=STATUS_REJECTED,
                        decided_at=decided_at,
                        decided_by=curator,
                    )
        return updated

    def _journal(self, entry: dict) -> None:
        if self.journal_path is None:
            return
        with self.journal_path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(entry) + "\n")
            fh.flush()

    # -- persistence -------------------------------------------------------

    def snapshot(self, path: str | Path) -> None:
        with Path(path).open("w", encoding="utf-8") as fh:
            for rec in self._records.values():
                fh.write(json.dumps(rec.to_record(), ensure_ascii=False) + "\n")

    @classmethod
    def from_snapshot(
        cls,
        path: str | Path,
        journal_path: str | Path | None = None,
        corpus_path: str | Path | None = None,
    ) -> "KBStore":
        records = []
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if line:
                records.append(KBRecord.from_record(json.loads(line)))
        return cls(records, journal_path=journal_path, corpus_path=corpus_path)

    def replay_journal(self, path: str | Path) -> int:
        """Re-apply journaled decisions; idempotent against decided records."""
        journal = Path(path)
        if not journal.exists():
            return 0
        applied = 0
        for line in journal.read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line:
                continue
            entry = json.loads(line)
            try:
                self._apply_decision(
                    entry["record_id"], entry["action"], entry["curator"], entry["at"]
                )
                applied += 1
            except (RecordNotFoundError, DecisionConflictError) as exc:
                logger.warning("journal entry skipped: %s", exc)
        return applied

    def state_fingerprint(self) -> list[tuple]:
        """Deterministic view of the full store state, for equality checks."""
        return [
            (rid, r.status, r.decided_at, r.decided_by)
            for rid, r in sorted(self._records.items())
        ]
