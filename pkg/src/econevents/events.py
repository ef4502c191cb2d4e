"""Grouping annotated sentences into events and generating candidate quintuples.

An event is keyed by (subject id, second-level predicate class, object id);
every sentence in a group contributes one candidate per (value, date)
combination, falling back to the publication date when the sentence has no
explicit date mention.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date

from .annotate import AnnotatedSentence
from .dates import GRAN_DAY, DateMention
from .money import MonetaryValue
from .ontology import Ontology

KEY_SEPARATOR = "~"


@dataclass(frozen=True, order=True)
class EventKey:
    subject_id: str
    predicate_class: str
    object_id: str

    def encode(self) -> str:
        return KEY_SEPARATOR.join((self.subject_id, self.predicate_class, self.object_id))

    @classmethod
    def parse(cls, encoded: str) -> "EventKey":
        parts = encoded.split(KEY_SEPARATOR)
        if len(parts) != 3 or not all(parts):
            raise ValueError(f"bad event key {encoded!r}")
        return cls(*parts)


@dataclass
class EventGroup:
    key: EventKey
    sentences: list[AnnotatedSentence]


@dataclass(frozen=True)
class ProvenanceMeta:
    """Sentence/document context carried on each candidate for ranking and display."""

    text: str
    order_index: int
    word_count: int
    sentence_length: int
    desc_business: bool
    correct_fin_arg: bool
    correct_temp_arg: bool
    predicate_tense: str
    is_noun_predicate: bool
    pred_frequency: float
    subject_namespaces: tuple[str, ...]
    object_namespaces: tuple[str, ...]

    def to_record(self) -> dict:
        return {
            "text": self.text,
            "order_index": self.order_index,
            "word_count": self.word_count,
            "sentence_length": self.sentence_length,
            "desc_business": self.desc_business,
            "correct_fin_arg": self.correct_fin_arg,
            "correct_temp_arg": self.correct_temp_arg,
            "predicate_tense": self.predicate_tense,
            "is_noun_predicate": self.is_noun_predicate,
            "pred_frequency": self.pred_frequency,
            "subject_namespaces": list(self.subject_namespaces),
            "object_namespaces": list(self.object_namespaces),
        }

    @classmethod
    def from_record(cls, rec: dict) -> "ProvenanceMeta":
        return cls(
            text=rec["text"],
            order_index=int(rec["order_index"]),
            word_count=int(rec["word_count"]),
            sentence_length=int(rec["sentence_length"]),
            desc_business=bool(rec["desc_business"]),
            correct_fin_arg=bool(rec["correct_fin_arg"]),
            correct_temp_arg=bool(rec["correct_temp_arg"]),
            predicate_tense=rec["predicate_tense"],
            is_noun_predicate=bool(rec["is_noun_predicate"]),
            pred_frequency=float(rec["pred_frequency"]),
            subject_namespaces=tuple(rec.get("subject_namespaces") or ()),
            object_namespaces=tuple(rec.get("object_namespaces") or ()),
        )


@dataclass(frozen=True)
class CandidateQuintuple:
    subject_id: str
    predicate_label: str
    predicate_class: str
    object_id: str
    value: MonetaryValue
    date: DateMention
    date_is_publication: bool
    sentence_id: str
    doc_id: str
    published: date
    value_index: int
    date_index: int
    provenance: ProvenanceMeta

    @property
    def event_key(self) -> EventKey:
        return EventKey(self.subject_id, self.predicate_class, self.object_id)

    def to_record(self) -> dict:
        return {
            "subject_id": self.subject_id,
            "predicate_label": self.predicate_label,
            "predicate_class": self.predicate_class,
            "object_id": self.object_id,
            "value": self.value.to_record(),
            "date": self.date.to_record(),
            "date_is_publication": self.date_is_publication,
            "sentence_id": self.sentence_id,
            "doc_id": self.doc_id,
            "published": self.published.isoformat(),
            "value_index": self.value_index,
            "date_index": self.date_index,
            "provenance": self.provenance.to_record(),
        }

    @classmethod
    def from_record(cls, rec: dict) -> "CandidateQuintuple":
        return cls(
            subject_id=rec["subject_id"],
            predicate_label=rec["predicate_label"],
            predicate_class=rec["predicate_class"],
            object_id=rec["object_id"],
            value=MonetaryValue.from_record(rec["value"]),
            date=DateMention.from_record(rec["date"]),
            date_is_publication=bool(rec["date_is_publication"]),
            sentence_id=rec["sentence_id"],
            doc_id=rec["doc_id"],
            published=date.fromisoformat(rec["published"]),
            value_index=int(rec["value_index"]),
            date_index=int(rec["date_index"]),
            provenance=ProvenanceMeta.from_record(rec["provenance"]),
        )


def group_sentences(
    annotated: list[AnnotatedSentence], ontology: Ontology
) -> list[EventGroup]:
    """Partition annotated sentences into events keyed by (s, p-class, o)."""
    buckets: dict[EventKey, list[AnnotatedSentence]] = {}
    for sent in annotated:
        key = EventKey(
            sent.subject.entity_id,
            ontology.second_level_ancestor(sent.predicate.label),
            sent.object.entity_id,
        )
        buckets.setdefault(key, []).append(sent)
    groups = []
    for key in sorted(buckets):
        sentences = sorted(buckets[key], key=lambda s: (s.published, s.doc_id, s.order_index))
        groups.append(EventGroup(key, sentences))
    return groups


def generate_candidates(group: EventGroup, ontology: Ontology | None = None) -> list[CandidateQuintuple]:
    """All structured representations for one event.

    Per sentence: one candidate per (value, explicit date) pair; when the
    sentence has no explicit dates, one candidate per value carrying the
    publication date.  |candidates| = sum over sentences of |V| * max(1, |D|).
    """
    out: list[CandidateQuintuple] = []
    for sent in group.sentences:
        meta = ProvenanceMeta(
            text=sent.text,
            order_index=sent.order_index,
            word_count=sent.word_count,
            sentence_length=sent.sentence_length,
            desc_business=sent.desc_business,
            correct_fin_arg=sent.value_in_correct_arg,
            correct_temp_arg=sent.date_in_correct_arg,
            predicate_tense=sent.predicate.tense,
            is_noun_predicate=sent.predicate.is_noun,
            pred_frequency=sent.pred_frequency,
            subject_namespaces=sent.subject_namespaces,
            object_namespaces=sent.object_namespaces,
        )
        if sent.dates:
            date_pool = [(j, d, False) for j, d in enumerate(sent.dates)]
        else:
            pub = DateMention(sent.published, GRAN_DAY, None, False)
            date_pool = [(0, pub, True)]
        for vi, value in enumerate(sent.values):
            for di, dm, is_pub in date_pool:
                out.append(
                    CandidateQuintuple(
                        subject_id=group.key.subject_id,
                        predicate_label=sent.predicate.label,
                        predicate_class=group.key.predicate_class,
                        object_id=group.key.object_id,
                        value=value,
                        date=dm,
                        date_is_publication=is_pub,
                        sentence_id=sent.sentence_id,
                        doc_id=sent.doc_id,
                        published=sent.published,
                        value_index=vi,
                        date_index=di,
                        provenance=meta,
                    )
                )
    return out


def candidates_by_event(
    candidates: list[CandidateQuintuple],
) -> dict[EventKey, list[CandidateQuintuple]]:
    """Re-bucket a flat candidate list (e.g. loaded from file) by event key."""
    out: dict[EventKey, list[CandidateQuintuple]] = {}
    for cand in candidates:
        out.setdefault(cand.event_key, []).append(cand)
    return {key: out[key] for key in sorted(out)}
