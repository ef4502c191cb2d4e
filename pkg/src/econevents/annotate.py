"""Sentence-level semantic annotation and role assignment.

The pipeline per sentence: monetary values, predicate mentions (verb
gazetteer built from the ontology, optionally noun forms), entity mentions
(greedy longest match against the repository), date mentions, then a
positional/voice rule that assigns subject and object and checks whether
value and date sit in the predicate's argument window.  Sentences missing
any required ingredient are excluded.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, replace
from datetime import date
from pathlib import Path
from typing import Iterable

from .corpus import Document, Sentence, segment_sentences
from .dates import DateMention, extract_dates
from .entities import EntityRepository
from .money import MonetaryValue, recognize_monetary_values
from .ontology import Ontology

logger = logging.getLogger(__name__)

_DATA_DIR = Path(__file__).parent / "data"

TENSE_PAST = "past"
TENSE_PRESENT = "present"
TENSE_FUTURE = "future"
TENSE_UNKNOWN = "unknown"
TENSES = (TENSE_PAST, TENSE_PRESENT, TENSE_FUTURE, TENSE_UNKNOWN)

_FORM_TENSE = {
    "base": TENSE_PRESENT,
    "pres3s": TENSE_PRESENT,
    "gerund": TENSE_PRESENT,
    "past": TENSE_PAST,
    "pastpart": TENSE_PAST,
}

_DETERMINERS = frozenset(
    "the a an this that these those its his her their our such each any no".split()
)
_BE_FORMS = frozenset("is are was were be been being".split())
_FUTURE_AUX = frozenset("will shall".split())
_VALUE_PREPOSITIONS = frozenset("for at worth".split())
_DATE_PREPOSITIONS = frozenset("in on at by during since before after until".split())
_MENTION_LINKERS = frozenset(("of", "and", "&", "the"))

_WORD_RE = re.compile(r"[A-Za-z][A-Za-z.&'’-]*")


@dataclass(frozen=True)
class _Word:
    text: str
    start: int
    end: int


def _words(text: str) -> list[_Word]:
    return [_Word(m.group(), m.start(), m.end()) for m in _WORD_RE.finditer(text)]


def _clean(word: str) -> str:
    return word.lower().strip(".&'’-")


@dataclass(frozen=True)
class PredicateMention:
    label: str
    is_noun: bool
    tense: str
    char_span: tuple[int, int]
    form: str = "base"

    def to_record(self) -> dict:
        return {
            "label": self.label,
            "is_noun": self.is_noun,
            "tense": self.tense,
            "char_span": list(self.char_span),
            "form": self.form,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "PredicateMention":
        return cls(rec["label"], rec["is_noun"], rec["tense"], tuple(rec["char_span"]), rec.get("form", "base"))


@dataclass(frozen=True)
class EntityMention:
    entity_id: str
    char_span: tuple[int, int]
    role: str | None = None

    def to_record(self) -> dict:
        return {"entity_id": self.entity_id, "char_span": list(self.char_span), "role": self.role}

    @classmethod
    def from_record(cls, rec: dict) -> "EntityMention":
        return cls(rec["entity_id"], tuple(rec["char_span"]), rec.get("role"))


@dataclass(frozen=True)
class AnnotatedSentence:
    """One successfully annotated sentence: the unit grouped into events."""

    sentence_id: str
    doc_id: str
    order_index: int
    text: str
    published: date
    word_count: int
    descriptors: tuple[str, ...]
    values: tuple[MonetaryValue, ...]
    dates: tuple[DateMention, ...]
    predicate: PredicateMention
    subject: EntityMention
    object: EntityMention
    value_in_correct_arg: bool
    date_in_correct_arg: bool
    subject_namespaces: tuple[str, ...]
    object_namespaces: tuple[str, ...]
    pred_frequency: float = 0.0

    @property
    def sentence_length(self) -> int:
        return len(self.text.split())

    @property
    def desc_business(self) -> bool:
        return any(d.strip().casefold() == "business" for d in self.descriptors)

    def to_record(self) -> dict:
        return {
            "sentence_id": self.sentence_id,
            "doc_id": self.doc_id,
            "order_index": self.order_index,
            "text": self.text,
            "published": self.published.isoformat(),
            "word_count": self.word_count,
            "descriptors": list(self.descriptors),
            "values": [v.to_record() for v in self.values],
            "dates": [d.to_record() for d in self.dates],
            "predicate": self.predicate.to_record(),
            "subject": self.subject.to_record(),
            "object": self.object.to_record(),
            "value_in_correct_arg": self.value_in_correct_arg,
            "date_in_correct_arg": self.date_in_correct_arg,
            "subject_namespaces": list(self.subject_namespaces),
            "object_namespaces": list(self.object_namespaces),
            "pred_frequency": self.pred_frequency,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "AnnotatedSentence":
        return cls(
            sentence_id=rec["sentence_id"],
            doc_id=rec["doc_id"],
            order_index=int(rec["order_index"]),
            text=rec["text"],
            published=date.fromisoformat(rec["published"]),
            word_count=int(rec["word_count"]),
            descriptors=tuple(rec.get("descriptors") or ()),
            values=tuple(MonetaryValue.from_record(v) for v in rec["values"]),
            dates=tuple(DateMention.from_record(d) for d in rec["dates"]),
            predicate=PredicateMention.from_record(rec["predicate"]),
            subject=EntityMention.from_record(rec["subject"]),
            object=EntityMention.from_record(rec["object"]),
            value_in_correct_arg=bool(rec["value_in_correct_arg"]),
            date_in_correct_arg=bool(rec["date_in_correct_arg"]),
            subject_namespaces=tuple(rec.get("subject_namespaces") or ()),
            object_namespaces=tuple(rec.get("object_namespaces") or ()),
            pred_frequency=float(rec.get("pred_frequency", 0.0)),
        )


@dataclass(frozen=True)
class PipelineOptions:
    noun_predicates: bool = False
    enforce_roles: bool = False
    require_description: bool = False


def _load_verb_forms() -> dict[str, dict[str, str]]:
    table: dict[str, dict[str, str]] = {}
    path = _DATA_DIR / "verb_forms.tsv"
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        label, base, pres3s, gerund, past, pastpart = line.split("\t")
        table[label] = {
            "base": base,
            "pres3s": pres3s,
            "gerund": gerund,
            "past": past,
            "pastpart": pastpart,
        }
    return table


def _default_inflections(base: str) -> dict[str, str]:
    if base.endswith(("s", "x", "z", "ch", "sh")):
        pres3s = base + "es"
    elif base.endswith("y") and len(base) > 1 and base[-2] not in "aeiou":
        pres3s = base[:-1] + "ies"
    else:
        pres3s = base + "s"
    stem = base[:-1] if base.endswith("e") else base
    gerund = stem + "ing"
    if base.endswith("e"):
        past = base + "d"
    elif base.endswith("y") and len(base) > 1 and base[-2] not in "aeiou":
        past = base[:-1] + "ied"
    else:
        past = base + "ed"
    return {"base": base, "pres3s": pres3s, "gerund": gerund, "past": past, "pastpart": past}


@dataclass(frozen=True)
class _VerbEntry:
    label: str
    tense: str
    form: str


class PredicateLexicon:
    """Surface-form gazetteer for the ontology's verbs and mapped nouns.

    Shared surfaces (e.g. the pre-hyphen token of profit-gross/profit-net)
    resolve to the lexicographically first label.
    """

    def __init__(self, ontology: Ontology) -> None:
        forms_table = _load_verb_forms()
        self.verb_index: dict[str, _VerbEntry] = {}
        for label in sorted(ontology.nodes):
            base = label.split("-")[0]
            forms = forms_table.get(label) or _default_inflections(base)
            for form_name in ("base", "pres3s", "gerund", "past", "pastpart"):
                surface = forms[form_name].lower()
                self.verb_index.setdefault(
                    surface, _VerbEntry(label, _FORM_TENSE[form_name], form_name)
                )
        self.noun_index: dict[str, str] = {}
        for noun, verb in sorted(ontology.noun_lexicon.items()):
            self.noun_index.setdefault(noun, verb)
            plural = noun + ("es" if noun.endswith(("s", "x", "ch", "sh")) else "s")
            self.noun_index.setdefault(plural, verb)


def recognize_predicates(
    text: str,
    ontology: Ontology,
    allow_noun_predicates: bool = False,
    lexicon: PredicateLexicon | None = None,
) -> list[PredicateMention]:
    """Gazetteer pass over the tokens; tense inferred morphologically.

    A determiner directly before a verb surface demotes it to a noun
    reading ("the purchase"), which only counts when noun predicates are
    enabled and the noun lexicon knows the word.
    """
    if lexicon is None:
        lexicon = PredicateLexicon(ontology)
    words = _words(text)
    out: list[PredicateMention] = []
    for idx, word in enumerate(words):
        w = _clean(word.text)
        prev = _clean(words[idx - 1].text) if idx >= 1 else ""
        prev2 = _clean(words[idx - 2].text) if idx >= 2 else ""
        entry = lexicon.verb_index.get(w)
        if entry is not None and prev not in _DETERMINERS:
            tense = entry.tense
            if entry.form in ("base", "pres3s") and (prev in _FUTURE_AUX or prev2 in _FUTURE_AUX):
                tense = TENSE_FUTURE
            out.append(
                PredicateMention(entry.label, False, tense, (word.start, word.end), entry.form)
            )
            continue
        if allow_noun_predicates:
            verb = lexicon.noun_index.get(w)
            if verb is not None:
                out.append(
                    PredicateMention(verb, True, TENSE_UNKNOWN, (word.start, word.end), "noun")
                )
    return out


def _capitalized(token: str) -> bool:
    return bool(token) and token[0].isupper()


def recognize_entities(
    text: str,
    repository: EntityRepository,
    require_description: bool = False,
    max_window: int = 6,
) -> list[EntityMention]:
    """Greedy longest-match scan of capitalized token spans.

    Overlaps resolve longest first, ties leftmost first.  A trailing
    possessive ('s) is ignored for lookup but kept out of the span.
    """
    words = _words(text)
    candidates: list[tuple[int, int, str]] = []
    n = len(words)
    for i in range(n):
        if not _capitalized(words[i].text):
            continue
        for j in range(i, min(i + max_window, n)):
            token = words[j].text
            if j > i and not (_capitalized(token) or token.lower() in _MENTION_LINKERS):
                break
            if not _capitalized(token):
                continue
            span_text = text[words[i].start : words[j].end]
            end = words[j].end
            if span_text.endswith(("'s", "’s")):
                span_text = span_text[:-2]
                end -= 2
            rec = repository.resolve_mention(span_text, require_description)
            if rec is not None:
                candidates.append((words[i].start, end, rec.entity_id))
    candidates.sort(key=lambda c: (-(c[1] - c[0]), c[0]))
    occupied: list[tuple[int, int]] = []
    chosen: list[EntityMention] = []
    for s, e, entity_id in candidates:
        if any(not (e <= os or s >= oe) for os, oe in occupied):
            continue
        occupied.append((s, e))
        chosen.append(EntityMention(entity_id, (s, e)))
    chosen.sort(key=lambda m: m.char_span[0])
    return chosen


def _is_passive(words: list[_Word], predicate: PredicateMention) -> bool:
    if predicate.is_noun or predicate.form not in ("past", "pastpart"):
        return False
    before = [w for w in words if w.end <= predicate.char_span[0]]
    return any(_clean(w.text) in _BE_FORMS for w in before[-3:])


def _value_in_right_arg(
    words: list[_Word], pred_end: int, values: Iterable[MonetaryValue]
) -> bool:
    for v in values:
        vs = v.char_span[0]
        if vs < pred_end:
            continue
        between = [w for w in words if pred_end <= w.start and w.end <= vs]
        if len(between) <= 2:
            return True
        tail = {_clean(w.text) for w in between[-3:]}
        if tail & _VALUE_PREPOSITIONS:
            return True
    return False


def _date_in_right_arg(words: list[_Word], pred_end: int, dates: Iterable[DateMention]) -> bool:
    for d in dates:
        if d.char_span is None:
            continue
        ds = d.char_span[0]
        if ds < pred_end:
            continue
        between = [w for w in words if pred_end <= w.start and w.end <= ds]
        if len(between) <= 2:
            return True
        tail = {_clean(w.text) for w in between[-3:]}
        if tail & _DATE_PREPOSITIONS:
            return True
    return False


def assign_roles(
    sentence: Sentence,
    doc: Document,
    mentions: list[EntityMention],
    predicate: PredicateMention,
    values: list[MonetaryValue],
    dates: list[DateMention],
    enforce_semantic_roles: bool = False,
    subject_namespaces: tuple[str, ...] = (),
    object_namespaces: tuple[str, ...] = (),
    repository: EntityRepository | None = None,
) -> AnnotatedSentence | None:
    """Positional/voice role assignment; None when no valid pattern exists.

    Active voice: nearest mention left of the predicate is the subject,
    nearest right the object.  Passive voice (be + past participle, agent
    via "by") swaps them.  With enforce_semantic_roles, sentences whose
    monetary value is outside the predicate's argument window are rejected.
    """
    if not values or len({m.entity_id for m in mentions}) < 2:
        return None
    words = _words(sentence.text)
    p_start, p_end = predicate.char_span
    left = sorted(
        (m for m in mentions if m.char_span[1] <= p_start), key=lambda m: -m.char_span[0]
    )
    right = sorted((m for m in mentions if m.char_span[0] >= p_end), key=lambda m: m.char_span[0])
    pair = None
    for lm in left:
        for rm in right:
            if rm.entity_id != lm.entity_id:
                pair = (lm, rm)
                break
        if pair:
            break
    if pair is None:
        return None
    lm, rm = pair
    if _is_passive(words, predicate):
        subject = replace(rm, role="subject")
        obj = replace(lm, role="object")
    else:
        subject = replace(lm, role="subject")
        obj = replace(rm, role="object")
    value_ok = _value_in_right_arg(words, p_end, values)
    date_ok = _date_in_right_arg(words, p_end, dates)
    if enforce_semantic_roles and not value_ok:
        return None
    if repository is not None:
        subject_namespaces = _namespaces(repository, subject.entity_id)
        object_namespaces = _namespaces(repository, obj.entity_id)
    return AnnotatedSentence(
        sentence_id=sentence.sentence_id,
        doc_id=sentence.doc_id,
        order_index=sentence.order_index,
        text=sentence.text,
        published=doc.publication_date,
        word_count=doc.word_count or 0,
        descriptors=doc.descriptors,
        values=tuple(values),
        dates=tuple(dates),
        predicate=predicate,
        subject=subject,
        object=obj,
        value_in_correct_arg=value_ok,
        date_in_correct_arg=date_ok,
        subject_namespaces=subject_namespaces,
        object_namespaces=object_namespaces,
    )


def _namespaces(repository: EntityRepository, entity_id: str) -> tuple[str, ...]:
    rec = repository.get(entity_id)
    return rec.uri_namespaces() if rec is not None else ()


def annotate_sentence(
    sentence: Sentence,
    doc: Document,
    ontology: Ontology,
    repository: EntityRepository,
    options: PipelineOptions = PipelineOptions(),
    lexicon: PredicateLexicon | None = None,
) -> list[AnnotatedSentence]:
    """Run the annotators in order; one result per successful predicate."""
    values = recognize_monetary_values(sentence.text)
    if not values:
        return []
    predicates = recognize_predicates(sentence.text, ontology, options.noun_predicates, lexicon)
    if not predicates:
        return []
    mentions = recognize_entities(sentence.text, repository, options.require_description)
    if len({m.entity_id for m in mentions}) < 2:
        return []
    dates = extract_dates(sentence.text, doc.publication_date)
    out = []
    for predicate in predicates:
        annotated = assign_roles(
            sentence,
            doc,
            mentions,
            predicate,
            values,
            dates,
            enforce_semantic_roles=options.enforce_roles,
            repository=repository,
        )
        if annotated is not None:
            out.append(annotated)
    return out


def corpus_predicate_frequencies(
    docs: Iterable[Document],
    ontology: Ontology,
    lexicon: PredicateLexicon | None = None,
) -> dict[str, int]:
    """Sentence counts per ontology predicate (verb or mapped noun form)."""
    if lexicon is None:
        lexicon = PredicateLexicon(ontology)
    counts = {label: 0 for label in sorted(ontology.nodes)}
    for doc in docs:
        for sentence in segment_sentences(doc):
            labels = {
                p.label
                for p in recognize_predicates(sentence.text, ontology, True, lexicon)
            }
            for label in labels:
                counts[label] += 1
    return counts


def relative_predicate_frequencies(counts: dict[str, int]) -> dict[str, float]:
    total = sum(counts.values())
    if total == 0:
        return {label: 0.0 for label in counts}
    return {label: count / total for label, count in counts.items()}


def annotate_corpus(
    docs: Iterable[Document],
    ontology: Ontology,
    repository: EntityRepository,
    options: PipelineOptions = PipelineOptions(),
) -> list[AnnotatedSentence]:
    """Annotate every sentence of every document, deterministically ordered.

    Each annotated sentence is stamped with the global relative frequency
    of its predicate, computed over the same corpus.
    """
    lexicon = PredicateLexicon(ontology)
    docs = list(docs)
    counts = {label: 0 for label in sorted(ontology.nodes)}
    annotated: list[AnnotatedSentence] = []
    for doc in docs:
        for sentence in segment_sentences(doc):
            labels = {
                p.label for p in recognize_predicates(sentence.text, ontology, True, lexicon)
            }
            for label in labels:
                counts[label] += 1
            annotated.extend(
                annotate_sentence(sentence, doc, ontology, repository, options, lexicon)
            )
    rel = relative_predicate_frequencies(counts)
    annotated = [replace(a, pred_frequency=rel.get(a.predicate.label, 0.0)) for a in annotated]
    annotated.sort(key=lambda a: (a.doc_id, a.order_index, a.predicate.char_span))
    return annotated
