"""Selecting a single quintuple per event: baselines and learned ranking.

Baselines pick the earliest, latest, or most frequent reporting; the
supervised selector scores every candidate with a trained forest and
returns the argmax when its confidence clears the threshold gamma.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from .dates import truncate_to_granularity
from .events import CandidateQuintuple, EventKey

if TYPE_CHECKING:  # pragma: no cover
    from .forest import ForestModel

METHOD_EARLIEST = "earliest"
METHOD_LATEST = "latest"
METHOD_FREQUENT = "frequent"
METHOD_SUPERVISED = "supervised"

DEFAULT_GAMMA = 0.3

#: The 18 ranking features, in report order.
FEATURE_NAMES = (
    "dates_count",
    "article_length",
    "sentence_length",
    "sentence_order",
    "values_ratio",
    "correct_fin_arg",
    "pred_frequency",
    "predicate_tense",
    "object_has_cb_uri",
    "object_has_dbp_uri",
    "nytc_desc_bus",
    "has_event_date",
    "correct_temp_arg",
    "object_has_fb_uri",
    "is_noun_predicate",
    "subject_has_dbp_uri",
    "subject_has_cb_uri",
    "subject_has_fb_uri",
)

_TENSE_VALUES = ("past", "present", "future", "unknown")


@dataclass(frozen=True)
class FeatureVector:
    dates_count: int
    article_length: int
    sentence_length: int
    sentence_order: int
    values_ratio: float
    correct_fin_arg: bool
    pred_frequency: float
    predicate_tense: str
    object_has_cb_uri: bool
    object_has_dbp_uri: bool
    nytc_desc_bus: bool
    has_event_date: bool
    correct_temp_arg: bool
    object_has_fb_uri: bool
    is_noun_predicate: bool
    subject_has_dbp_uri: bool
    subject_has_cb_uri: bool
    subject_has_fb_uri: bool


def feature_schema() -> tuple[str, ...]:
    """Encoded column names: tense expanded one-hot, everything else numeric."""
    columns: list[str] = []
    for name in FEATURE_NAMES:
        if name == "predicate_tense":
            columns.extend(f"predicate_tense={t}" for t in _TENSE_VALUES)
        else:
            columns.append(name)
    return tuple(columns)


FEATURE_SCHEMA = feature_schema()


def encode_features(fv: FeatureVector) -> list[float]:
    row: list[float] = []
    for name in FEATURE_NAMES:
        if name == "predicate_tense":
            row.extend(1.0 if fv.predicate_tense == t else 0.0 for t in _TENSE_VALUES)
        else:
            row.append(float(getattr(fv, name)))
    return row


@dataclass(frozen=True)
class SelectionResult:
    event_key: EventKey
    chosen: CandidateQuintuple | None
    confidence: float
    method: str

    def to_record(self) -> dict:
        return {
            "event_key": self.event_key.encode(),
            "chosen": self.chosen.to_record() if self.chosen else None,
            "confidence": self.confidence,
            "method": self.method,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "SelectionResult":
        chosen = rec.get("chosen")
        return cls(
            event_key=EventKey.parse(rec["event_key"]),
            chosen=CandidateQuintuple.from_record(chosen) if chosen else None,
            confidence=float(rec["confidence"]),
            method=rec["method"],
        )


def _order_key(c: CandidateQuintuple):
    return (c.published, c.doc_id, c.provenance.order_index, c.value_index, c.date_index)


def _sentence_key(c: CandidateQuintuple):
    return (c.published, c.doc_id, c.provenance.order_index)


def select_earliest(candidates: Sequence[CandidateQuintuple]) -> CandidateQuintuple:
    """Candidate from the earliest-published sentence; within it, lowest
    value index then date index (the "arbitrary" pick made deterministic)."""
    if not candidates:
        raise ValueError("empty candidate set")
    return min(candidates, key=_order_key)


def select_latest(candidates: Sequence[CandidateQuintuple]) -> CandidateQuintuple:
    """Mirror of select_earliest with the maximum publication date."""
    if not candidates:
        raise ValueError("empty candidate set")
    last = max(_sentence_key(c) for c in candidates)
    pool = [c for c in candidates if _sentence_key(c) == last]
    return min(pool, key=lambda c: (c.value_index, c.date_index))


def _pair_key(c: CandidateQuintuple):
    return (c.value.amount, c.value.currency, c.date.granularity,
            truncate_to_granularity(c.date.date, c.date.granularity))


def select_most_frequent(candidates: Sequence[CandidateQuintuple]) -> CandidateQuintuple:
    """Most repeated (value, date-at-its-granularity) pair; ties resolve to
    the earliest reporting within the most frequent pool."""
    if not candidates:
        raise ValueError("empty candidate set")
    counts = Counter(_pair_key(c) for c in candidates)
    best = max(counts.values())
    pool = [c for c in candidates if counts[_pair_key(c)] == best]
    return select_earliest(pool)


def extract_features(
    candidate: CandidateQuintuple,
    event_candidates: Sequence[CandidateQuintuple],
    corpus_stats: dict[str, float] | None = None,
    repository=None,
) -> FeatureVector:
    """The 18 ranking features for one candidate in its event context.

    Date agreement is counted at the candidate's own granularity; value
    agreement uses exact normalized amount + currency.  URI flags come from
    the repository when given, otherwise from the namespaces recorded at
    annotation time.
    """
    meta = candidate.provenance
    gran = candidate.date.granularity
    ref = truncate_to_granularity(candidate.date.date, gran)
    dates_count = sum(
        1 for c in event_candidates if truncate_to_granularity(c.date.date, gran) == ref
    )
    same_value = sum(
        1
        for c in event_candidates
        if c.value.amount == candidate.value.amount and c.value.currency == candidate.value.currency
    )
    values_ratio = same_value / len(event_candidates)
    if corpus_stats is not None:
        pred_frequency = corpus_stats.get(candidate.predicate_label, 0.0)
    else:
        pred_frequency = meta.pred_frequency
    if repository is not None:
        subject_ns = _repo_namespaces(repository, candidate.subject_id)
        object_ns = _repo_namespaces(repository, candidate.object_id)
    else:
        subject_ns = meta.subject_namespaces
        object_ns = meta.object_namespaces
    return FeatureVector(
        dates_count=dates_count,
        article_length=meta.word_count,
        sentence_length=meta.sentence_length,
        sentence_order=meta.order_index,
        values_ratio=values_ratio,
        correct_fin_arg=meta.correct_fin_arg,
        pred_frequency=pred_frequency,
        predicate_tense=meta.predicate_tense,
        object_has_cb_uri="crunchbase" in object_ns,
        object_has_dbp_uri="dbpedia" in object_ns,
        nytc_desc_bus=meta.desc_business,
        has_event_date=not candidate.date_is_publication,
        correct_temp_arg=meta.correct_temp_arg,
        object_has_fb_uri="freebase" in object_ns,
        is_noun_predicate=meta.is_noun_predicate,
        subject_has_dbp_uri="dbpedia" in subject_ns,
        subject_has_cb_uri="crunchbase" in subject_ns,
        subject_has_fb_uri="freebase" in subject_ns,
    )


def _repo_namespaces(repository, entity_id: str) -> tuple[str, ...]:
    rec = repository.get(entity_id)
    return rec.uri_namespaces() if rec is not None else ()


def score_candidates(
    candidates: Sequence[CandidateQuintuple],
    model: "ForestModel",
    corpus_stats: dict[str, float] | None = None,
) -> list[float]:
    rows = [
        encode_features(extract_features(c, candidates, corpus_stats)) for c in candidates
    ]
    return [model.predict_one(row) for row in rows]


def select_supervised(
    candidates: Sequence[CandidateQuintuple],
    model: "ForestModel",
    gamma: float = DEFAULT_GAMMA,
    corpus_stats: dict[str, float] | None = None,
) -> tuple[CandidateQuintuple, float] | None:
    """Argmax of the learned score; None when the best score is below gamma.

    Score ties break toward the earliest-reporting ordering.
    """
    if not candidates:
        raise ValueError("empty candidate set")
    scores = score_candidates(candidates, model, corpus_stats)
    best, best_score = None, -1.0
    for cand, score in sorted(zip(candidates, scores), key=lambda p: _order_key(p[0])):
        if score > best_score:
            best, best_score = cand, score
    assert best is not None
    if best_score < gamma:
        return None
    return best, best_score


def run_selection(
    by_event: dict[EventKey, list[CandidateQuintuple]],
    method: str,
    model: "ForestModel | None" = None,
    gamma: float = DEFAULT_GAMMA,
) -> list[SelectionResult]:
    """Apply one selection method to every event."""
    results = []
    for key in sorted(by_event):
        pool = by_event[key]
        if method == METHOD_EARLIEST:
            results.append(SelectionResult(key, select_earliest(pool), 1.0, method))
        elif method == METHOD_LATEST:
            results.append(SelectionResult(key, select_latest(pool), 1.0, method))
        elif method == METHOD_FREQUENT:
            results.append(SelectionResult(key, select_most_frequent(pool), 1.0, method))
        elif method == METHOD_SUPERVISED:
            if model is None:
                raise ValueError("supervised selection requires a model")
            picked = select_supervised(pool, model, gamma)
            if picked is None:
                scores = score_candidates(pool, model)
                results.append(SelectionResult(key, None, max(scores), method))
            else:
                results.append(SelectionResult(key, picked[0], picked[1], method))
        else:
            raise ValueError(f"unknown selection method {method!r}")
    return results
