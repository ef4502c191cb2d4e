"""Scoring extractions against ground truth and leave-one-out cross-validation.

Matching is greedy one-to-one in deterministic order; an event match needs
identical entities and class-equivalent predicates, with attributes checked
strictly or relaxed depending on the mode.  LOO-CV folds by company: the
model is trained on every other company's labeled candidates and applied
to the held-out one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .events import CandidateQuintuple, EventKey
from .forest import label_instances, train_forest
from .matching import (
    MODE_EVENTS_ONLY,
    MODE_RELAXED,
    MODE_STRICT,
    MODES,
    GroundTruthEvent,
    load_ground_truth,
    match_attributes,
    match_event,
    values_match_relaxed,
)
from .ontology import Ontology
from .selection import DEFAULT_GAMMA, SelectionResult, run_selection

__all__ = [
    "EvalReport",
    "GroundTruthEvent",
    "LooReport",
    "MODE_EVENTS_ONLY",
    "MODE_RELAXED",
    "MODE_STRICT",
    "MODES",
    "evaluate",
    "load_ground_truth",
    "loo_cv",
    "match_attributes",
    "match_event",
    "values_match_relaxed",
]


@dataclass(frozen=True)
class EvalReport:
    precision: float
    recall: float
    f1: float
    tp: int
    fp: int
    fn: int
    mode: str

    def to_record(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "tp": self.tp,
            "fp": self.fp,
            "fn": self.fn,
            "mode": self.mode,
        }


def _report(tp: int, fp: int, fn: int, mode: str) -> EvalReport:
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return EvalReport(precision, recall, f1, tp, fp, fn, mode)


def _truth_order(t: GroundTruthEvent):
    return (t.company_tag, t.subject_id, t.predicate, t.object_id, t.event_date)


def evaluate(
    selections: Iterable[SelectionResult],
    truths: Sequence[GroundTruthEvent],
    ontology: Ontology,
    mode: str = MODE_RELAXED,
) -> EvalReport:
    """Greedy one-to-one matching of returned selections against truths.

    A selection that returned no quintuple (supervised below gamma) counts
    neither as a true nor a false positive; its truth, if any, stays a miss.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    returned = [s for s in selections if s.chosen is not None]
    returned.sort(key=lambda s: (s.event_key, s.chosen.published))
    pool = sorted(truths, key=_truth_order)
    matched = [False] * len(pool)
    tp = fp = 0
    for sel in returned:
        hit = None
        for i, truth in enumerate(pool):
            if matched[i]:
                continue
            if not match_event(sel.chosen, truth, ontology):
                continue
            if mode != MODE_EVENTS_ONLY and not match_attributes(sel.chosen, truth, mode):
                continue
            hit = i
            break
        if hit is None:
            fp += 1
        else:
            matched[hit] = True
            tp += 1
    fn = matched.count(False)
    return _report(tp, fp, fn, mode)


@dataclass(frozen=True)
class LooReport:
    folds: tuple[tuple[str, EvalReport], ...]
    aggregate: EvalReport

    def to_record(self) -> dict:
        return {
            "folds": [{"company": c, **r.to_record()} for c, r in self.folds],
            "aggregate": self.aggregate.to_record(),
        }


def loo_cv(
    by_event: Mapping[EventKey, Sequence[CandidateQuintuple]],
    truths: Sequence[GroundTruthEvent],
    ontology: Ontology,
    mode: str = MODE_RELAXED,
    gamma: float = DEFAULT_GAMMA,
    seed: int = 0,
    forest_params: dict | None = None,
) -> LooReport:
    """Per-company folds: train on the rest, select on the held-out company.

    Aggregation sums tp/fp/fn across folds (micro average).
    """
    companies = sorted({t.company_tag for t in truths})
    if len(companies) < 2:
        raise ValueError("leave-one-out needs at least two companies")
    instances = label_instances(by_event, truths, ontology)
    folds = []
    tp = fp = fn = 0
    for company in companies:
        train_instances = [i for i in instances if i.company_tag != company]
        model = train_forest(train_instances, seed=seed, **(forest_params or {}))
        test_events = {
            key: pool for key, pool in by_event.items() if key.subject_id == company
        }
        selections = run_selection(test_events, "supervised", model=model, gamma=gamma)
        fold_truths = [t for t in truths if t.company_tag == company]
        report = evaluate(selections, fold_truths, ontology, mode)
        folds.append((company, report))
        tp += report.tp
        fp += report.fp
        fn += report.fn
    return LooReport(tuple(folds), _report(tp, fp, fn, mode))
