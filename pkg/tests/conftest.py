"""Shared fixtures: shipped ontology/entities, golden pools, synthetic pipeline."""

from __future__ import annotations

from datetime import date
from decimal import Decimal
from pathlib import Path

import pytest

from econevents.annotate import PipelineOptions, annotate_corpus
from econevents.corpus import load_corpus
from econevents.dates import GRAN_YEAR, DateMention
from econevents.entities import load_default_repository
from econevents.events import CandidateQuintuple, ProvenanceMeta, generate_candidates, group_sentences
from econevents.matching import load_ground_truth
from econevents.money import MonetaryValue
from econevents.ontology import load_default_ontology

DATA_DIR = Path(__file__).parent.parent / "src" / "econevents" / "data"


@pytest.fixture(scope="session")
def ontology():
    return load_default_ontology()


@pytest.fixture(scope="session")
def repository():
    return load_default_repository()


def make_candidate(
    *,
    subject="oracle",
    predicate_label="acquire",
    predicate_class="buy",
    object_id="peoplesoft",
    amount,
    year,
    published,
    doc_id,
    text="",
    order_index=0,
    word_count=22,
    is_noun=False,
    fin_arg=True,
    temp_arg=True,
    tense="past",
    value_index=0,
    date_index=0,
    date_is_publication=False,
    granularity=GRAN_YEAR,
    pred_frequency=0.357,
    subject_ns=("dbpedia", "freebase", "crunchbase"),
    object_ns=("dbpedia", "freebase"),
    desc_business=True,
) -> CandidateQuintuple:
    amount = Decimal(amount)
    event_date = date(year, 1, 1) if granularity == GRAN_YEAR else year
    value = MonetaryValue(amount, "USD", (0, 5), text[:5])
    mention = DateMention(event_date, granularity, (10, 14), False)
    meta = ProvenanceMeta(
        text=text or f"sentence in {doc_id}",
        order_index=order_index,
        word_count=word_count,
        sentence_length=max(len((text or "x y z").split()), 3),
        desc_business=desc_business,
        correct_fin_arg=fin_arg,
        correct_temp_arg=temp_arg,
        predicate_tense=tense,
        is_noun_predicate=is_noun,
        pred_frequency=pred_frequency,
        subject_namespaces=tuple(subject_ns),
        object_namespaces=tuple(object_ns),
    )
    return CandidateQuintuple(
        subject_id=subject,
        predicate_label=predicate_label,
        predicate_class=predicate_class,
        object_id=object_id,
        value=value,
        date=mention,
        date_is_publication=date_is_publication,
        sentence_id=f"{doc_id}:{order_index}",
        doc_id=doc_id,
        published=date.fromisoformat(published),
        value_index=value_index,
        date_index=date_index,
        provenance=meta,
    )


@pytest.fixture(scope="session")
def oracle_pool():
    """The eight conflicting reportings of the Oracle/PeopleSoft event."""
    rows = [
        dict(predicate_label="acquire", amount="7300000000", year=2003,
             published="2003-11-25", doc_id="t5d1", fin_arg=True, tense="present",
             text="Oracle moved to acquire PeopleSoft for $7.3 billion in 2003."),
        dict(predicate_label="acquire", amount="7700000000", year=2004,
             published="2004-10-26", doc_id="t5d2", is_noun=True, fin_arg=False,
             tense="unknown",
             text="Oracle's acquisition of PeopleSoft, a $7.7 billion fight, ran into 2004."),
        dict(predicate_label="acquire", amount="7700000000", year=2004,
             published="2004-10-26", doc_id="t5d3", is_noun=True, fin_arg=False,
             tense="unknown",
             text="The hostile acquisition of PeopleSoft by Oracle cost $7.7 billion in 2004."),
        dict(predicate_label="acquire", amount="1300000000", year=2004,
             published="2005-12-23", doc_id="t5d4", fin_arg=False, value_index=0,
             text="Oracle acquired PeopleSoft after raising its $1.3 billion bid to $7.038 billion in 2004."),
        dict(predicate_label="acquire", amount="7038000000", year=2004,
             published="2005-12-23", doc_id="t5d4", fin_arg=False, value_index=1,
             text="Oracle acquired PeopleSoft after raising its $1.3 billion bid to $7.038 billion in 2004."),
        dict(predicate_label="acquire", amount="10300000000", year=2004,
             published="2007-03-01", doc_id="t5d5", fin_arg=True,
             text="Oracle acquired PeopleSoft for $10.3 billion in 2004."),
        dict(predicate_label="acquire", amount="10300000000", year=2005,
             published="2005-06-30", doc_id="t5d6", is_noun=True, tense="unknown",
             text="Oracle's acquisition of PeopleSoft brought $10.3 billion of software revenue in 2005."),
        dict(predicate_label="purchase", amount="20000000000", year=2007,
             published="2007-03-21", doc_id="t5d7", is_noun=True, tense="unknown",
             pred_frequency=0.161,
             text="Oracle has spent $20 billion on its purchase of PeopleSoft and others by 2007."),
    ]
    return [make_candidate(**row) for row in rows]


@pytest.fixture(scope="session")
def youtube_docs():
    docs = [
        {
            "id": "nyt-1",
            "published": "2006-10-11",
            "title": "Google to Acquire YouTube",
            "body": (
                "Before Google agreed to buy YouTube for $1.65 billion in stock, "
                "it paid $1 billion for 5% of AOL."
            ),
            "descriptors": ["Business"],
        },
        {
            "id": "nyt-2",
            "published": "2007-02-08",
            "title": "Deal Recap",
            "body": "Google bought YouTube in October for $1.65 billion.",
            "descriptors": ["Business"],
        },
        {
            "id": "nyt-3",
            "published": "2007-04-05",
            "title": "Video Wars",
            "body": "YouTube was purchased by Google in November for $1.6 billion.",
            "descriptors": ["Business", "Technology"],
        },
    ]
    from econevents.corpus import Document

    return [Document.from_record(rec) for rec in docs]


ALL_ON = PipelineOptions(noun_predicates=True, enforce_roles=True, require_description=True)


@pytest.fixture(scope="session")
def synth_docs():
    return list(load_corpus(DATA_DIR / "corpus.jsonl"))


@pytest.fixture(scope="session")
def synth_truths():
    return load_ground_truth(DATA_DIR / "ground_truth.jsonl")


@pytest.fixture(scope="session")
def synth_by_event(synth_docs, ontology, repository):
    annotated = annotate_corpus(synth_docs, ontology, repository, ALL_ON)
    groups = group_sentences(annotated, ontology)
    return {g.key: generate_candidates(g) for g in groups}


@pytest.fixture(scope="session")
def ranker_model(synth_docs, synth_truths, ontology, repository):
    """Forest trained on the synthetic corpus annotated without role
    enforcement, so both values of correct_fin_arg appear in training.
    300 trees damp the per-split feature-subsampling variance; the pick
    on the golden pool is then stable across training seeds."""
    from econevents.forest import label_instances, train_forest

    options = PipelineOptions(noun_predicates=True, enforce_roles=False, require_description=True)
    annotated = annotate_corpus(synth_docs, ontology, repository, options)
    groups = group_sentences(annotated, ontology)
    by_event = {g.key: generate_candidates(g) for g in groups}
    instances = label_instances(by_event, synth_truths, ontology)
    return train_forest(instances, n_trees=300, seed=0)
