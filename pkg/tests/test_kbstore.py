"""Curated store: ranking, decisions, journal replay, concurrency."""

import threading
from decimal import Decimal

import pytest

from econevents.events import EventKey
from econevents.kbstore import (
    ACTION_ACCEPT,
    ACTION_REJECT,
    STATUS_ACCEPTED,
    STATUS_PENDING,
    STATUS_REJECTED,
    DecisionConflictError,
    KBStore,
    ProvenanceSourceError,
    RecordNotFoundError,
)

from conftest import make_candidate

ORACLE_KEY = EventKey("oracle", "buy", "peoplesoft")


@pytest.fixture
def store(oracle_pool, tmp_path):
    return KBStore.from_candidates(
        {ORACLE_KEY: oracle_pool}, journal_path=tmp_path / "journal.jsonl"
    )


def test_list_candidates_count_and_order(store, ranker_model, oracle_pool):
    records = store.list_candidates(ORACLE_KEY)
    assert len(records) == 8
    confs = [r.confidence for r in records]
    assert confs == sorted(confs, reverse=True)


def test_list_candidates_unknown_event(store):
    with pytest.raises(RecordNotFoundError):
        store.list_candidates(EventKey("nobody", "buy", "nothing"))


def test_list_candidates_stable_across_calls(store):
    a = [r.record_id for r in store.list_candidates(ORACLE_KEY)]
    b = [r.record_id for r in store.list_candidates(ORACLE_KEY)]
    assert a == b


def test_baseline_badges_without_model(store):
    records = {r.record_id: r for r in store.list_candidates(ORACLE_KEY)}
    badges = {m for r in records.values() for m in r.methods}
    assert badges == {"earliest", "latest", "frequent"}
    flagged = [r for r in records.values() if r.methods]
    assert all(r.confidence == 1.0 for r in flagged)


def test_supervised_store_confidences(oracle_pool, ranker_model, tmp_path):
    store = KBStore.from_candidates(
        {ORACLE_KEY: oracle_pool}, model=ranker_model, gamma=0.3,
        journal_path=tmp_path / "j.jsonl",
    )
    records = store.list_candidates(ORACLE_KEY)
    top = records[0]
    assert "supervised" in top.methods
    assert top.candidate.value.amount == Decimal("10300000000")
    assert 0.0 <= top.confidence <= 1.0


def test_query_objects(store):
    objects = store.query_objects("oracle", "buy")
    assert [o for o, _ in objects] == ["peoplesoft"]
    assert store.query_objects("unknown", "buy") == []


def test_query_objects_on_youtube_pipeline(youtube_docs, ontology, repository):
    from econevents.annotate import PipelineOptions, annotate_corpus
    from econevents.events import generate_candidates, group_sentences

    annotated = annotate_corpus(youtube_docs, ontology, repository, PipelineOptions())
    groups = group_sentences(annotated, ontology)
    by_event = {g.key: generate_candidates(g) for g in groups}
    store = KBStore.from_candidates(by_event)
    assert [o for o, _ in store.query_objects("google", "buy")] == ["youtube"]


def test_query_objects_ordering(oracle_pool, tmp_path):
    other = [
        make_candidate(amount="5", year=2004, published="2004-02-02", doc_id="zz",
                       object_id="zetacorp", fin_arg=False)
    ]
    store = KBStore.from_candidates(
        {ORACLE_KEY: oracle_pool, EventKey("oracle", "buy", "zetacorp"): other}
    )
    objects = store.query_objects("oracle", "buy")
    assert len(objects) == 2
    assert objects[0][1] >= objects[1][1]


def test_accept_rejects_siblings(store):
    target = store.list_candidates(ORACLE_KEY)[0]
    updated = store.decide(target.record_id, ACTION_ACCEPT, "editor")
    assert updated.status == STATUS_ACCEPTED
    assert updated.decided_by == "editor"
    others = [r for r in store.list_candidates(ORACLE_KEY) if r.record_id != target.record_id]
    assert all(r.status == STATUS_REJECTED for r in others)


def test_double_decide_conflicts(store):
    target = store.list_candidates(ORACLE_KEY)[0]
    store.decide(target.record_id, ACTION_ACCEPT, "editor")
    with pytest.raises(DecisionConflictError):
        store.decide(target.record_id, ACTION_ACCEPT, "editor")


def test_reject_leaves_siblings_pending(store):
    records = store.list_candidates(ORACLE_KEY)
    store.decide(records[-1].record_id, ACTION_REJECT, "editor")
    remaining = store.list_candidates(ORACLE_KEY)
    assert sum(1 for r in remaining if r.status == STATUS_PENDING) == len(records) - 1


def test_unknown_record(store):
    with pytest.raises(RecordNotFoundError):
        store.decide("missing@0", ACTION_ACCEPT, "editor")


def test_journal_replay_reproduces_state(oracle_pool, tmp_path):
    journal = tmp_path / "journal.jsonl"
    store = KBStore.from_candidates({ORACLE_KEY: oracle_pool}, journal_path=journal)
    records = store.list_candidates(ORACLE_KEY)
    store.decide(records[3].record_id, ACTION_REJECT, "ana")
    store.decide(records[0].record_id, ACTION_ACCEPT, "ben")
    # crash: rebuild from pristine candidates plus the journal only
    rebuilt = KBStore.from_candidates({ORACLE_KEY: oracle_pool})
    rebuilt.replay_journal(journal)
    assert rebuilt.state_fingerprint() == store.state_fingerprint()


def test_journal_replay_after_partial_write(oracle_pool, tmp_path):
    journal = tmp_path / "journal.jsonl"
    store = KBStore.from_candidates({ORACLE_KEY: oracle_pool}, journal_path=journal)
    records = store.list_candidates(ORACLE_KEY)
    store.decide(records[1].record_id, ACTION_ACCEPT, "ana")
    # a torn trailing line must not break replay of the valid prefix
    with journal.open("a", encoding="utf-8") as fh:
        fh.write('{"record_id": "truncated')
    rebuilt = KBStore.from_candidates({ORACLE_KEY: oracle_pool})
    with pytest.raises(Exception):
        rebuilt.replay_journal(journal)


def test_snapshot_round_trip(store, tmp_path):
    records = store.list_candidates(ORACLE_KEY)
    store.decide(records[0].record_id, ACTION_ACCEPT, "ana")
    snap = tmp_path / "snapshot.jsonl"
    store.snapshot(snap)
    loaded = KBStore.from_snapshot(snap)
    assert loaded.state_fingerprint() == store.state_fingerprint()


def test_concurrent_accepts_single_winner(oracle_pool, tmp_path):
    store = KBStore.from_candidates(
        {ORACLE_KEY: oracle_pool}, journal_path=tmp_path / "j.jsonl"
    )
    ids = [r.record_id for r in store.list_candidates(ORACLE_KEY)]
    outcomes = []

    def worker(record_id):
        try:
            store.decide(record_id, ACTION_ACCEPT, "racer")
            outcomes.append(("ok", record_id))
        except DecisionConflictError:
            outcomes.append(("conflict", record_id))

    threads = [threading.Thread(target=worker, args=(rid,)) for rid in ids]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    accepted = [r for r in store.list_candidates(ORACLE_KEY) if r.status == STATUS_ACCEPTED]
    assert len(accepted) == 1
    assert sum(1 for kind, _ in outcomes if kind == "ok") == 1
    assert sum(1 for kind, _ in outcomes if kind == "conflict") == len(ids) - 1


def test_get_provenance_lists_event_sentences_chronologically(store, oracle_pool):
    target = store.list_candidates(ORACLE_KEY)[0]
    items = store.get_provenance(target.record_id)
    # eight candidates over seven distinct sentences (one two-value sentence)
    assert len(items) == 7
    published = [i["published"] for i in items]
    assert published == sorted(published)
    own = next(i for i in items if i["sentence_id"] == target.candidate.sentence_id)
    assert own["text"] == target.candidate.provenance.text
    assert own["value_span"] == list(target.candidate.value.char_span)


def test_get_provenance_singleton_event(tmp_path):
    key = EventKey("acme", "buy", "zeta")
    single = [make_candidate(subject="acme", object_id="zeta", amount="5000000",
                             year=2004, published="2004-02-02", doc_id="solo")]
    store = KBStore.from_candidates({key: single})
    target = store.list_candidates(key)[0]
    assert len(store.get_provenance(target.record_id)) == 1


def test_provenance_sentence_ids_cover_event(store):
    target = store.list_candidates(ORACLE_KEY)[0]
    ids = store.provenance_sentence_ids(target.record_id)
    assert len(ids) == 7
    assert target.candidate.sentence_id in ids


def test_get_provenance_missing_corpus_errors(oracle_pool, tmp_path):
    corpus = tmp_path / "corpus.jsonl"
    corpus.write_text("")
    store = KBStore.from_candidates({ORACLE_KEY: oracle_pool}, corpus_path=corpus)
    target = store.list_candidates(ORACLE_KEY)[0]
    assert store.get_provenance(target.record_id)  # readable corpus: fine
    corpus.unlink()
    with pytest.raises(ProvenanceSourceError):
        store.get_provenance(target.record_id)
    # the record is untouched by the failure
    assert store.get(target.record_id).status == STATUS_PENDING


def test_chosen_record_provenance(oracle_pool, ranker_model):
    store = KBStore.from_candidates({ORACLE_KEY: oracle_pool}, model=ranker_model)
    top = store.list_candidates(ORACLE_KEY)[0]
    items = store.get_provenance(top.record_id)
    own = next(i for i in items if i["sentence_id"] == top.candidate.sentence_id)
    assert own["published"] == "2007-03-01"
    assert "Oracle" in own["text"]


def test_youtube_event_provenance_three_sentences(youtube_docs, ontology, repository):
    from econevents.annotate import PipelineOptions, annotate_corpus
    from econevents.events import generate_candidates, group_sentences

    annotated = annotate_corpus(youtube_docs, ontology, repository, PipelineOptions())
    groups = group_sentences(annotated, ontology)
    by_event = {g.key: generate_candidates(g) for g in groups}
    store = KBStore.from_candidates(by_event)
    record = store.list_candidates(EventKey("google", "buy", "youtube"))[0]
    items = store.get_provenance(record.record_id)
    assert [i["published"] for i in items] == ["2006-10-11", "2007-02-08", "2007-04-05"]
