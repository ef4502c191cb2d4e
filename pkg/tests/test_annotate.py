"""Predicate/entity recognition, role assignment, and pipeline exclusions."""

from datetime import date

import pytest

from econevents.annotate import (
    PipelineOptions,
    PredicateLexicon,
    annotate_corpus,
    annotate_sentence,
    corpus_predicate_frequencies,
    recognize_entities,
    recognize_predicates,
    relative_predicate_frequencies,
)
from econevents.corpus import Document, segment_sentences
from econevents.entities import RawEntry, merge_records


@pytest.fixture(scope="module")
def lexicon(ontology):
    return PredicateLexicon(ontology)


def test_verb_predicate_past_tense(ontology, lexicon):
    mentions = recognize_predicates("Google bought YouTube", ontology, lexicon=lexicon)
    assert len(mentions) == 1
    m = mentions[0]
    assert (m.label, m.is_noun, m.tense) == ("buy", False, "past")


def test_noun_predicate_flag_on(ontology, lexicon):
    text = "The acquisition of PeopleSoft stunned analysts."
    on = recognize_predicates(text, ontology, allow_noun_predicates=True, lexicon=lexicon)
    assert [(m.label, m.is_noun) for m in on] == [("acquire", True)]
    off = recognize_predicates(text, ontology, allow_noun_predicates=False, lexicon=lexicon)
    assert off == []


def test_noun_flag_off_is_subset(ontology, lexicon):
    text = "Oracle's acquisition of PeopleSoft let it collect new customers."
    on = recognize_predicates(text, ontology, True, lexicon)
    off = recognize_predicates(text, ontology, False, lexicon)
    assert set(off) <= set(on)


def test_future_tense_aux(ontology, lexicon):
    m = recognize_predicates("Google will buy YouTube", ontology, lexicon=lexicon)[0]
    assert m.tense == "future"


def test_determiner_demotes_verb_reading(ontology, lexicon):
    text = "The purchase closed quietly."
    off = recognize_predicates(text, ontology, False, lexicon)
    assert off == []
    on = recognize_predicates(text, ontology, True, lexicon)
    assert [(m.label, m.is_noun) for m in on] == [("purchase", True)]


def test_hyphenated_label_matches_prehyphen_surface(ontology, lexicon):
    m = recognize_predicates("The unit profited from the shift", ontology, lexicon=lexicon)[0]
    assert m.label == "profit-gross"


def test_recognize_entities_youtube_report(repository):
    text = "Before Google agreed to buy YouTube for $1.65 billion in stock, it paid $1 billion for 5% of AOL."
    mentions = recognize_entities(text, repository)
    ids = [m.entity_id for m in mentions]
    assert ids == ["google", "youtube"]  # AOL is deliberately absent from the fixture


def test_longest_match_wins(repository):
    mentions = recognize_entities("Skype Technologies was praised.", repository)
    assert len(mentions) == 1
    s, e = mentions[0].char_span
    assert (s, e) == (0, len("Skype Technologies"))


def test_longest_match_brute_force_oracle(repository):
    text = "Analysts said Skype Technologies and Google both grew."
    mentions = recognize_entities(text, repository)
    # oracle: every matching sub-span, longest first, greedy non-overlap
    words = []
    import re

    for m in re.finditer(r"[A-Za-z][A-Za-z.&'-]*", text):
        words.append((m.start(), m.end(), m.group()))
    spans = []
    for i in range(len(words)):
        for j in range(i, len(words)):
            span_text = text[words[i][0] : words[j][1]]
            if repository.resolve_mention(span_text):
                spans.append((words[i][0], words[j][1]))
    spans.sort(key=lambda s: (-(s[1] - s[0]), s[0]))
    chosen = []
    for s, e in spans:
        if all(e <= cs or s >= ce for cs, ce in chosen):
            chosen.append((s, e))
    assert sorted(m.char_span for m in mentions) == sorted(chosen)


def test_no_capitalized_spans(repository):
    assert recognize_entities("the market closed flat on monday.", repository) == []


def test_possessive_mention(repository):
    mentions = recognize_entities("Oracle's bid shocked PeopleSoft.", repository)
    assert [m.entity_id for m in mentions] == ["oracle", "peoplesoft"]


def _annotate_one(text, published, ontology, repository, **opts):
    doc = Document("d1", published, "t", text, ("Business",))
    sentences = segment_sentences(doc)
    assert len(sentences) == 1
    return annotate_sentence(
        sentences[0], doc, ontology, repository, PipelineOptions(**opts)
    )


def test_active_voice_roles(ontology, repository):
    results = _annotate_one(
        "Google bought YouTube in October for $1.65 billion.",
        date(2007, 2, 8), ontology, repository,
    )
    assert len(results) == 1
    a = results[0]
    assert a.subject.entity_id == "google"
    assert a.object.entity_id == "youtube"
    assert a.value_in_correct_arg
    assert a.date_in_correct_arg
    assert a.dates[0].date == date(2006, 10, 1)


def test_passive_voice_swaps_roles(ontology, repository):
    results = _annotate_one(
        "YouTube was purchased by Google in November for $1.6 billion.",
        date(2007, 4, 5), ontology, repository,
    )
    assert len(results) == 1
    a = results[0]
    assert a.subject.entity_id == "google"
    assert a.object.entity_id == "youtube"


def test_single_entity_sentence_excluded(ontology, repository):
    results = _annotate_one(
        "Google reported revenue of $10 billion.", date(2007, 2, 8), ontology, repository
    )
    assert results == []


def test_no_value_sentence_excluded(ontology, repository):
    results = _annotate_one(
        "Google bought YouTube quietly.", date(2007, 2, 8), ontology, repository
    )
    assert results == []


def test_enforce_roles_rejects_value_outside_argument(ontology, repository):
    text = "A deal worth $9 billion could see Google buy YouTube, people said."
    kept = _annotate_one(text, date(2006, 1, 5), ontology, repository)
    assert len(kept) == 1 and not kept[0].value_in_correct_arg
    enforced = _annotate_one(
        text, date(2006, 1, 5), ontology, repository, enforce_roles=True
    )
    assert enforced == []


def test_exclusion_monotonicity_on_synth_corpus(synth_docs, ontology, repository):
    base = PipelineOptions(noun_predicates=True, enforce_roles=False, require_description=False)
    baseline = annotate_corpus(synth_docs, ontology, repository, base)
    keys = {(a.sentence_id, a.predicate.char_span) for a in baseline}
    for tightened in (
        PipelineOptions(noun_predicates=False, enforce_roles=False, require_description=False),
        PipelineOptions(noun_predicates=True, enforce_roles=True, require_description=False),
        PipelineOptions(noun_predicates=True, enforce_roles=False, require_description=True),
    ):
        subset = annotate_corpus(synth_docs, ontology, repository, tightened)
        sub_keys = {(a.sentence_id, a.predicate.char_span) for a in subset}
        assert sub_keys <= keys


def test_require_description_drops_undescribed_entities(ontology):
    repo = merge_records(
        [
            RawEntry("Alpha Fund", ("crunchbase:org/alpha",), False, 9.0),
            RawEntry("Beta Bank", ("dbpedia:Beta_Bank",), True, 8.0),
        ]
    )
    text = "Beta Bank paid $5 million for Alpha Fund."
    doc = Document("d1", date(2007, 1, 1), "t", text)
    sent = segment_sentences(doc)[0]
    loose = annotate_sentence(sent, doc, ontology, repo, PipelineOptions())
    assert len(loose) == 1
    strict = annotate_sentence(
        sent, doc, ontology, repo, PipelineOptions(require_description=True)
    )
    assert strict == []


def test_multiple_predicates_yield_multiple_annotations(ontology, repository):
    text = "Google bought YouTube for $1.65 billion and sold Skype for $2 billion."
    results = _annotate_one(text, date(2007, 2, 8), ontology, repository)
    labels = sorted(a.predicate.label for a in results)
    assert labels == ["buy", "sell"]


def test_annotation_spans_within_sentence(ontology, repository):
    results = _annotate_one(
        "Google bought YouTube in October for $1.65 billion.",
        date(2007, 2, 8), ontology, repository,
    )
    a = results[0]
    n = len(a.text)
    spans = [a.predicate.char_span, a.subject.char_span, a.object.char_span]
    spans += [v.char_span for v in a.values]
    spans += [d.char_span for d in a.dates if d.char_span]
    for s, e in spans:
        assert 0 <= s < e <= n


def test_corpus_predicate_frequencies(ontology, repository):
    docs = [
        Document("a", date(2007, 1, 1), "t", "Acme will buy Zeta. Acme bought Beta."),
        Document("b", date(2007, 1, 2), "t", "The acquisition of Beta closed."),
    ]
    counts = corpus_predicate_frequencies(docs, ontology)
    assert counts["buy"] == 2
    assert counts["acquire"] == 1
    rel = relative_predicate_frequencies(counts)
    assert abs(sum(rel.values()) - 1.0) < 1e-9
    assert rel["buy"] == pytest.approx(2 / 3)
