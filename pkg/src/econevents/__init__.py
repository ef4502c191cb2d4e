"""Economic event extraction pipeline and curated knowledge-base tooling.

The package turns a line-delimited news corpus into structured event
quintuples (subject, predicate, object, monetary value, date), resolves
conflicting reportings of the same event with baseline and learned
selectors, and serves ranked candidates with provenance for curation.
"""

__version__ = "0.1.0"

from .corpus import Document, Sentence, load_corpus, segment_sentences
from .ontology import Ontology, build_ontology, load_default_ontology
from .entities import EntityRepository, merge_records
from .events import CandidateQuintuple, EventKey, generate_candidates, group_sentences
from .annotate import AnnotatedSentence, PipelineOptions, annotate_corpus

__all__ = [
    "AnnotatedSentence",
    "CandidateQuintuple",
    "Document",
    "EntityRepository",
    "EventKey",
    "Ontology",
    "PipelineOptions",
    "Sentence",
    "annotate_corpus",
    "build_ontology",
    "generate_candidates",
    "group_sentences",
    "load_corpus",
    "load_default_ontology",
    "merge_records",
    "segment_sentences",
]
