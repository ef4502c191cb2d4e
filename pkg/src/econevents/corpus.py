"""News corpus loading and rule-based sentence segmentation."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from datetime import date
from pathlib import Path
from typing import Iterator

logger = logging.getLogger(__name__)

_DATA_DIR = Path(__file__).parent / "data"


def _read_data_lines(name: str) -> list[str]:
    out = []
    for line in (_DATA_DIR / name).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


#: Tokens that end with a period without ending the sentence.
ABBREVIATIONS = frozenset(a.lower() for a in _read_data_lines("abbreviations.txt"))

_TERMINATORS = ".!?"
_CLOSERS = "\"'”’)]"
_OPENERS = "\"'“‘(["


@dataclass(frozen=True)
class Document:
    """One news article plus the metadata used downstream as features."""

    doc_id: str
    publication_date: date
    title: str
    body: str
    descriptors: tuple[str, ...] = ()
    word_count: int | None = None

    def __post_init__(self) -> None:
        # word_count falls back to whitespace tokenization of the body
        if self.word_count is None:
            object.__setattr__(self, "word_count", len(self.body.split()))

    @classmethod
    def from_record(cls, rec: dict) -> "Document":
        wc = rec.get("word_count")
        return cls(
            doc_id=str(rec["id"]),
            publication_date=date.fromisoformat(rec["published"]),
            title=rec.get("title", ""),
            body=rec["body"],
            descriptors=tuple(rec.get("descriptors") or ()),
            word_count=int(wc) if wc is not None else None,
        )

    def to_record(self) -> dict:
        return {
            "id": self.doc_id,
            "published": self.publication_date.isoformat(),
            "title": self.title,
            "body": self.body,
            "descriptors": list(self.descriptors),
            "word_count": self.word_count,
        }


@dataclass(frozen=True)
class Sentence:
    sentence_id: str
    doc_id: str
    order_index: int
    text: str
    char_span: tuple[int, int]


def load_corpus(path: str | Path) -> Iterator[Document]:
    """Yield documents from a line-delimited corpus file, in file order.

    Malformed records (bad JSON, missing id/published/body) are skipped
    with a logged diagnostic naming the line number.  An unreadable file
    raises the underlying OSError.
    """
    path = Path(path)
    fh = path.open(encoding="utf-8")

    def _iter() -> Iterator[Document]:
        with fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    yield Document.from_record(json.loads(line))
                except (KeyError, TypeError, ValueError) as exc:
                    logger.warning(
                        "%s:%d: skipping malformed record (%s)", path.name, lineno, exc
                    )

    return _iter()


def segment_sentences(doc: Document) -> list[Sentence]:
    """Split a document body into ordered sentences with exact char spans."""
    return [
        Sentence(
            sentence_id=f"{doc.doc_id}:{i}",
            doc_id=doc.doc_id,
            order_index=i,
            text=doc.body[s:e],
            char_span=(s, e),
        )
        for i, (s, e) in enumerate(_sentence_spans(doc.body))
    ]


def _skip_ws(text: str, i: int) -> int:
    n = len(text)
    while i < n and text[i].isspace():
        i += 1
    return i


def _rstrip_index(text: str, i: int) -> int:
    while i > 0 and text[i - 1].isspace():
        i -= 1
    return i


def _token_ending_at(text: str, i: int) -> str:
    j = i
    while j > 0 and not text[j - 1].isspace():
        j -= 1
    return text[j : i + 1]


def _is_initial(token: str) -> bool:
    return len(token) == 2 and token[0].isalpha() and token[0].isupper() and token[1] == "."


def _opens_sentence(ch: str) -> bool:
    return ch.isupper() or ch.isdigit() or ch in _OPENERS


def _sentence_spans(body: str) -> list[tuple[int, int]]:
    """Boundaries at [.?!]+ whitespace + capital/quote/digit, abbreviation-aware.

    Every non-whitespace character of the body ends up in exactly one span.
    """
    spans: list[tuple[int, int]] = []
    n = len(body)
    start = _skip_ws(body, 0)
    i = start
    while i < n:
        ch = body[i]
        if ch in _TERMINATORS:
            run_end = i
            while run_end + 1 < n and body[run_end + 1] in _TERMINATORS:
                run_end += 1
            if ch == "." and run_end == i:
                token = _token_ending_at(body, i)
                if token.lower() in ABBREVIATIONS or _is_initial(token):
                    i += 1
                    continue
            end = run_end
            while end + 1 < n and body[end + 1] in _CLOSERS:
                end += 1
            nxt = _skip_ws(body, end + 1)
            if nxt >= n:
                spans.append((start, end + 1))
                return spans
            if nxt > end + 1 and _opens_sentence(body[nxt]):
                spans.append((start, end + 1))
                start = nxt
                i = nxt
                continue
            i = end + 1
            continue
        if ch == "\n":
            nxt = _skip_ws(body, i)
            # a blank line is a hard boundary even without terminal punctuation
            if body.count("\n", i, nxt) >= 2 and nxt < n:
                stop = _rstrip_index(body, i)
                if stop > start:
                    spans.append((start, stop))
                start = nxt
                i = nxt
                continue
            i = nxt if nxt > i else i + 1
            continue
        i += 1
    if start < n:
        stop = _rstrip_index(body, n)
        if stop > start:
            spans.append((start, stop))
    return spans
