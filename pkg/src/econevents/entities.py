"""Entity repository: surface-form expansion, merging, and mention resolution.

Entities carry URIs from several knowledge bases; textual mentions resolve
to the most prominent matching record ("most common sense" proxy).
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

logger = logging.getLogger(__name__)

_DATA_DIR = Path(__file__).parent / "data"

URI_NAMESPACES = ("dbpedia", "freebase", "crunchbase")

ARTICLES = frozenset({"the", "a", "an"})


def _load_suffixes() -> frozenset[str]:
    out = set()
    for line in (_DATA_DIR / "legal_suffixes.txt").read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.add(line.lower())
    return frozenset(out)


LEGAL_SUFFIXES = _load_suffixes()

_PUNCT_RE = re.compile(r"[^\w\s]")
_WS_RE = re.compile(r"\s+")


def normalize_surface(text: str) -> str:
    """Case-fold, strip punctuation, collapse whitespace."""
    return _WS_RE.sub(" ", _PUNCT_RE.sub("", text.casefold())).strip()


def _strip_leading_article(name: str) -> str | None:
    head, _, rest = name.partition(" ")
    if head.lower() in ARTICLES and rest.strip():
        return rest.strip()
    return None


def _strip_legal_suffix(name: str) -> str | None:
    tokens = name.split()
    if len(tokens) >= 2 and tokens[-1].strip(".,").lower() in LEGAL_SUFFIXES:
        return " ".join(tokens[:-1]).rstrip(" ,.")
    return None


def _initialism(name: str) -> str | None:
    caps = [t[0] for t in name.split() if t[0].isupper() and t.lower() not in ARTICLES]
    if len(caps) >= 2:
        return "".join(caps).upper()
    return None


def expand_surface_forms(canonical_name: str) -> set[str]:
    """Name variants: suffix-stripped, article-stripped, and initialisms.

    Always a superset of {canonical_name}; stripping rules are applied
    repeatedly so "The Acme Holdings Inc." also yields "Acme".
    """
    name = canonical_name.strip()
    forms = {name}
    frontier = [name]
    while frontier:
        current = frontier.pop()
        for variant in (_strip_leading_article(current), _strip_legal_suffix(current)):
            if variant and variant not in forms:
                forms.add(variant)
                frontier.append(variant)
    for variant in list(forms):
        if len(variant.split()) >= 2:
            ini = _initialism(variant)
            if ini:
                forms.add(ini)
    return forms


@dataclass(frozen=True)
class RawEntry:
    name: str
    uris: tuple[str, ...]
    has_description: bool
    prominence: float


@dataclass(frozen=True)
class EntityRecord:
    entity_id: str
    canonical_name: str
    surface_forms: tuple[str, ...]
    uris: tuple[str, ...]
    has_description: bool
    prominence: float

    def has_uri_namespace(self, namespace: str) -> bool:
        return any(u.startswith(namespace + ":") for u in self.uris)

    def uri_namespaces(self) -> tuple[str, ...]:
        return tuple(ns for ns in URI_NAMESPACES if self.has_uri_namespace(ns))

    def to_record(self) -> dict:
        return {
            "entity_id": self.entity_id,
            "canonical_name": self.canonical_name,
            "surface_forms": list(self.surface_forms),
            "uris": list(self.uris),
            "has_description": self.has_description,
            "prominence": self.prominence,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "EntityRecord":
        return cls(
            entity_id=rec["entity_id"],
            canonical_name=rec["canonical_name"],
            surface_forms=tuple(rec["surface_forms"]),
            uris=tuple(rec["uris"]),
            has_description=bool(rec["has_description"]),
            prominence=float(rec["prominence"]),
        )


class EntityRepository:
    """Immutable id -> record map with a ranked normalized surface index."""

    def __init__(self, records: Iterable[EntityRecord]) -> None:
        self.records: dict[str, EntityRecord] = {}
        for rec in sorted(records, key=lambda r: r.entity_id):
            if rec.entity_id in self.records:
                raise ValueError(f"duplicate entity id {rec.entity_id!r}")
            self.records[rec.entity_id] = rec
        index: dict[str, list[str]] = {}
        for rec in self.records.values():
            for form in rec.surface_forms:
                key = normalize_surface(form)
                if key:
                    index.setdefault(key, []).append(rec.entity_id)
        self.surface_index: dict[str, tuple[str, ...]] = {
            key: tuple(
                sorted(set(ids), key=lambda i: (-self.records[i].prominence, i))
            )
            for key, ids in index.items()
        }

    def __len__(self) -> int:
        return len(self.records)

    def get(self, entity_id: str) -> EntityRecord | None:
        return self.records.get(entity_id)

    def resolve_mention(
        self, span_text: str, require_description: bool = False
    ) -> EntityRecord | None:
        """Top-ranked record for a normalized surface form, if any."""
        ids = self.surface_index.get(normalize_surface(span_text), ())
        for entity_id in ids:
            rec = self.records[entity_id]
            if require_description and not rec.has_description:
                continue
            return rec
        return None

    def search(self, query: str, limit: int = 20) -> list[EntityRecord]:
        """Prefix match over normalized surface forms, best-ranked first."""
        prefix = normalize_surface(query)
        if not prefix:
            return []
        hits: dict[str, EntityRecord] = {}
        for key in sorted(self.surface_index):
            if key.startswith(prefix):
                for entity_id in self.surface_index[key]:
                    hits.setdefault(entity_id, self.records[entity_id])
        ranked = sorted(hits.values(), key=lambda r: (-r.prominence, r.entity_id))
        return ranked[:limit]

    def save(self, path: str | Path) -> None:
        with Path(path).open("w", encoding="utf-8") as fh:
            for rec in self.records.values():
                fh.write(json.dumps(rec.to_record(), ensure_ascii=False) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "EntityRepository":
        records = []
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if line:
                records.append(EntityRecord.from_record(json.loads(line)))
        return cls(records)


def load_source_entries(path: str | Path) -> list[RawEntry]:
    entries = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        rec = json.loads(line)
        uris = tuple(rec.get("uris") or ())
        if not uris:
            logger.warning("%s:%d: entry %r has no URIs; skipped", path, lineno, rec.get("name"))
            continue
        entries.append(
            RawEntry(
                name=rec["name"],
                uris=uris,
                has_description=bool(rec.get("has_description", False)),
                prominence=float(rec.get("prominence", 0.0)),
            )
        )
    return entries


def merge_records(raw_entries: Iterable[RawEntry]) -> EntityRepository:
    """Merge entries whose expanded surface forms overlap on a normalized form.

    Merged records take the union of URIs and surface forms, the maximum
    prominence, and the OR of has_description.  Ids derive from the chosen
    canonical form, so the result is independent of input order.
    """
    entries = list(raw_entries)
    expanded = [expand_surface_forms(e.name) for e in entries]

    parent = list(range(len(entries)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    key_owner: dict[str, int] = {}
    for i, forms in enumerate(expanded):
        for form in forms:
            key = normalize_surface(form)
            if not key:
                continue
            if key in key_owner:
                union(i, key_owner[key])
            else:
                key_owner[key] = i

    groups: dict[int, list[int]] = {}
    for i in range(len(entries)):
        groups.setdefault(find(i), []).append(i)

    records = []
    for idxs in groups.values():
        members = [entries[i] for i in idxs]
        canonical = min(members, key=lambda e: (-e.prominence, len(e.name), e.name)).name
        entity_id = normalize_surface(canonical).replace(" ", "_")
        records.append(
            EntityRecord(
                entity_id=entity_id,
                canonical_name=canonical,
                surface_forms=tuple(sorted({f for i in idxs for f in expanded[i]})),
                uris=tuple(sorted({u for m in members for u in m.uris})),
                has_description=any(m.has_description for m in members),
                prominence=max(m.prominence for m in members),
            )
        )
    return EntityRepository(records)


def load_default_repository() -> EntityRepository:
    """Repository built from the shipped source entries."""
    return merge_records(load_source_entries(_DATA_DIR / "entities_source.jsonl"))
