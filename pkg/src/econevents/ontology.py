"""Hierarchy of financial predicates under increment/decrement event classes.

Nodes form a forest (max depth 5) rooted at the two event classes.  Two
predicates describe the same kind of event when they share an ancestor on
the second level; noun predicates are mapped to their verb counterparts
through a separate noun lexicon.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Mapping, Sequence

logger = logging.getLogger(__name__)

_DATA_DIR = Path(__file__).parent / "data"

INCREMENT = "Increment"
DECREMENT = "Decrement"
EVENT_CLASSES = (INCREMENT, DECREMENT)
MAX_DEPTH = 5

ORIGIN_SEED = "seed"
ORIGIN_HYPERNYM = "hypernym"
ORIGIN_ADJACENT = "adjacent"
ORIGIN_MANUAL = "manual"


class OntologyError(ValueError):
    """Structurally invalid hierarchy, resource, or overlay."""


class UnknownPredicateError(KeyError):
    """A label that is neither a registered predicate nor a mapped noun."""


@dataclass(frozen=True)
class PredicateNode:
    label: str
    event_class: str
    level: int
    parent: str | None
    origin: str


class Ontology:
    def __init__(
        self,
        nodes: Iterable[PredicateNode] = (),
        noun_lexicon: Mapping[str, str] | None = None,
    ) -> None:
        self.nodes: dict[str, PredicateNode] = {}
        for node in nodes:
            if node.label in self.nodes:
                raise OntologyError(f"duplicate label {node.label!r}")
            self.nodes[node.label] = node
        self.noun_lexicon: dict[str, str] = dict(noun_lexicon or {})
        self.validate()

    def __contains__(self, label: str) -> bool:
        return label.lower() in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def node(self, label: str) -> PredicateNode:
        try:
            return self.nodes[label.lower()]
        except KeyError:
            raise UnknownPredicateError(label) from None

    def resolve_label(self, label: str) -> str:
        """Map a verb or noun surface label to its registered verb label."""
        key = label.lower()
        if key in self.nodes:
            return key
        mapped = self.noun_lexicon.get(key)
        if mapped is not None:
            return mapped
        raise UnknownPredicateError(label)

    def second_level_ancestor(self, label: str) -> str:
        """The unique level-2 ancestor; nodes at level <= 2 answer themselves."""
        node = self.node(self.resolve_label(label))
        while node.level > 2:
            node = self.nodes[node.parent]  # type: ignore[index]
        return node.label

    def predicates_equivalent(self, a: str, b: str) -> bool:
        return self.second_level_ancestor(a) == self.second_level_ancestor(b)

    def noun_to_verb(self, noun: str) -> str | None:
        return self.noun_lexicon.get(noun.lower())

    def second_level_labels(self) -> list[str]:
        """All labels usable as event classes (levels 1 and 2)."""
        return sorted(l for l, n in self.nodes.items() if n.level <= 2)

    def validate(self) -> None:
        for label, node in self.nodes.items():
            if node.event_class not in EVENT_CLASSES:
                raise OntologyError(f"{label!r}: bad event class {node.event_class!r}")
            if not 1 <= node.level <= MAX_DEPTH:
                raise OntologyError(f"{label!r}: level {node.level} out of range")
            if node.level == 1:
                if node.parent is not None:
                    raise OntologyError(f"{label!r}: level-1 node cannot have a parent")
                continue
            parent = self.nodes.get(node.parent or "")
            if parent is None:
                raise OntologyError(f"{label!r}: missing parent {node.parent!r}")
            if parent.level + 1 != node.level:
                raise OntologyError(f"{label!r}: level must be parent level + 1")
            if parent.event_class != node.event_class:
                raise OntologyError(f"{label!r}: event class differs from parent")
        for noun, verb in self.noun_lexicon.items():
            if verb not in self.nodes:
                raise OntologyError(f"noun {noun!r} maps to unknown verb {verb!r}")

    def to_records(self) -> list[dict]:
        return [
            {
                "label": n.label,
                "parent": n.parent,
                "event_class": n.event_class,
                "level": n.level,
                "origin": n.origin,
            }
            for n in sorted(self.nodes.values(), key=lambda n: (n.level, n.label))
        ]

    def save(self, path: str | Path) -> None:
        with Path(path).open("w", encoding="utf-8") as fh:
            for rec in self.to_records():
                fh.write(json.dumps(rec) + "\n")

    @classmethod
    def load(
        cls,
        path: str | Path,
        noun_lexicon: Mapping[str, str] | str | Path | None = None,
    ) -> "Ontology":
        nodes = []
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            nodes.append(
                PredicateNode(
                    label=rec["label"],
                    event_class=rec["event_class"],
                    level=int(rec["level"]),
                    parent=rec.get("parent"),
                    origin=rec.get("origin", ORIGIN_MANUAL),
                )
            )
        if isinstance(noun_lexicon, (str, Path)):
            noun_lexicon = load_noun_lexicon(noun_lexicon)
        return cls(nodes, noun_lexicon)


@dataclass(frozen=True)
class LexicalResource:
    """Hypernym (child -> parent) and adjacency edges from a plain edge file."""

    hypernyms: Mapping[str, str]
    adjacency: tuple[tuple[str, str], ...]

    @classmethod
    def load(cls, path: str | Path) -> "LexicalResource":
        hypernyms: dict[str, str] = {}
        adjacency: list[tuple[str, str]] = []
        for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3 or parts[0] not in ("hypernym", "adjacent"):
                raise OntologyError(f"{path}:{lineno}: bad edge line {line!r}")
            kind, a, b = parts[0], parts[1].lower(), parts[2].lower()
            if kind == "hypernym":
                if a in hypernyms and hypernyms[a] != b:
                    raise OntologyError(f"{path}:{lineno}: conflicting hypernym for {a!r}")
                hypernyms[a] = b
            else:
                adjacency.append((a, b))
        return cls(hypernyms, tuple(adjacency))

    def adjacent_terms(self, term: str) -> list[str]:
        out = [b for a, b in self.adjacency if a == term]
        out += [a for a, b in self.adjacency if b == term]
        return out


def build_ontology(
    seeds: Iterable[tuple[str, str]],
    resource: LexicalResource,
    overlay: Sequence[tuple[str, str]] | None = None,
    noun_lexicon: Mapping[str, str] | None = None,
) -> Ontology:
    """Grow the hierarchy from seed verbs via hypernym chains and adjacency.

    Each seed contributes its full hypernym chain (topmost ancestor becomes
    a level-1 node) plus any adjacent terms as siblings.  The overlay is a
    list of (label, new_parent) re-parent directives applied afterwards and
    marked origin "manual".
    """
    nodes: dict[str, PredicateNode] = {}

    def add(label: str, event_class: str, level: int, parent: str | None, origin: str) -> None:
        existing = nodes.get(label)
        if existing is not None:
            if existing.parent != parent or existing.level != level:
                raise OntologyError(
                    f"conflicting placement for {label!r}: "
                    f"({existing.parent}, L{existing.level}) vs ({parent}, L{level})"
                )
            if existing.event_class != event_class:
                logger.warning(
                    "event-class conflict for %r: keeping %s", label, existing.event_class
                )
            if origin == ORIGIN_SEED and existing.origin != ORIGIN_SEED:
                nodes[label] = replace(existing, origin=ORIGIN_SEED)
            return
        nodes[label] = PredicateNode(label, event_class, level, parent, origin)

    for raw_label, event_class in seeds:
        label = raw_label.lower()
        chain = [label]
        seen = {label}
        cur = label
        while cur in resource.hypernyms:
            cur = resource.hypernyms[cur]
            if cur in seen:
                raise OntologyError(f"hypernym cycle through {cur!r}")
            seen.add(cur)
            chain.append(cur)
        if len(chain) > MAX_DEPTH:
            raise OntologyError(f"hypernym chain for {label!r} exceeds depth {MAX_DEPTH}")
        if len(chain) == 1 and not resource.adjacent_terms(label):
            logger.warning("seed %r absent from lexical resource; attached at level 1", label)
        ordered = list(reversed(chain))
        for depth, lab in enumerate(ordered, start=1):
            parent = ordered[depth - 2] if depth > 1 else None
            origin = ORIGIN_SEED if lab == label else ORIGIN_HYPERNYM
            add(lab, event_class, depth, parent, origin)
        seed_parent = resource.hypernyms.get(label)
        if seed_parent is not None:
            for term in resource.adjacent_terms(label):
                add(term, event_class, nodes[label].level, seed_parent, ORIGIN_ADJACENT)
        elif resource.adjacent_terms(label):
            logger.warning("seed %r has adjacent terms but no hypernym; siblings skipped", label)

    for label, new_parent in overlay or ():
        label, new_parent = label.lower(), new_parent.lower()
        if label not in nodes or new_parent not in nodes:
            raise OntologyError(f"overlay references unknown label: {label!r} -> {new_parent!r}")
        parent = nodes[new_parent]
        nodes[label] = replace(
            nodes[label],
            parent=new_parent,
            level=parent.level + 1,
            event_class=parent.event_class,
            origin=ORIGIN_MANUAL,
        )
        _relevel_descendants(nodes, label)

    return Ontology(nodes.values(), noun_lexicon)


def _relevel_descendants(nodes: dict[str, PredicateNode], label: str) -> None:
    for child in [n.label for n in nodes.values() if n.parent == label]:
        nodes[child] = replace(
            nodes[child],
            level=nodes[label].level + 1,
            event_class=nodes[label].event_class,
        )
        if nodes[child].level > MAX_DEPTH:
            raise OntologyError(f"overlay pushes {child!r} beyond depth {MAX_DEPTH}")
        _relevel_descendants(nodes, child)


def export_event_triples(
    ontology: Ontology, subject: str, predicate: str, obj: str, event_id: str
) -> list[tuple[str, str, str]]:
    """The three-triple representation of one event.

    The flow relation is "inflow" for increment-class predicates and
    "outflow" for decrement-class ones.
    """
    label = ontology.resolve_label(predicate)
    node = ontology.nodes[label]
    flow = "inflow" if node.event_class == INCREMENT else "outflow"
    return [
        (subject, "participates", event_id),
        (event_id, "isClassified", label),
        (event_id, flow, obj),
    ]


def load_seeds(path: str | Path) -> list[tuple[str, str]]:
    seeds = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or parts[1] not in EVENT_CLASSES:
            raise OntologyError(f"{path}:{lineno}: bad seed line {line!r}")
        seeds.append((parts[0].lower(), parts[1]))
    return seeds


def load_overlay(path: str | Path) -> list[tuple[str, str]]:
    directives = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] != "reparent":
            raise OntologyError(f"{path}:{lineno}: bad overlay line {line!r}")
        directives.append((parts[1].lower(), parts[2].lower()))
    return directives


def load_noun_lexicon(path: str | Path) -> dict[str, str]:
    lexicon = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise OntologyError(f"{path}:{lineno}: bad noun lexicon line {line!r}")
        lexicon[parts[0].lower()] = parts[1].lower()
    return lexicon


def load_default_ontology() -> Ontology:
    """The shipped ~50-verb hierarchy plus its noun lexicon."""
    return Ontology.load(_DATA_DIR / "ontology.jsonl", _DATA_DIR / "noun_lexicon.tsv")
