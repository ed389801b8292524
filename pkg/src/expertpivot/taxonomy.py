"""SKOS taxonomy loading and the phrase lexicon compiled from its labels.

Reads the concept vocabulary of an RDF/XML SKOS file (the ACM CCS 2012
distribution, or any file using the same skos:Concept / prefLabel /
altLabel / broader elements), validates the broader hierarchy, and builds
the normalized phrase table the matcher is compiled from.
"""

from __future__ import annotations

import io
import logging
import xml.etree.ElementTree as ET
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .textproc import tokenize

__all__ = [
    "Concept",
    "Taxonomy",
    "PhraseLexicon",
    "SkosParseError",
    "SkosValidationError",
    "normalize_label",
    "parse_skos",
    "build_lexicon",
]

log = logging.getLogger(__name__)

_RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
_SKOS = "http://www.w3.org/2004/02/skos/core#"
_CONCEPT_TAG = f"{{{_SKOS}}}Concept"
_PREF_LABEL_TAG = f"{{{_SKOS}}}prefLabel"
_ALT_LABEL_TAG = f"{{{_SKOS}}}altLabel"
_BROADER_TAG = f"{{{_SKOS}}}broader"
_ABOUT_ATTR = f"{{{_RDF}}}about"
_RESOURCE_ATTR = f"{{{_RDF}}}resource"

# Labels and document text share one normalizer; see textproc.tokenize.
normalize_label = tokenize


class SkosParseError(ValueError):
    """Raised for XML the parser cannot read; carries the byte offset."""

    def __init__(self, message: str, byte_offset: int | None = None):
        super().__init__(message)
        self.byte_offset = byte_offset


class SkosValidationError(ValueError):
    """Raised when a well-formed file violates taxonomy invariants."""


@dataclass(frozen=True, slots=True)
class Concept:
    """One taxonomy node."""

    id: str
    pref_label: str
    alt_labels: frozenset[str] = frozenset()
    broader: frozenset[str] = frozenset()

    def labels(self) -> Iterable[str]:
        yield self.pref_label
        yield from sorted(self.alt_labels)


@dataclass(frozen=True, slots=True)
class Taxonomy:
    """Immutable concept map, closed under broader references."""

    concepts: dict[str, Concept]
    source_uri: str = ""

    def __len__(self) -> int:
        return len(self.concepts)

    def __contains__(self, iri: str) -> bool:
        return iri in self.concepts

    def label_count(self) -> int:
        return sum(1 + len(c.alt_labels) for c in self.concepts.values())

    def broader_edge_count(self) -> int:
        return sum(len(c.broader) for c in self.concepts.values())

    def find_cycle(self) -> list[str]:
        """Return concepts on broader cycles, empty when the DAG is clean.

        Kahn's algorithm: whatever a topological sort cannot consume sits
        on or downstream of a cycle.
        """
        indegree = {iri: 0 for iri in self.concepts}
        for concept in self.concepts.values():
            for parent in concept.broader:
                if parent in indegree:
                    indegree[parent] += 1
        queue = deque(iri for iri, deg in indegree.items() if deg == 0)
        seen = 0
        while queue:
            node = queue.popleft()
            seen += 1
            for parent in self.concepts[node].broader:
                if parent in indegree:
                    indegree[parent] -= 1
                    if indegree[parent] == 0:
                        queue.append(parent)
        if seen == len(self.concepts):
            return []
        return sorted(iri for iri, deg in indegree.items() if deg > 0)


def _byte_offset(data: bytes, line: int, column: int) -> int:
    lines = data.split(b"\n")
    return sum(len(l) + 1 for l in lines[: line - 1]) + column


def _element_text(elem: ET.Element) -> str:
    return (elem.text or "").strip()


def parse_skos(data: bytes, *, lenient: bool = False, source_uri: str = "") -> Taxonomy:
    """Parse SKOS RDF/XML bytes into a Taxonomy.

    Strict mode (default) rejects dangling broader targets and broader
    cycles; ``lenient=True`` instead logs dangling edges and prunes them.
    Duplicate concept IRIs and empty preferred labels are always errors.
    """
    concepts: dict[str, Concept] = {}
    depth = 0
    try:
        for event, elem in ET.iterparse(io.BytesIO(data), events=("start", "end")):
            if elem.tag != _CONCEPT_TAG:
                continue
            if event == "start":
                depth += 1
                continue
            depth -= 1
            iri = elem.get(_ABOUT_ATTR, "").strip()
            if not iri:
                raise SkosValidationError("skos:Concept without rdf:about IRI")
            if iri in concepts:
                raise SkosValidationError(f"duplicate concept IRI: {iri}")
            pref = ""
            alts: set[str] = set()
            broader: set[str] = set()
            for child in elem:
                if child.tag == _PREF_LABEL_TAG and not pref:
                    pref = _element_text(child)
                elif child.tag == _ALT_LABEL_TAG:
                    alt = _element_text(child)
                    if alt:
                        alts.add(alt)
                elif child.tag == _BROADER_TAG:
                    target = child.get(_RESOURCE_ATTR, "").strip() or _element_text(child)
                    if target:
                        broader.add(target)
            if not pref:
                raise SkosValidationError(f"concept {iri} has no skos:prefLabel")
            concepts[iri] = Concept(
                id=iri,
                pref_label=pref,
                alt_labels=frozenset(alts - {pref}),
                broader=frozenset(broader),
            )
            if depth == 0:
                elem.clear()
    except ET.ParseError as exc:
        line, column = exc.position
        offset = _byte_offset(data, line, column)
        raise SkosParseError(
            f"malformed XML at byte {offset} (line {line}, column {column}): {exc.msg}",
            byte_offset=offset,
        ) from exc

    if not concepts:
        raise SkosValidationError("no skos:Concept elements found")

    dangling = {
        (iri, target)
        for iri, c in concepts.items()
        for target in c.broader
        if target not in concepts
    }
    if dangling:
        listing = ", ".join(f"{iri} -> {target}" for iri, target in sorted(dangling))
        if not lenient:
            raise SkosValidationError(f"dangling broader edges: {listing}")
        log.warning("pruning %d dangling broader edge(s): %s", len(dangling), listing)
        bad_sources = {iri for iri, _ in dangling}
        for iri in bad_sources:
            c = concepts[iri]
            kept = frozenset(t for t in c.broader if t in concepts)
            concepts[iri] = Concept(c.id, c.pref_label, c.alt_labels, kept)

    taxonomy = Taxonomy(concepts=concepts, source_uri=source_uri)
    cycle = taxonomy.find_cycle()
    if cycle:
        raise SkosValidationError(
            "broader hierarchy contains a cycle through: " + ", ".join(cycle[:10])
        )
    return taxonomy


@dataclass(frozen=True, slots=True)
class PhraseLexicon:
    """Normalized phrase -> concept IRIs, the matcher's pattern table."""

    entries: dict[tuple[str, ...], frozenset[str]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)

    def lookup(self, phrase: tuple[str, ...]) -> frozenset[str]:
        return self.entries.get(phrase, frozenset())


def build_lexicon(
    taxonomy: Taxonomy,
    min_tokens: int = 1,
    stoplist: Iterable[str] = (),
    *,
    include_alt_labels: bool = True,
) -> PhraseLexicon:
    """Compile every usable label of ``taxonomy`` into a phrase table.

    Labels normalizing to fewer than ``min_tokens`` tokens or to a stoplist
    phrase are skipped. Identical normalized labels from different concepts
    merge into one entry holding the union of their IRIs.
    """
    if min_tokens < 1:
        raise ValueError("min_tokens must be >= 1")
    stop = {tuple(normalize_label(s)) for s in stoplist}
    entries: dict[tuple[str, ...], set[str]] = {}
    for concept in taxonomy.concepts.values():
        labels = concept.labels() if include_alt_labels else [concept.pref_label]
        for label in labels:
            key = tuple(normalize_label(label))
            if len(key) < min_tokens or key in stop or not key:
                continue
            entries.setdefault(key, set()).add(concept.id)
    return PhraseLexicon(entries={k: frozenset(v) for k, v in entries.items()})
