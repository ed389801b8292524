"""RDF triples linking documents to taxonomy concepts, with N-Triples
persistence and a small SPARQL SELECT evaluator.

The graph keeps one mentionsConcept edge per corpus side; the three-way
page / concept / expert-page link is recovered by joining those edges on
the concept at query time, so the store never materializes page-expert
pairs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple
from urllib.parse import quote

from .ingest import Document
from .matcher import Annotation
from .taxonomy import Taxonomy

__all__ = [
    "Iri",
    "Literal",
    "Triple",
    "Dataset",
    "Var",
    "TriplePattern",
    "Query",
    "StoreError",
    "NTriplesParseError",
    "SparqlError",
    "UnsupportedSparqlFeature",
    "Vocab",
    "BASE_IRI",
    "SKOS_PREF_LABEL",
    "build_graph",
    "serialize_ntriples",
    "parse_ntriples",
    "parse_sparql",
    "evaluate",
    "result_vars",
    "experts_query",
    "escape_literal_text",
]

BASE_IRI = "http://purl.example/expert-pivot#"
SKOS_PREF_LABEL = "http://www.w3.org/2004/02/skos/core#prefLabel"

_ABSOLUTE_IRI_RE = re.compile(r'^[A-Za-z][A-Za-z0-9+.\-]*:[^<>"{}|^`\\\s]*$')


class StoreError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Iri:
    """An absolute IRI term."""

    value: str

    def __post_init__(self):
        if not _ABSOLUTE_IRI_RE.match(self.value):
            raise StoreError(f"not an absolute IRI: {self.value!r}")

    def __repr__(self) -> str:
        return f"<{self.value}>"


@dataclass(frozen=True, slots=True)
class Literal:
    """A plain string literal term (no language tag, no datatype)."""

    value: str

    def __repr__(self) -> str:
        return f'"{self.value}"'


Term = Iri | Literal


def term_sort_key(term: Term) -> tuple[int, str]:
    return (0 if isinstance(term, Iri) else 1, term.value)


class Triple(NamedTuple):
    subject: Iri
    predicate: Iri
    object: Term


def _triple_sort_key(t: Triple) -> tuple:
    return (term_sort_key(t.subject), term_sort_key(t.predicate), term_sort_key(t.object))


class Dataset:
    """A frozen triple set with three access-path indexes.

    Indexes cover lookups by subject, by predicate+object, and by object;
    everything else falls back to a full scan. All match results come back
    in one global deterministic order.
    """

    __slots__ = ("_triples", "_sorted", "_by_subject", "_by_pred_obj", "_by_object")

    def __init__(self, triples: Iterable[Triple] = ()):
        self._triples = frozenset(triples)
        self._sorted = tuple(sorted(self._triples, key=_triple_sort_key))
        by_subject: dict[Iri, list[Triple]] = {}
        by_pred_obj: dict[tuple[Iri, Term], list[Triple]] = {}
        by_object: dict[Term, list[Triple]] = {}
        for t in self._sorted:
            by_subject.setdefault(t.subject, []).append(t)
            by_pred_obj.setdefault((t.predicate, t.object), []).append(t)
            by_object.setdefault(t.object, []).append(t)
        self._by_subject = {k: tuple(v) for k, v in by_subject.items()}
        self._by_pred_obj = {k: tuple(v) for k, v in by_pred_obj.items()}
        self._by_object = {k: tuple(v) for k, v in by_object.items()}

    def __len__(self) -> int:
        return len(self._triples)

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triples

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return self._triples == other._triples

    def __hash__(self) -> int:
        return hash(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._sorted)

    def triples(self) -> tuple[Triple, ...]:
        return self._sorted

    def index_sizes(self) -> dict[str, int]:
        return {
            "subject": sum(len(v) for v in self._by_subject.values()),
            "pred_obj": sum(len(v) for v in self._by_pred_obj.values()),
            "object": sum(len(v) for v in self._by_object.values()),
        }

    def match(
        self,
        subject: Iri | None = None,
        predicate: Iri | None = None,
        object: Term | None = None,
        *,
        use_index: str | None = None,
    ) -> tuple[Triple, ...]:
        """Triples matching the bound slots (None is a wildcard).

        The most selective applicable index seeds the scan; ``use_index``
        ("subject" | "pred_obj" | "object" | "scan") forces one instead,
        which exists so tests can prove index choice never changes results.
        """
        if use_index is None:
            if subject is not None:
                use_index = "subject"
            elif predicate is not None and object is not None:
                use_index = "pred_obj"
            elif object is not None:
                use_index = "object"
            else:
                use_index = "scan"
        if use_index == "subject":
            if subject is None:
                raise ValueError("subject index needs a bound subject")
            candidates = self._by_subject.get(subject, ())
        elif use_index == "pred_obj":
            if predicate is None or object is None:
                raise ValueError("pred_obj index needs bound predicate and object")
            candidates = self._by_pred_obj.get((predicate, object), ())
        elif use_index == "object":
            if object is None:
                raise ValueError("object index needs a bound object")
            candidates = self._by_object.get(object, ())
        elif use_index == "scan":
            candidates = self._sorted
        else:
            raise ValueError(f"unknown index: {use_index}")
        return tuple(
            t
            for t in candidates
            if (subject is None or t.subject == subject)
            and (predicate is None or t.predicate == predicate)
            and (object is None or t.object == object)
        )


# ---------------------------------------------------------------------------
# N-Triples

class NTriplesParseError(ValueError):
    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


_NT_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}
_NT_UNESCAPES = {
    "\\": "\\",
    '"': '"',
    "'": "'",
    "n": "\n",
    "r": "\r",
    "t": "\t",
    "b": "\b",
    "f": "\f",
}


def _escape_nt_literal(value: str) -> str:
    out = []
    for ch in value:
        if ch in _NT_ESCAPES:
            out.append(_NT_ESCAPES[ch])
        elif ord(ch) < 0x20 or ord(ch) == 0x7F:
            out.append("\\u%04X" % ord(ch))
        else:
            out.append(ch)
    return "".join(out)


def _unescape_nt_literal(raw: str, line_number: int) -> str:
    out = []
    i, n = 0, len(raw)
    while i < n:
        ch = raw[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        if i + 1 >= n:
            raise NTriplesParseError("dangling backslash in literal", line_number)
        esc = raw[i + 1]
        if esc in _NT_UNESCAPES:
            out.append(_NT_UNESCAPES[esc])
            i += 2
        elif esc in ("u", "U"):
            width = 4 if esc == "u" else 8
            hexpart = raw[i + 2 : i + 2 + width]
            if len(hexpart) != width:
                raise NTriplesParseError(f"truncated \\{esc} escape", line_number)
            try:
                out.append(chr(int(hexpart, 16)))
            except ValueError as exc:
                raise NTriplesParseError(f"bad \\{esc} escape: {hexpart}", line_number) from exc
            i += 2 + width
        else:
            raise NTriplesParseError(f"unknown escape \\{esc}", line_number)
    return "".join(out)


def serialize_ntriples(dataset: Dataset) -> bytes:
    """Canonical N-Triples: one sorted line per triple, UTF-8."""
    lines = []
    for t in dataset.triples():
        if isinstance(t.object, Iri):
            obj = f"<{t.object.value}>"
        else:
            obj = f'"{_escape_nt_literal(t.object.value)}"'
        lines.append(f"<{t.subject.value}> <{t.predicate.value}> {obj} .".encode())
    lines.sort()
    return b"".join(line + b"\n" for line in lines)


_NT_LINE_RE = re.compile(
    r'^<([^<>"\s]+)>\s+<([^<>"\s]+)>\s+(?:<([^<>"\s]+)>|"((?:[^"\\\n]|\\.)*)")\s*\.$'
)


def parse_ntriples(data: bytes) -> Dataset:
    """Parse N-Triples bytes; blank lines and # comments are tolerated."""
    triples = []
    for line_number, raw_line in enumerate(data.decode("utf-8").split("\n"), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        m = _NT_LINE_RE.match(line)
        if not m:
            raise NTriplesParseError(f"malformed triple: {line!r}", line_number)
        s, p, o_iri, o_lit = m.groups()
        try:
            obj: Term
            if o_iri is not None:
                obj = Iri(o_iri)
            else:
                obj = Literal(_unescape_nt_literal(o_lit, line_number))
            triples.append(Triple(Iri(s), Iri(p), obj))
        except StoreError as exc:
            raise NTriplesParseError(str(exc), line_number) from exc
    return Dataset(triples)


# ---------------------------------------------------------------------------
# SPARQL subset: PREFIX / SELECT [DISTINCT] / WHERE { BGP } / LIMIT / OFFSET

class SparqlError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class UnsupportedSparqlFeature(SparqlError):
    pass


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __repr__(self) -> str:
        return f"?{self.name}"


PatternTerm = Var | Iri | Literal


class TriplePattern(NamedTuple):
    subject: PatternTerm
    predicate: PatternTerm
    object: PatternTerm


@dataclass(frozen=True, slots=True)
class Query:
    prefixes: dict[str, str]
    variables: tuple[str, ...] | None  # None means SELECT *
    distinct: bool
    patterns: tuple[TriplePattern, ...]
    limit: int | None = None
    offset: int = 0


_UNSUPPORTED_KEYWORDS = {
    "OPTIONAL", "FILTER", "UNION", "GRAPH", "SERVICE", "MINUS", "BIND",
    "VALUES", "ORDER", "GROUP", "HAVING", "ASK", "CONSTRUCT", "DESCRIBE",
    "INSERT", "DELETE", "FROM", "REDUCED", "EXISTS", "NOT", "BASE", "A",
}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
    | (?P<var>[?$][A-Za-z_][A-Za-z0-9_]*)
    | (?P<iri><[^<>"\s]*>)
    | (?P<string>"(?:[^"\\\n]|\\.)*")
    | (?P<pname>[A-Za-z_][A-Za-z0-9_\-]*:[A-Za-z0-9_][A-Za-z0-9_.\-]*|[A-Za-z_][A-Za-z0-9_\-]*:|:[A-Za-z0-9_][A-Za-z0-9_.\-]*|:)
    | (?P<int>\d+)
    | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
    | (?P<punct>[{}.*(),;])
    """,
    re.VERBOSE,
)


class _Token(NamedTuple):
    kind: str
    value: str
    pos: int


def _tokenize_sparql(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise SparqlError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        assert kind is not None
        if kind != "ws":
            tokens.append(_Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(_Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize_sparql(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at_keyword(self, word: str) -> bool:
        tok = self.peek()
        return tok.kind == "name" and tok.value.upper() == word

    def expect_keyword(self, word: str) -> None:
        if not self.at_keyword(word):
            tok = self.peek()
            raise SparqlError(f"expected {word}, found {tok.value!r}", tok.pos)
        self.next()

    def expect_punct(self, char: str) -> None:
        tok = self.peek()
        if tok.kind != "punct" or tok.value != char:
            raise SparqlError(f"expected {char!r}, found {tok.value!r}", tok.pos)
        self.next()

    def reject_unsupported(self, tok: _Token) -> None:
        if tok.kind == "name" and tok.value.upper() in _UNSUPPORTED_KEYWORDS:
            raise UnsupportedSparqlFeature(
                f"unsupported feature: {tok.value}", tok.pos
            )


def _parse_term(p: _Parser, prefixes: dict[str, str]) -> PatternTerm:
    tok = p.peek()
    if tok.kind == "var":
        p.next()
        return Var(tok.value[1:])
    if tok.kind == "iri":
        p.next()
        try:
            return Iri(tok.value[1:-1])
        except StoreError as exc:
            raise SparqlError(str(exc), tok.pos) from exc
    if tok.kind == "pname":
        p.next()
        prefix, _, local = tok.value.partition(":")
        if prefix not in prefixes:
            raise SparqlError(f"unknown prefix: {prefix}:", tok.pos)
        try:
            return Iri(prefixes[prefix] + local)
        except StoreError as exc:
            raise SparqlError(str(exc), tok.pos) from exc
    if tok.kind == "string":
        p.next()
        try:
            return Literal(_unescape_nt_literal(tok.value[1:-1], 0))
        except NTriplesParseError as exc:
            raise SparqlError(f"bad string literal: {exc}", tok.pos) from exc
    p.reject_unsupported(tok)
    raise SparqlError(f"expected a term, found {tok.value!r}", tok.pos)


def parse_sparql(text: str) -> Query:
    """Parse the supported SELECT subset.

    Anything beyond PREFIX declarations, SELECT [DISTINCT], a single basic
    graph pattern, and LIMIT/OFFSET raises: unknown syntax as SparqlError,
    recognized-but-excluded SPARQL as UnsupportedSparqlFeature.
    """
    p = _Parser(text)
    prefixes: dict[str, str] = {}
    while p.at_keyword("PREFIX"):
        p.next()
        tok = p.next()
        if tok.kind != "pname" or not tok.value.endswith(":"):
            raise SparqlError(f"expected prefix name, found {tok.value!r}", tok.pos)
        name = tok.value[:-1]
        iri_tok = p.next()
        if iri_tok.kind != "iri":
            raise SparqlError(f"expected IRI, found {iri_tok.value!r}", iri_tok.pos)
        prefixes[name] = iri_tok.value[1:-1]

    tok = p.peek()
    p.reject_unsupported(tok)
    p.expect_keyword("SELECT")
    distinct = False
    if p.at_keyword("DISTINCT"):
        p.next()
        distinct = True

    variables: tuple[str, ...] | None
    if p.peek().kind == "punct" and p.peek().value == "*":
        p.next()
        variables = None
    else:
        names = []
        while p.peek().kind == "var":
            names.append(p.next().value[1:])
        if not names:
            tok = p.peek()
            p.reject_unsupported(tok)
            raise SparqlError(f"expected projection, found {tok.value!r}", tok.pos)
        variables = tuple(names)

    if p.at_keyword("WHERE"):
        p.next()
    p.expect_punct("{")
    patterns: list[TriplePattern] = []
    while not (p.peek().kind == "punct" and p.peek().value == "}"):
        if p.peek().kind == "eof":
            raise SparqlError("unterminated group: expected '}'", p.peek().pos)
        s = _parse_term(p, prefixes)
        pred = _parse_term(p, prefixes)
        o = _parse_term(p, prefixes)
        patterns.append(TriplePattern(s, pred, o))
        if p.peek().kind == "punct" and p.peek().value == ".":
            p.next()
    p.expect_punct("}")

    limit: int | None = None
    offset = 0
    while p.peek().kind != "eof":
        tok = p.peek()
        p.reject_unsupported(tok)
        if p.at_keyword("LIMIT"):
            p.next()
            num = p.next()
            if num.kind != "int":
                raise SparqlError(f"expected integer, found {num.value!r}", num.pos)
            limit = int(num.value)
        elif p.at_keyword("OFFSET"):
            p.next()
            num = p.next()
            if num.kind != "int":
                raise SparqlError(f"expected integer, found {num.value!r}", num.pos)
            offset = int(num.value)
        else:
            raise SparqlError(f"unexpected token {tok.value!r}", tok.pos)

    pattern_vars = {
        term.name
        for pattern in patterns
        for term in pattern
        if isinstance(term, Var)
    }
    if variables is not None:
        missing = [v for v in variables if v not in pattern_vars]
        if missing:
            raise SparqlError(
                "projected variable(s) not in pattern: " + ", ".join(missing)
            )
    return Query(
        prefixes=prefixes,
        variables=variables,
        distinct=distinct,
        patterns=tuple(patterns),
        limit=limit,
        offset=offset,
    )


def result_vars(query: Query) -> tuple[str, ...]:
    """Projection names; SELECT * expands in first-occurrence order."""
    if query.variables is not None:
        return query.variables
    seen: dict[str, None] = {}
    for pattern in query.patterns:
        for term in pattern:
            if isinstance(term, Var):
                seen.setdefault(term.name)
    return tuple(seen)


def evaluate(query: Query, dataset: Dataset) -> list[dict[str, Term]]:
    """Join the basic graph pattern against the dataset.

    Returns projected rows in a deterministic order (sorted by binding
    values); DISTINCT collapses duplicate rows before LIMIT/OFFSET apply.
    """
    solutions: list[dict[str, Term]] = [{}]
    for pattern in query.patterns:
        extended: list[dict[str, Term]] = []
        for binding in solutions:
            slots = []
            for term in pattern:
                if isinstance(term, Var):
                    slots.append(binding.get(term.name))
                else:
                    slots.append(term)
            for triple in dataset.match(slots[0], slots[1], slots[2]):
                nb = dict(binding)
                ok = True
                for term, value in zip(pattern, triple):
                    if not isinstance(term, Var):
                        continue
                    bound = nb.get(term.name)
                    if bound is None:
                        nb[term.name] = value
                    elif bound != value:
                        ok = False
                        break
                if ok:
                    extended.append(nb)
        solutions = extended
        if not solutions:
            break

    projected = result_vars(query)
    rows = [tuple(sol[v] for v in projected) for sol in solutions]
    if query.distinct:
        rows = list(dict.fromkeys(rows))
    rows.sort(key=lambda row: tuple(term_sort_key(t) for t in row))
    if query.offset:
        rows = rows[query.offset :]
    if query.limit is not None:
        rows = rows[: query.limit]
    return [dict(zip(projected, row)) for row in rows]


# ---------------------------------------------------------------------------
# Graph construction

class Vocab:
    """Predicate IRIs under a configurable base."""

    __slots__ = ("base", "title", "source", "url", "team", "mentions_concept")

    def __init__(self, base_iri: str = BASE_IRI):
        self.base = base_iri
        self.title = Iri(base_iri + "title")
        self.source = Iri(base_iri + "source")
        self.url = Iri(base_iri + "url")
        self.team = Iri(base_iri + "team")
        self.mentions_concept = Iri(base_iri + "mentionsConcept")

    def doc_iri(self, doc_id: str) -> Iri:
        return Iri(self.base + "doc/" + quote(doc_id, safe=""))


def build_graph(
    wiki_annotations: Iterable[Annotation],
    expert_annotations: Iterable[Annotation],
    documents: Iterable[Document],
    taxonomy: Taxonomy,
    *,
    base_iri: str = BASE_IRI,
) -> Dataset:
    """Materialize annotations and document metadata as a Dataset.

    Multiple mentions of one concept in one document collapse to a single
    mentionsConcept edge. Every referenced concept also gets its preferred
    label, so query results can show human-readable subjects.
    """
    vocab = Vocab(base_iri)
    docs = {d.doc_id: d for d in documents}
    triples: set[Triple] = set()
    for doc in docs.values():
        doc_iri = vocab.doc_iri(doc.doc_id)
        triples.add(Triple(doc_iri, vocab.title, Literal(doc.title)))
        triples.add(Triple(doc_iri, vocab.source, Literal(doc.source)))
        triples.add(Triple(doc_iri, vocab.url, Literal(doc.url)))
        if doc.team is not None:
            triples.add(Triple(doc_iri, vocab.team, Literal(doc.team)))

    used_concepts: set[str] = set()
    for annotation in list(wiki_annotations) + list(expert_annotations):
        doc = docs.get(annotation.doc_id)
        if doc is None:
            raise StoreError(f"annotation references unknown document: {annotation.doc_id}")
        if annotation.concept_id not in taxonomy:
            raise StoreError(f"annotation references unknown concept: {annotation.concept_id}")
        triples.add(
            Triple(vocab.doc_iri(doc.doc_id), vocab.mentions_concept, Iri(annotation.concept_id))
        )
        used_concepts.add(annotation.concept_id)

    pref_label = Iri(SKOS_PREF_LABEL)
    for concept_id in used_concepts:
        concept = taxonomy.concepts[concept_id]
        triples.add(Triple(Iri(concept_id), pref_label, Literal(concept.pref_label)))
    return Dataset(triples)


def escape_literal_text(value: str) -> str:
    """Escape a string for use inside a quoted SPARQL or N-Triples literal."""
    return _escape_nt_literal(value)


EXPERTS_QUERY_TEMPLATE = """\
PREFIX epl: <{base}>
PREFIX skos: <http://www.w3.org/2004/02/skos/core#>
SELECT DISTINCT ?concept ?label ?team ?doc WHERE {{
  ?page epl:title "{title}" . ?page epl:source "wikipedia" .
  ?page epl:mentionsConcept ?concept . ?concept skos:prefLabel ?label .
  ?doc epl:mentionsConcept ?concept . ?doc epl:source "expert" .
  ?doc epl:team ?team . }}
"""


def experts_query(title: str, base_iri: str = BASE_IRI) -> str:
    """The canonical experts query for one Wikipedia page title."""
    return EXPERTS_QUERY_TEMPLATE.format(base=base_iri, title=escape_literal_text(title))
