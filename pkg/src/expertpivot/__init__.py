"""Pivot-taxonomy expert search.

Annotates Wikipedia articles and local expert report pages with concepts
from a SKOS taxonomy, stores the resulting links as RDF triples, and
serves them through a small SPARQL endpoint plus a convenience experts
API consumed by a browser gadget.
"""

__version__ = "0.1.0"

from .ingest import Document, IngestError, read_expert_docs, read_wiki_dump
from .matcher import Annotation, Matcher, active_kernel, compile_matcher
from .store import (
    BASE_IRI,
    Dataset,
    Iri,
    Literal,
    Triple,
    build_graph,
    evaluate,
    parse_ntriples,
    parse_sparql,
    serialize_ntriples,
)
from .taxonomy import Concept, PhraseLexicon, Taxonomy, build_lexicon, normalize_label, parse_skos
from .textproc import CleanText, split_sentences, strip_boilerplate, strip_wikitext, tokenize

__all__ = [
    "__version__",
    "Annotation",
    "BASE_IRI",
    "CleanText",
    "Concept",
    "Dataset",
    "Document",
    "IngestError",
    "Iri",
    "Literal",
    "Matcher",
    "PhraseLexicon",
    "Taxonomy",
    "Triple",
    "active_kernel",
    "build_graph",
    "build_lexicon",
    "compile_matcher",
    "evaluate",
    "normalize_label",
    "parse_ntriples",
    "parse_skos",
    "parse_sparql",
    "read_expert_docs",
    "read_wiki_dump",
    "serialize_ntriples",
    "split_sentences",
    "strip_boilerplate",
    "strip_wikitext",
    "tokenize",
]
