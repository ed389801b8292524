"""Command-line front door: validate a taxonomy, build the link graph,
serve it, or query it.

Every flag can also come from an EPL_-prefixed environment variable;
explicit flags win. Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .ingest import (
    WIKI_URL_BASE,
    IngestError,
    IngestStats,
    read_expert_docs,
    read_wiki_dump,
)
from .matcher import Annotation, compile_matcher
from .store import (
    BASE_IRI,
    NTriplesParseError,
    SparqlError,
    StoreError,
    build_graph,
    evaluate,
    parse_ntriples,
    parse_sparql,
    result_vars,
    serialize_ntriples,
)
from .taxonomy import SkosParseError, SkosValidationError, build_lexicon, parse_skos
from .textproc import CleanText

__all__ = ["run", "main"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage problems; this artifact reserves 2 for
    data errors, so remap."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _env(name: str, default=None):
    return os.environ.get(f"EPL_{name}", default)


def _build_parser() -> _Parser:
    parser = _Parser(prog="expertpivot", description=__doc__)
    parser.add_argument("--version", action="version", version=f"expertpivot {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    check = sub.add_parser("taxonomy-check", help="validate a SKOS file and print counts")
    check.add_argument("taxonomy", help="SKOS RDF/XML file")
    check.add_argument("--lenient", action="store_true", help="log dangling broader edges instead of failing")

    index = sub.add_parser("index", help="annotate both corpora and write the .nt graph")
    index.add_argument("--taxonomy", default=_env("TAXONOMY"), help="SKOS RDF/XML file")
    index.add_argument("--wiki-dump", default=_env("WIKI_DUMP"), help="MediaWiki pages-articles dump (.xml, .xml.gz, .xml.bz2)")
    index.add_argument("--expert-root", default=_env("EXPERT_ROOT"), help="root directory of expert report pages")
    index.add_argument("--output", default=_env("OUTPUT"), help="output N-Triples path")
    index.add_argument("--min-tokens", type=int, default=int(_env("MIN_TOKENS", "1")), help="shortest label length kept in the lexicon")
    index.add_argument("--stoplist", default=_env("STOPLIST"), help="file with one phrase per line to exclude")
    index.add_argument("--no-alt-labels", action="store_true", help="match preferred labels only")
    index.add_argument("--lenient", action="store_true", help="tolerate dangling broader edges in the taxonomy")
    index.add_argument("--base-iri", default=_env("BASE_IRI", BASE_IRI), help="vocabulary base IRI")
    index.add_argument("--wiki-url-base", default=_env("WIKI_URL_BASE", WIKI_URL_BASE), help="URL prefix for article links")
    index.add_argument("--expert-url-base", default=_env("EXPERT_URL_BASE"), help="URL prefix for expert page links (default: file paths)")
    index.add_argument("--team-component", type=int, default=int(_env("TEAM_COMPONENT", "0")), help="path component under the root that names the team")
    index.add_argument("--progress-every", type=int, default=int(_env("PROGRESS_EVERY", "1000")), help="progress line interval (documents)")

    serve = sub.add_parser("serve", help="serve a .nt graph over HTTP")
    serve.add_argument("--dataset", default=_env("DATASET"), help="N-Triples file to load")
    serve.add_argument("--listen", default=_env("LISTEN", "127.0.0.1:8000"), help="host:port to bind")
    serve.add_argument("--base-iri", default=_env("BASE_IRI", BASE_IRI), help="vocabulary base IRI")
    serve.add_argument("--max-query-bytes", type=int, default=int(_env("MAX_QUERY_BYTES", "65536")), help="reject larger SPARQL queries")

    query = sub.add_parser("query", help="evaluate a SPARQL file against a .nt graph")
    query.add_argument("query_file", help="file holding one SELECT query")
    query.add_argument("--dataset", default=_env("DATASET"), help="N-Triples file to load")
    return parser


def _require(parser: _Parser, value, flag: str):
    if not value:
        parser.error(f"{flag} is required")
    return value


def _data_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_DATA


def _cmd_taxonomy_check(args) -> int:
    try:
        data = Path(args.taxonomy).read_bytes()
        taxonomy = parse_skos(data, lenient=args.lenient, source_uri=args.taxonomy)
    except (OSError, SkosParseError, SkosValidationError) as exc:
        return _data_error(str(exc))
    print(f"concepts: {len(taxonomy)}")
    print(f"labels: {taxonomy.label_count()}")
    print(f"broader edges: {taxonomy.broader_edge_count()}")
    return EXIT_OK


def _load_stoplist(path: str | None) -> list[str]:
    if not path:
        return []
    return [line.strip() for line in Path(path).read_text().splitlines() if line.strip()]


def _cmd_index(args, parser: _Parser) -> int:
    _require(parser, args.taxonomy, "--taxonomy")
    _require(parser, args.output, "--output")
    if not args.wiki_dump and not args.expert_root:
        parser.error("at least one of --wiki-dump / --expert-root is required")
    for path in filter(None, [args.taxonomy, args.wiki_dump, args.expert_root, args.stoplist]):
        if not Path(path).exists():
            return _data_error(f"input path does not exist: {path}")

    try:
        taxonomy = parse_skos(
            Path(args.taxonomy).read_bytes(), lenient=args.lenient, source_uri=args.taxonomy
        )
        lexicon = build_lexicon(
            taxonomy,
            min_tokens=args.min_tokens,
            stoplist=_load_stoplist(args.stoplist),
            include_alt_labels=not args.no_alt_labels,
        )
    except (OSError, SkosParseError, SkosValidationError, ValueError) as exc:
        return _data_error(str(exc))
    matcher = compile_matcher(lexicon)
    print(
        f"taxonomy: {len(taxonomy)} concepts, lexicon: {len(lexicon)} phrases",
        file=sys.stderr,
    )

    wiki_annotations: list[Annotation] = []
    expert_annotations: list[Annotation] = []
    documents = []
    processed = 0

    def consume(doc_iter, sink: list[Annotation]) -> None:
        nonlocal processed
        for doc in doc_iter:
            sink.extend(matcher.annotate(doc.doc_id, doc.clean))
            # Graph assembly only needs metadata; drop the token text.
            documents.append(
                replace(doc, clean=CleanText(sentences=(), char_len=doc.clean.char_len))
            )
            processed += 1
            if args.progress_every and processed % args.progress_every == 0:
                print(f"processed {processed} documents", file=sys.stderr)

    try:
        if args.wiki_dump:
            wiki_stats = IngestStats()
            consume(
                read_wiki_dump(args.wiki_dump, url_base=args.wiki_url_base, stats=wiki_stats),
                wiki_annotations,
            )
            print(
                f"wiki dump: {wiki_stats.yielded} articles kept, {wiki_stats.skipped} pages skipped",
                file=sys.stderr,
            )
        if args.expert_root:
            expert_stats = IngestStats()
            consume(
                read_expert_docs(
                    args.expert_root,
                    team_component=args.team_component,
                    url_base=args.expert_url_base,
                    stats=expert_stats,
                ),
                expert_annotations,
            )
            print(
                f"expert root: {expert_stats.yielded} pages kept, {expert_stats.skipped} files skipped",
                file=sys.stderr,
            )
        dataset = build_graph(
            wiki_annotations, expert_annotations, documents, taxonomy, base_iri=args.base_iri
        )
    except (IngestError, StoreError) as exc:
        return _data_error(str(exc))

    Path(args.output).write_bytes(serialize_ntriples(dataset))

    pages_tagged = len({a.doc_id for a in wiki_annotations})
    expert_docs_tagged = len({a.doc_id for a in expert_annotations})
    concepts_used = len({a.concept_id for a in wiki_annotations + expert_annotations})
    print(
        f"pages tagged: {pages_tagged}, expert docs tagged: {expert_docs_tagged}, "
        f"concepts used: {concepts_used}",
        file=sys.stderr,
    )
    summary = {
        "pages_tagged": pages_tagged,
        "expert_docs_tagged": expert_docs_tagged,
        "concepts_used": concepts_used,
        "documents": len(documents),
        "triples": len(dataset),
        "output": args.output,
    }
    print(json.dumps(summary))
    return EXIT_OK


def _cmd_serve(args, parser: _Parser) -> int:
    import uvicorn

    from .service import create_app

    _require(parser, args.dataset, "--dataset")
    try:
        dataset = parse_ntriples(Path(args.dataset).read_bytes())
    except (OSError, NTriplesParseError) as exc:
        return _data_error(str(exc))
    host, _, port = args.listen.rpartition(":")
    if not host or not port.isdigit():
        parser.error(f"--listen must be host:port, got {args.listen!r}")
    app = create_app(dataset, base_iri=args.base_iri, max_query_bytes=args.max_query_bytes)
    print(f"serving {len(dataset)} triples on {args.listen}", file=sys.stderr)
    uvicorn.run(app, host=host, port=int(port), log_level="info")
    return EXIT_OK


def _format_term(term) -> str:
    return repr(term)


def _cmd_query(args, parser: _Parser) -> int:
    _require(parser, args.dataset, "--dataset")
    try:
        query = parse_sparql(Path(args.query_file).read_text())
        dataset = parse_ntriples(Path(args.dataset).read_bytes())
    except (OSError, SparqlError, NTriplesParseError) as exc:
        return _data_error(str(exc))
    variables = result_vars(query)
    print("\t".join(f"?{v}" for v in variables))
    for row in evaluate(query, dataset):
        print("\t".join(_format_term(row[v]) for v in variables))
    return EXIT_OK


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    if args.command == "taxonomy-check":
        return _cmd_taxonomy_check(args)
    if args.command == "index":
        return _cmd_index(args, parser)
    if args.command == "serve":
        return _cmd_serve(args, parser)
    if args.command == "query":
        return _cmd_query(args, parser)
    parser.error(f"unknown command {args.command!r}")
    return EXIT_USAGE


def main() -> None:
    sys.exit(run())
