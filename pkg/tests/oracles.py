"""Independent reference implementations the fast paths are checked against.

Deliberately naive: the matcher oracle compares every phrase at every
position, the query oracle tries every assignment of variables to dataset
terms. Neither shares code with the package internals it verifies.
"""

from __future__ import annotations

from itertools import product

from expertpivot.matcher import Annotation
from expertpivot.store import Dataset, Iri, Literal, Query, Var, result_vars, term_sort_key


def naive_annotate(
    entries: dict[tuple[str, ...], frozenset[str]],
    doc_id: str,
    sentences: tuple[tuple[str, ...], ...],
) -> list[Annotation]:
    """Leftmost-longest non-overlapping scan by brute phrase comparison."""
    phrases = sorted(entries, key=len, reverse=True)  # longest first
    out: list[Annotation] = []
    for sentence_index, tokens in enumerate(sentences):
        n = len(tokens)
        pos = 0
        while pos < n:
            hit = None
            for phrase in phrases:
                width = len(phrase)
                if pos + width <= n and tokens[pos : pos + width] == phrase:
                    hit = phrase
                    break
            if hit is None:
                pos += 1
                continue
            for concept_id in sorted(entries[hit]):
                out.append(
                    Annotation(
                        doc_id=doc_id,
                        concept_id=concept_id,
                        phrase=" ".join(hit),
                        sentence_index=sentence_index,
                        token_span=(pos, pos + len(hit)),
                    )
                )
            pos += len(hit)
    return out


def brute_force_evaluate(query: Query, dataset: Dataset) -> list[dict]:
    """Evaluate a BGP by trying every variable-to-term assignment."""
    triples = set(dataset.triples())
    terms = sorted(
        {part for t in triples for part in t},
        key=term_sort_key,
    )
    variables = sorted(
        {
            term.name
            for pattern in query.patterns
            for term in pattern
            if isinstance(term, Var)
        }
    )
    solutions = []
    for assignment in product(terms, repeat=len(variables)):
        binding = dict(zip(variables, assignment))

        def resolve(term):
            return binding[term.name] if isinstance(term, Var) else term

        if all(
            tuple(resolve(term) for term in pattern) in triples
            for pattern in query.patterns
        ):
            solutions.append(binding)

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
