"""Seeded random-case generators shared by the unit and acceptance suites."""

from __future__ import annotations

import random

from expertpivot.store import Dataset, Iri, Literal, Query, Triple, TriplePattern, Var
from expertpivot.taxonomy import PhraseLexicon

WORDS = [f"w{i}" for i in range(20)]


def random_matcher_case(rng: random.Random) -> tuple[PhraseLexicon, tuple[tuple[str, ...], ...]]:
    """A lexicon of up to 50 phrases and a document of up to 200 tokens."""
    entries: dict[tuple[str, ...], frozenset[str]] = {}
    for _ in range(rng.randint(0, 50)):
        width = rng.randint(1, 5)
        phrase = tuple(rng.choice(WORDS) for _ in range(width))
        concepts = frozenset(
            f"https://c/{rng.randint(0, 5)}" for _ in range(rng.randint(1, 2))
        )
        entries[phrase] = entries.get(phrase, frozenset()) | concepts
    total = rng.randint(0, 200)
    sentences = []
    while total > 0:
        width = min(total, rng.randint(1, 30))
        sentences.append(tuple(rng.choice(WORDS) for _ in range(width)))
        total -= width
    return PhraseLexicon(entries=entries), tuple(sentences)


POOL_IRIS = [Iri(f"https://t/{n}") for n in "abcdefgh"]
POOL_LITERALS = [Literal(v) for v in ("x", "y", "z")]


def random_dataset(rng: random.Random, max_size: int = 200) -> Dataset:
    # A small term pool keeps the brute-force oracle's assignment space
    # enumerable while still producing datasets up to the size cap.
    size = rng.randint(0, max_size)
    return Dataset(
        Triple(
            rng.choice(POOL_IRIS),
            rng.choice(POOL_IRIS),
            rng.choice(POOL_IRIS + POOL_LITERALS),
        )
        for _ in range(size)
    )


def random_query(rng: random.Random, max_patterns: int = 4) -> Query:
    """A basic graph pattern of up to ``max_patterns`` patterns, 3 variables."""
    var_names = ["v0", "v1", "v2"][: rng.randint(1, 3)]

    def term(allow_literal: bool):
        kind = rng.random()
        if kind < 0.5:
            return Var(rng.choice(var_names))
        if allow_literal and kind < 0.65:
            return rng.choice(POOL_LITERALS)
        return rng.choice(POOL_IRIS)

    patterns = tuple(
        TriplePattern(term(False), term(False), term(True))
        for _ in range(rng.randint(1, max_patterns))
    )
    used = sorted({t.name for p in patterns for t in p if isinstance(t, Var)})
    if not used:
        variables = None
    else:
        rng.shuffle(used)
        variables = tuple(used[: rng.randint(1, len(used))])
    return Query(
        prefixes={},
        variables=variables,
        distinct=rng.random() < 0.5,
        patterns=patterns,
        limit=rng.choice([None, None, rng.randint(0, 10)]),
        offset=rng.choice([0, 0, rng.randint(0, 5)]),
    )
