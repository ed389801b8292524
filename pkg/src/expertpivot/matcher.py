"""Token-level multi-phrase matching over clean documents.

The lexicon is compiled into a trie over token ids, flattened into CSR
arrays so the scan can run in the compiled kernel when it is available.
Matching is leftmost-longest and non-overlapping within each sentence;
a phrase never matches inside another token ("learning" cannot fire in
"unlearning") because the unit is the token, not the character.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from typing import Iterable

from .taxonomy import PhraseLexicon
from .textproc import CleanText

try:  # compiled kernel, built by setup.py; optional
    from . import _scan  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - depends on the build
    from . import _scan_py as _scan  # type: ignore[no-redef]

__all__ = ["Annotation", "Matcher", "compile_matcher", "active_kernel"]


def active_kernel() -> str:
    """Name of the scan kernel selected at import ("c" or "python")."""
    return _scan.KERNEL


@dataclass(frozen=True, slots=True)
class Annotation:
    """One concept mention: which phrase matched where in a document."""

    doc_id: str
    concept_id: str
    phrase: str
    sentence_index: int
    token_span: tuple[int, int]


class Matcher:
    """Immutable phrase automaton; safe to share across threads."""

    __slots__ = (
        "_vocab",
        "_trans_start",
        "_trans_tokens",
        "_trans_next",
        "_is_match",
        "_payloads",
        "scan_fn",
    )

    def __init__(
        self,
        vocab: dict[str, int],
        trans_start: array,
        trans_tokens: array,
        trans_next: array,
        is_match: array,
        payloads: dict[int, tuple[str, tuple[str, ...]]],
    ):
        self._vocab = vocab
        self._trans_start = trans_start
        self._trans_tokens = trans_tokens
        self._trans_next = trans_next
        self._is_match = is_match
        self._payloads = payloads
        # Instance-level so benchmarks and tests can pin a specific kernel.
        self.scan_fn = _scan.scan_document

    def __len__(self) -> int:
        return len(self._payloads)

    def match_phrase(self, phrase: tuple[str, ...]) -> tuple[str, ...]:
        """Concept ids an exact phrase maps to; empty when not accepted."""
        spans = self.annotate("probe", CleanText(sentences=(phrase,), char_len=0))
        if not spans or spans[0].token_span != (0, len(phrase)):
            return ()
        return tuple(a.concept_id for a in spans)

    def annotate(self, doc_id: str, clean: CleanText) -> list[Annotation]:
        """All concept mentions in a document, ordered by (sentence, start).

        Within one sentence, matches are leftmost-longest and never overlap;
        a match that maps to several concepts yields one annotation per
        concept, ordered by concept id.
        """
        out: list[Annotation] = []
        matches = self.scan_fn(
            self._trans_start, self._trans_tokens, self._trans_next,
            self._is_match, clean.sentences, self._vocab,
        )
        for sentence_index, start, end, state in matches:
            phrase, concepts = self._payloads[state]
            for concept_id in concepts:
                out.append(
                    Annotation(
                        doc_id=doc_id,
                        concept_id=concept_id,
                        phrase=phrase,
                        sentence_index=sentence_index,
                        token_span=(start, end),
                    )
                )
        return out


def compile_matcher(lexicon: PhraseLexicon) -> Matcher:
    """Build the scan automaton for a lexicon.

    Construction is deterministic: phrases are inserted in sorted order and
    transition arrays are sorted per state, so identical lexicons compile to
    identical automata.
    """
    phrases = sorted(lexicon.entries)
    vocab: dict[str, int] = {}
    for phrase in phrases:
        for token in phrase:
            if token not in vocab:
                vocab[token] = len(vocab)

    transitions: list[dict[int, int]] = [{}]
    payloads: dict[int, tuple[str, tuple[str, ...]]] = {}
    for phrase in phrases:
        state = 0
        for token in phrase:
            tok_id = vocab[token]
            nxt = transitions[state].get(tok_id)
            if nxt is None:
                nxt = len(transitions)
                transitions[state][tok_id] = nxt
                transitions.append({})
            state = nxt
        payloads[state] = (" ".join(phrase), tuple(sorted(lexicon.entries[phrase])))

    trans_start = array("i", [0])
    trans_tokens = array("i")
    trans_next = array("i")
    for state_map in transitions:
        for tok_id in sorted(state_map):
            trans_tokens.append(tok_id)
            trans_next.append(state_map[tok_id])
        trans_start.append(len(trans_tokens))
    is_match = array("B", (1 if s in payloads else 0 for s in range(len(transitions))))
    return Matcher(vocab, trans_start, trans_tokens, trans_next, is_match, payloads)


def annotate_documents(
    matcher: Matcher, docs: Iterable[tuple[str, CleanText]]
) -> Iterable[Annotation]:
    """Annotate a stream of (doc_id, clean) pairs."""
    for doc_id, clean in docs:
        yield from matcher.annotate(doc_id, clean)
