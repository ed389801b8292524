"""Pure Python document scanner, the fallback for the C kernel in _scan.pyx.

Both kernels walk the same flattened token trie (CSR transition arrays)
and must return identical results; tests compare them directly.
"""

from __future__ import annotations

from bisect import bisect_left

KERNEL = "python"


def scan_document(trans_start, trans_tokens, trans_next, is_match, sentences, vocab):
    """Longest-match scan over a document's token sentences.

    Tokens are mapped to ids through ``vocab`` (unknown tokens can never
    match). From each position the trie is walked as far as the ids allow
    and the deepest accepting state wins; scanning resumes right after a
    match, giving leftmost-longest non-overlapping semantics per sentence.
    Returns ``(sentence_index, start, end, state)`` tuples with half-open
    token spans.
    """
    out = []
    for sentence_index, sentence in enumerate(sentences):
        ids = [vocab.get(token, -1) for token in sentence]
        n = len(ids)
        pos = 0
        while pos < n:
            state = 0
            best_end = -1
            best_state = -1
            j = pos
            while j < n:
                tok = ids[j]
                if tok < 0:
                    break
                lo = trans_start[state]
                hi = trans_start[state + 1]
                k = bisect_left(trans_tokens, tok, lo, hi)
                if k == hi or trans_tokens[k] != tok:
                    break
                state = trans_next[k]
                j += 1
                if is_match[state]:
                    best_end = j
                    best_state = state
            if best_end >= 0:
                out.append((sentence_index, pos, best_end, best_state))
                pos = best_end
            else:
                pos += 1
    return out
