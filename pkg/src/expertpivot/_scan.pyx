# cython: language_level=3, boundscheck=False, wraparound=False
"""C document scanner; semantics identical to _scan_py.scan_document."""

from cpython.dict cimport PyDict_GetItem
from cpython.mem cimport PyMem_Free, PyMem_Malloc
from cpython.object cimport PyObject

KERNEL = "c"


def scan_document(const int[:] trans_start, const int[:] trans_tokens,
                  const int[:] trans_next, const unsigned char[:] is_match,
                  sentences, dict vocab):
    """Longest-match scan over a document's token sentences; see _scan_py."""
    cdef list out = []
    cdef Py_ssize_t sentence_index, n, pos, j, max_len = 0
    cdef Py_ssize_t best_end, best_state
    cdef int state, tok, nxt, lo, hi, mid
    cdef int* ids = NULL
    cdef PyObject* hit
    cdef object sentence

    for sentence in sentences:
        if len(sentence) > max_len:
            max_len = len(sentence)
    if max_len == 0:
        return out
    ids = <int*> PyMem_Malloc(max_len * sizeof(int))
    if ids == NULL:
        raise MemoryError()
    try:
        for sentence_index in range(len(sentences)):
            sentence = sentences[sentence_index]
            n = len(sentence)
            for j in range(n):
                hit = PyDict_GetItem(vocab, sentence[j])
                if hit != NULL:
                    ids[j] = <int> <object> hit
                else:
                    ids[j] = -1
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
                    nxt = -1
                    while lo < hi:
                        mid = (lo + hi) >> 1
                        if trans_tokens[mid] < tok:
                            lo = mid + 1
                        elif trans_tokens[mid] > tok:
                            hi = mid
                        else:
                            nxt = trans_next[mid]
                            break
                    if nxt < 0:
                        break
                    state = nxt
                    j += 1
                    if is_match[state]:
                        best_end = j
                        best_state = state
                if best_end >= 0:
                    out.append((sentence_index, pos, best_end, best_state))
                    pos = best_end
                else:
                    pos += 1
    finally:
        PyMem_Free(ids)
    return out
