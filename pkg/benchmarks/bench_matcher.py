#!/usr/bin/env python3
"""Compare the compiled scan kernel against the pure Python fallback.

Builds a synthetic lexicon and corpus, runs both kernels over the same
documents, and reports tokens/second for the raw scan and for full
annotation (scan plus annotation-object expansion, which is shared code).

    python benchmarks/bench_matcher.py [--phrases N] [--tokens N] [--repeat N]
"""

import argparse
import random
import time

from expertpivot import _scan_py
from expertpivot.matcher import compile_matcher
from expertpivot.taxonomy import PhraseLexicon
from expertpivot.textproc import CleanText

try:
    from expertpivot import _scan as _scan_c
except ImportError:
    _scan_c = None


def synthesize(rng: random.Random, phrases: int, tokens: int, plant_rate: float):
    words = [f"word{i}" for i in range(2000)]
    entries = {}
    while len(entries) < phrases:
        width = rng.randint(2, 4)  # taxonomy labels are rarely single words
        phrase = tuple(rng.choice(words) for _ in range(width))
        entries[phrase] = frozenset({f"https://c/{len(entries)}"})
    sentences = []
    remaining = tokens
    while remaining > 0:
        width = min(remaining, rng.randint(8, 25))
        sentence = [rng.choice(words) for _ in range(width)]
        if rng.random() < plant_rate:
            planted = rng.choice(list(entries))
            at = rng.randint(0, max(0, len(sentence) - len(planted)))
            sentence[at : at + len(planted)] = planted
        sentences.append(tuple(sentence))
        remaining -= width
    return PhraseLexicon(entries=entries), CleanText(tuple(sentences), char_len=0)


def best_of(repeat, fn):
    fn()  # warmup
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--phrases", type=int, default=2000)
    parser.add_argument("--tokens", type=int, default=200_000)
    parser.add_argument("--plant-rate", type=float, default=0.05,
                        help="fraction of sentences seeded with a lexicon phrase")
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    lexicon, doc = synthesize(rng, args.phrases, args.tokens, args.plant_rate)
    matcher = compile_matcher(lexicon)
    total_tokens = sum(len(s) for s in doc.sentences)
    hits = len(matcher.annotate("probe", doc))
    print(f"lexicon: {len(lexicon)} phrases, corpus: {total_tokens} tokens, "
          f"{hits} annotations per pass")

    kernels = [("python", _scan_py.scan_document)]
    if _scan_c is not None:
        kernels.append(("c", _scan_c.scan_document))
    else:
        print("compiled kernel not built; benchmarking pure Python only")

    scan_args = (matcher._trans_start, matcher._trans_tokens, matcher._trans_next,
                 matcher._is_match, doc.sentences, matcher._vocab)
    print(f"{'kernel':>8}  {'scan only':>22}  {'full annotate':>22}")
    scan_times = {}
    for name, scan_fn in kernels:
        scan_times[name] = best_of(args.repeat, lambda: scan_fn(*scan_args))
        matcher.scan_fn = scan_fn
        annotate_time = best_of(args.repeat, lambda: matcher.annotate("doc", doc))
        print(f"{name:>8}  {scan_times[name]:>9.4f}s {total_tokens/scan_times[name]/1e6:>6.1f} Mtok/s"
              f"  {annotate_time:>9.4f}s {total_tokens/annotate_time/1e6:>6.1f} Mtok/s")
    if len(scan_times) == 2:
        print(f"scan speedup: {scan_times['python'] / scan_times['c']:.1f}x")


if __name__ == "__main__":
    main()
