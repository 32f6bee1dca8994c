#!/usr/bin/env python3
"""Cross-validate all four classifiers on a corpus and print a metrics table.

With no --corpus argument a synthetic 20x30 corpus is generated in memory.
"""

import argparse
import sys
import time

from carspeak.classifiers import KINDS
from carspeak.corpus import ingest_corpus
from carspeak.evaluate import ClassifierSpec, cross_validate
from carspeak.synthetic import generate_corpus
from carspeak.textproc import default_lexicon


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--corpus", help="JSONL corpus (default: synthetic 20x30)")
    parser.add_argument("--folds", type=int, default=4)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--fit-scope", choices=("train", "all"), default="train")
    args = parser.parse_args()

    if args.corpus:
        with open(args.corpus, "rb") as fh:
            corpus = ingest_corpus(fh)
    else:
        corpus = generate_corpus(seed=42).corpus
    lex = default_lexicon()

    print(f"{'classifier':<12}{'P macro':>10}{'R macro':>10}{'F1 macro':>10}{'F1 micro':>10}{'time':>8}")
    for kind in KINDS:
        start = time.perf_counter()
        report = cross_validate(
            corpus, lex, ClassifierSpec(kind=kind),
            k=args.folds, seed=args.seed, fit_scope=args.fit_scope,
        )
        elapsed = time.perf_counter() - start
        m = report.pooled
        print(
            f"{kind:<12}{m.precision_macro:>10.4f}{m.recall_macro:>10.4f}"
            f"{m.f1_macro:>10.4f}{m.f1_micro:>10.4f}{elapsed:>7.1f}s"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
