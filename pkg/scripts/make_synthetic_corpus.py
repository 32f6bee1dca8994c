#!/usr/bin/env python3
"""Generate a synthetic review corpus for end-to-end experiments.

Writes JSON-lines records compatible with `carspeak ingest/stats/train/...`
and prints one example query per class so you can poke the trained model.
"""

import argparse
import sys
from pathlib import Path

from carspeak.corpus import serialize_corpus
from carspeak.synthetic import generate_corpus


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", required=True, help="corpus file to write")
    parser.add_argument("--classes", type=int, default=20)
    parser.add_argument("--reviews-per-class", type=int, default=30)
    parser.add_argument("--noise-fraction", type=float, default=0.3)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    syn = generate_corpus(
        n_classes=args.classes,
        reviews_per_class=args.reviews_per_class,
        noise_fraction=args.noise_fraction,
        seed=args.seed,
    )
    Path(args.out).write_bytes(serialize_corpus(syn.corpus))
    print(f"wrote {len(syn.corpus)} reviews to {args.out}", file=sys.stderr)
    for key, words in syn.class_words.items():
        print(f"{key}: try \"{' '.join(words[:3])}\"", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
