"""Command-line driver for the car-speak pipeline.

Subcommands: ingest, stats, topwords, train, evaluate, predict, serve.
Exit codes: 0 success, 1 usage error (bad flags or subcommands), 2 data or
model error (missing/unreadable files, malformed corpora, absent models).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from importlib import resources
from pathlib import Path

from .classifiers import KINDS, KnnParams, MlpParams, RfParams, SvmParams
from .classifiers import train_model
from .corpus import (
    Corpus,
    CorpusError,
    corpus_fingerprint,
    corpus_stats,
    filter_year_range,
    ingest_corpus,
    serialize_corpus,
)
from .evaluate import FIT_ALL, FIT_TRAIN_ONLY, ClassifierSpec, cross_validate, report_record
from .model_store import FORMAT_VERSION, ModelBundle, ModelFormatError, load_bundle, save_bundle
from .query import answer_query, query_result_json
from .service import build_server
from .textproc import PosLexicon, parse_lexicon, top_k_frequencies
from .vectorize import build_dataset


class CliError(Exception):
    """Data/model-level failure; maps to exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # usage problems exit 1, not 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="carspeak", description=__doc__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("ingest", help="validate and normalize a corpus file")
    p.add_argument("--input", help="corpus file (JSON lines)")
    p.add_argument("--out", help="write the normalized corpus here (default stdout)")
    p.add_argument("--min-year", type=int, default=None)
    p.add_argument("--max-year", type=int, default=None)
    p.add_argument(
        "--drop-missing-year",
        action="store_true",
        help="drop reviews without a year instead of keeping them",
    )

    p = sub.add_parser("stats", help="corpus summary counts")
    p.add_argument("--corpus")

    p = sub.add_parser("topwords", help="most frequent content words")
    p.add_argument("--corpus")
    p.add_argument("--k", type=int, default=20)
    p.add_argument("--lexicon", help="alternate lexicon file")

    p = sub.add_parser("train", help="train a classifier and save a model bundle")
    p.add_argument("--corpus")
    p.add_argument("--model", choices=KINDS, dest="kind")
    p.add_argument("--out")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--lexicon", help="alternate lexicon file")
    p.add_argument("--k", type=int, default=5, help="knn neighbor count")
    p.add_argument("--trees", type=int, default=100, help="rf tree count")
    p.add_argument("--max-depth", type=int, default=40, help="rf depth limit")
    p.add_argument("--min-split", type=int, default=2, help="rf min node size to split")
    p.add_argument("--lambda", type=float, default=1e-4, dest="lam", help="svm regularization")
    p.add_argument("--epochs", type=int, default=None, help="svm/mlp epochs (20/50)")
    p.add_argument("--hidden", type=int, default=100, help="mlp hidden width")
    p.add_argument("--batch", type=int, default=32, help="mlp batch size")
    p.add_argument("--lr", type=float, default=0.01, help="mlp learning rate")

    p = sub.add_parser("evaluate", help="k-fold cross-validation report")
    p.add_argument("--corpus")
    p.add_argument("--folds", type=int, default=4)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--fit-scope", choices=(FIT_TRAIN_ONLY, FIT_ALL), default=FIT_TRAIN_ONLY)
    p.add_argument("--models", default="all", help='"all" or comma list of knn,rf,svm,mlp')
    p.add_argument("--out", help="report file (default stdout)")
    p.add_argument("--lexicon", help="alternate lexicon file")

    p = sub.add_parser("predict", help="rank car models for a query")
    p.add_argument("--model", help="model bundle path")
    p.add_argument("--text", help="the car-speak query")
    p.add_argument("--top", type=int, default=5)

    p = sub.add_parser("serve", help="run the virtual-dealer HTTP service")
    p.add_argument("--model", help="model bundle path")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--static", help="directory of web UI assets to serve under /")

    return parser


def _require(value, flag: str):
    if value is None:
        raise CliError(f"missing required {flag}")
    return value


def _read_corpus(path_str: str) -> Corpus:
    path = Path(path_str)
    if not path.is_file():
        raise CliError(f"corpus file not found: {path}")
    with path.open("rb") as fh:
        return ingest_corpus(fh)


def _load_lexicon_text(path_str: str | None) -> tuple[str, PosLexicon]:
    if path_str is None:
        text = resources.files("carspeak.data").joinpath("lexicon.txt").read_text("utf-8")
    else:
        path = Path(path_str)
        if not path.is_file():
            raise CliError(f"lexicon file not found: {path}")
        text = path.read_text("utf-8")
    return text, parse_lexicon(text.splitlines())


def _open_out(path_str: str | None):
    if path_str is None:
        return sys.stdout.buffer, False
    return Path(path_str).open("wb"), True


def _cmd_ingest(args) -> int:
    corpus = _read_corpus(_require(args.input, "--input"))
    if args.min_year is not None or args.max_year is not None or args.drop_missing_year:
        lo = args.min_year if args.min_year is not None else -(10**9)
        hi = args.max_year if args.max_year is not None else 10**9
        corpus = filter_year_range(corpus, lo, hi, keep_missing=not args.drop_missing_year)
    out, close = _open_out(args.out)
    try:
        serialize_corpus(corpus, out)
    finally:
        if close:
            out.close()
    print(f"{len(corpus)} reviews", file=sys.stderr)
    return 0


def _cmd_stats(args) -> int:
    stats = corpus_stats(_read_corpus(_require(args.corpus, "--corpus")))
    print(
        json.dumps(
            {
                "n_reviews": stats.n_reviews,
                "n_models": stats.n_models,
                "n_makes": stats.n_makes,
            }
        )
    )
    return 0


def _cmd_topwords(args) -> int:
    if args.k < 1:
        raise CliError("--k must be >= 1")
    corpus = _read_corpus(_require(args.corpus, "--corpus"))
    _, lex = _load_lexicon_text(args.lexicon)
    for wf in top_k_frequencies(corpus, lex, args.k):
        print(f"{wf.word}\t{wf.count}")
    return 0


def _params_for(kind: str, args) -> KnnParams | RfParams | SvmParams | MlpParams:
    if kind == "knn":
        return KnnParams(k=args.k)
    if kind == "rf":
        return RfParams(
            n_trees=args.trees,
            max_depth=args.max_depth,
            min_split=args.min_split,
            seed=args.seed,
        )
    if kind == "svm":
        return SvmParams(
            lam=args.lam,
            epochs=args.epochs if args.epochs is not None else 20,
            seed=args.seed,
        )
    return MlpParams(
        hidden=args.hidden,
        epochs=args.epochs if args.epochs is not None else 50,
        batch=args.batch,
        lr=args.lr,
        seed=args.seed,
    )


def _cmd_train(args) -> int:
    kind = _require(args.kind, "--model")
    out_path = _require(args.out, "--out")
    corpus = _read_corpus(_require(args.corpus, "--corpus"))
    lexicon_text, lex = _load_lexicon_text(args.lexicon)
    data, vocab, idf, label_map = build_dataset(corpus, lex)
    params = _params_for(kind, args)
    model = train_model(kind, data, params)
    bundle = ModelBundle(
        format_version=FORMAT_VERSION,
        metadata={
            "corpus_hash": corpus_fingerprint(corpus),
            "seed": str(args.seed),
            "params": json.dumps(dataclasses.asdict(params), sort_keys=True),
            "lexicon": lexicon_text,
        },
        vocabulary=vocab,
        idf=idf,
        label_map=label_map,
        kind=kind,
        model=model,
    )
    with Path(out_path).open("wb") as fh:
        n_bytes = save_bundle(bundle, fh)
    print(f"saved {kind} model to {out_path} ({n_bytes} bytes)", file=sys.stderr)
    return 0


def _cmd_evaluate(args) -> int:
    corpus = _read_corpus(_require(args.corpus, "--corpus"))
    _, lex = _load_lexicon_text(args.lexicon)
    if args.models == "all":
        kinds = list(KINDS)
    else:
        kinds = [m.strip() for m in args.models.split(",") if m.strip()]
        for kind in kinds:
            if kind not in KINDS:
                raise CliError(f"unknown classifier {kind!r}")
        if not kinds:
            raise CliError("--models selected nothing")
    out, close = _open_out(args.out)
    try:
        for kind in kinds:
            report = cross_validate(
                corpus,
                lex,
                ClassifierSpec(kind=kind),
                k=args.folds,
                seed=args.seed,
                fit_scope=args.fit_scope,
            )
            out.write((json.dumps(report_record(report)) + "\n").encode("utf-8"))
            out.flush()
    finally:
        if close:
            out.close()
    return 0


def _load_model(path_str: str | None) -> ModelBundle:
    path = Path(_require(path_str, "--model"))
    if not path.is_file():
        raise CliError(f"model file not found: {path}")
    with path.open("rb") as fh:
        return load_bundle(fh)


def _cmd_predict(args) -> int:
    bundle = _load_model(args.model)
    text = _require(args.text, "--text")
    if args.top < 1:
        raise CliError("--top must be >= 1")
    print(query_result_json(answer_query(bundle, text, args.top)))
    return 0


def _cmd_serve(args) -> int:
    bundle = _load_model(args.model)
    static_dir = None
    if args.static is not None:
        static_dir = Path(args.static)
        if not static_dir.is_dir():
            raise CliError(f"static directory not found: {static_dir}")
    try:
        server = build_server(bundle, args.port, host=args.host, static_dir=static_dir)
    except OSError as exc:
        raise CliError(f"cannot bind {args.host}:{args.port}: {exc}") from exc
    host, port = server.server_address[:2]
    print(f"serving {bundle.kind} model on http://{host}:{port}/", file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.shutdown()
        server.server_close()
    return 0


_COMMANDS = {
    "ingest": _cmd_ingest,
    "stats": _cmd_stats,
    "topwords": _cmd_topwords,
    "train": _cmd_train,
    "evaluate": _cmd_evaluate,
    "predict": _cmd_predict,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except (CliError, CorpusError, ModelFormatError, ValueError) as exc:
        print(f"carspeak {args.command}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"carspeak {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
