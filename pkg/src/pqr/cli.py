"""Command-line interface: ``pqr build | search | eval | oracle``.

Exit status: 0 on success, 2 for usage or input errors, 3 when a passage
enumeration exceeds its budget. Settings resolve as command-line flag, then
``--config`` file (flat ``key = value`` lines), then built-in default.
The index directory falls back to the ``PQR_INDEX`` environment variable.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .baselines import Bm25Params, bm25_window_rank, vsm_rank
from .corpus import TokenizerConfig, load_corpus, query_terms
from .errors import BudgetExceededError, PqrError
from .evaluation import MODELS, format_table, load_qrels, reports_to_json, run_eval
from .index import build_index, load_index
from .passage import EnumerationBudget, exhaustive_scores
from .proximity import ProximityParams
from .scoring import rank_documents

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET = 3

DEFAULTS = {
    "index": None,
    "model": "proximity",
    "s": 1.0,
    "mode": "strict",
    "k": 10,
    "budget": 100_000,
    "on_exceed": "error",
    "format": None,
    "k1": 1.2,
    "b": 0.75,
    "window": 300,
    "stride": None,
}

CONVERTERS = {"s": float, "k": int, "budget": int, "k1": float, "b": float,
              "window": int, "stride": int}


class UsageError(Exception):
    pass


def read_config(path) -> dict:
    """Parse a flat ``key = value`` file; ``#`` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in DEFAULTS:
                raise UsageError(f"{path}:{lineno}: unknown setting {key!r}")
            out[key] = value
    return out


def resolve(args) -> dict:
    """Merge flags over config file over defaults."""
    settings = dict(DEFAULTS)
    if os.environ.get("PQR_INDEX"):
        settings["index"] = os.environ["PQR_INDEX"]
    if getattr(args, "config", None):
        settings.update(read_config(args.config))
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    for key, conv in CONVERTERS.items():
        if settings[key] is not None:
            try:
                settings[key] = conv(settings[key])
            except ValueError:
                raise UsageError(f"invalid value for {key}: {settings[key]!r}") from None
    if settings["model"] not in MODELS:
        raise UsageError(f"unknown model {settings['model']!r}; choose from {', '.join(MODELS)}")
    return settings


def _index_dir(settings) -> Path:
    if not settings["index"]:
        raise UsageError("no index directory: pass --index or set PQR_INDEX")
    return Path(settings["index"])


def _params(settings):
    try:
        prox = ProximityParams(settings["s"], settings["mode"])
        budget = EnumerationBudget(settings["budget"], settings["on_exceed"])
        bm25 = Bm25Params(settings["k1"], settings["b"], settings["window"], settings["stride"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if settings["k"] < 1:
        raise UsageError("k must be a positive integer")
    return prox, budget, bm25


def _fmt_float(x: float) -> str:
    return repr(float(x))


def cmd_build(args, out) -> int:
    settings = resolve(args)
    stopwords = set(args.stopword or ())
    if args.stopwords:
        with open(args.stopwords, encoding="utf-8") as fh:
            stopwords.update(w.strip() for w in fh if w.strip())
    cfg = TokenizerConfig(lowercase=not args.no_lowercase, stopwords=frozenset(stopwords),
                          min_token_len=args.min_token_len)
    docs = load_corpus(args.corpus)
    index = build_index(docs, cfg)
    index.save(_index_dir(settings))
    print(f"{index.num_docs} documents, {index.num_terms} terms", file=out)
    return EXIT_OK


def cmd_search(args, out) -> int:
    settings = resolve(args)
    prox, budget, bm25 = _params(settings)
    index = load_index(_index_dir(settings))
    terms = query_terms(args.query, index.tokenizer)
    model = settings["model"]
    fmt = settings["format"] or "tsv"
    k = settings["k"]

    if model == "proximity":
        results = rank_documents(index, terms, prox, budget, k) if terms else []
        rows = [
            {
                "rank": i,
                "doc_id": r.doc_id,
                "raw_score": r.raw_score,
                "norm_score": r.norm_score,
                "span": [r.best_passage.span_start, r.best_passage.span_end],
                "approximate": r.approximate,
                "fallback": r.fallback,
            }
            for i, r in enumerate(results, 1)
        ]
        header = ["rank", "doc_id", "raw_score", "norm_score", "span_start", "span_end",
                  "approximate", "fallback"]

        def cells(row):
            return [str(row["rank"]), row["doc_id"], _fmt_float(row["raw_score"]),
                    _fmt_float(row["norm_score"]), str(row["span"][0]), str(row["span"][1]),
                    str(row["approximate"]).lower(), str(row["fallback"]).lower()]
    else:
        if not terms:
            ranked = []
        elif model == "vsm":
            ranked = vsm_rank(index, terms, k)
        else:
            ranked = bm25_window_rank(index, terms, bm25, k)
        rows = [{"rank": i, "doc_id": d, "score": s} for i, (d, s) in enumerate(ranked, 1)]
        header = ["rank", "doc_id", "score"]

        def cells(row):
            return [str(row["rank"]), row["doc_id"], _fmt_float(row["score"])]

    if fmt == "json":
        json.dump({"model": model, "query": args.query, "terms": terms, "results": rows},
                  out, ensure_ascii=False, indent=2)
        out.write("\n")
    else:
        print("\t".join(header), file=out)
        for row in rows:
            print("\t".join(cells(row)), file=out)
    return EXIT_OK


def cmd_eval(args, out) -> int:
    settings = resolve(args)
    prox, budget, bm25 = _params(settings)
    index = load_index(_index_dir(settings))
    qrels = load_qrels(args.qrels)
    models = list(MODELS) if args.all_models else [settings["model"]]
    params = {"proximity": prox, "bm25-window": bm25, "vsm": None}
    reports = [run_eval(index, qrels, m, params[m], budget, settings["k"]) for m in models]

    if args.json_out:
        Path(args.json_out).write_text(reports_to_json(reports), encoding="utf-8")
    if (settings["format"] or "table") == "json":
        out.write(reports_to_json(reports))
    else:
        print(format_table(reports), file=out)
        for r in reports:
            print(f"{r.model}: {r.num_queries} queries, {r.num_unanswered} unanswered "
                  f"at k={r.k}", file=out)
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    settings = resolve(args)
    _, budget, _ = _params(settings)
    # the oracle is exhaustive by definition; never fall back to the heuristic
    budget = EnumerationBudget(budget.max_combinations, "error")
    index = load_index(_index_dir(settings))
    terms = sorted(set(query_terms(args.query, index.tokenizer)))
    if len(terms) < 2:
        raise UsageError("the oracle needs a query with at least two distinct terms")
    rows = exhaustive_scores(index, args.doc_id, terms, settings["s"], budget)
    if (settings["format"] or "tsv") == "json":
        data = {"doc_id": args.doc_id, "terms": terms,
                "passages": [{"positions": list(p.positions), "score": s} for p, s in rows]}
        json.dump(data, out, indent=2, ensure_ascii=False)
        out.write("\n")
    else:
        print("\t".join(["score"] + terms), file=out)
        for passage, score in rows:
            print("\t".join([_fmt_float(score)] + [str(p) for p in passage.positions]), file=out)
    return EXIT_OK


def _add_common(p, formats):
    p.add_argument("--index", help="index directory (default: $PQR_INDEX)")
    p.add_argument("--config", help="flat key = value settings file")
    p.add_argument("--format", choices=formats)


def _add_model_flags(p):
    p.add_argument("--model", help=f"one of {', '.join(MODELS)} (default proximity)")
    p.add_argument("--s", type=float, help="distance weight of the proximity function (default 1.0)")
    p.add_argument("--mode", choices=("strict", "relaxed"))
    p.add_argument("--k", type=int, help="number of results / MRR cutoff (default 10)")
    p.add_argument("--budget", type=int, help="max passages enumerated per document (default 100000)")
    p.add_argument("--on-exceed", dest="on_exceed", choices=("error", "approximate"))
    p.add_argument("--k1", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--window", type=int, help="BM25 window size in tokens (default 300)")
    p.add_argument("--stride", type=int, help="BM25 window stride (default window/2)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pqr", description="Passage-proximity document retrieval.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="index a JSON-lines corpus")
    p.add_argument("corpus")
    p.add_argument("--index", help="output index directory (default: $PQR_INDEX)")
    p.add_argument("--config")
    p.add_argument("--no-lowercase", action="store_true")
    p.add_argument("--stopwords", help="file with one stopword per line")
    p.add_argument("--stopword", action="append", help="add a stopword (repeatable)")
    p.add_argument("--min-token-len", type=int, default=1)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("search", help="rank documents for a query")
    p.add_argument("query")
    _add_common(p, ("tsv", "json"))
    _add_model_flags(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("eval", help="MRR over a qrels file")
    p.add_argument("qrels")
    _add_common(p, ("table", "json"))
    _add_model_flags(p)
    p.add_argument("--all-models", action="store_true", help="evaluate every model")
    p.add_argument("--json-out", help="also write the JSON report here")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("oracle", help="list every passage of one document with its score")
    p.add_argument("doc_id")
    p.add_argument("query")
    _add_common(p, ("tsv", "json"))
    p.add_argument("--s", type=float)
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args, out)
    except BudgetExceededError as exc:
        print(f"pqr: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (PqrError, UsageError, OSError) as exc:
        print(f"pqr: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
