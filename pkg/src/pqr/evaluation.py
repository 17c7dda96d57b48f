"""Mean reciprocal rank over a query/judgment set."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

from .baselines import Bm25Params, bm25_window_rank, vsm_rank
from .corpus import query_terms
from .errors import QrelsError
from .index import PositionalIndex
from .passage import EnumerationBudget
from .proximity import ProximityParams
from .scoring import rank_documents

log = logging.getLogger(__name__)

MODELS = ("vsm", "bm25-window", "proximity")

MODEL_LABELS = {
    "vsm": "Vector space model (VSM)",
    "bm25-window": "Fixed-window BM25",
    "proximity": "Passage proximity scoring",
}


class Qrel(NamedTuple):
    query: str
    relevant: frozenset[str]


class QueryResult(NamedTuple):
    query: str
    rank: int | None
    reciprocal_rank: float


@dataclass
class EvalReport:
    model: str
    mrr: float
    k: int
    per_query: list[QueryResult] = field(default_factory=list)
    num_queries: int = 0
    num_unanswered: int = 0
    num_missing_judgments: int = 0

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "mrr": self.mrr,
            "k": self.k,
            "num_queries": self.num_queries,
            "num_unanswered": self.num_unanswered,
            "num_missing_judgments": self.num_missing_judgments,
            "per_query": [
                {"query": q.query, "rank": q.rank, "reciprocal_rank": q.reciprocal_rank}
                for q in self.per_query
            ],
        }


def load_qrels(path) -> list[Qrel]:
    """Read ``{"query": ..., "relevant": [...]}`` lines."""
    path = Path(path)
    out = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise QrelsError(f"invalid JSON ({exc.msg})", path, lineno) from None
            if not isinstance(rec, dict):
                raise QrelsError("record is not a JSON object", path, lineno)
            query = rec.get("query")
            relevant = rec.get("relevant")
            if not isinstance(query, str) or not query.strip():
                raise QrelsError("missing or empty 'query'", path, lineno)
            if (not isinstance(relevant, list) or not relevant
                    or not all(isinstance(r, str) and r for r in relevant)):
                raise QrelsError("'relevant' must be a non-empty list of doc ids", path, lineno)
            out.append(Qrel(query, frozenset(relevant)))
    return out


def write_qrels(qrels, path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for q in qrels:
            rec = {"query": q.query, "relevant": sorted(q.relevant)}
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")


def first_relevant_rank(ranking, relevant) -> int | None:
    for i, doc_id in enumerate(ranking, 1):
        if doc_id in relevant:
            return i
    return None


def reciprocal_rank(ranking, relevant) -> float:
    rank = first_relevant_rank(ranking, relevant)
    return 1.0 / rank if rank else 0.0


def retrieve(index: PositionalIndex, terms, model: str = "proximity", params=None,
             budget: EnumerationBudget | None = None, k: int = 10) -> list[str]:
    """Ranked doc ids for normalized ``terms`` under ``model``."""
    if model == "proximity":
        return [r.doc_id for r in rank_documents(index, terms, params, budget, k)]
    if model == "vsm":
        return [d for d, _ in vsm_rank(index, terms, k)]
    if model == "bm25-window":
        return [d for d, _ in bm25_window_rank(index, terms, params, k)]
    raise ValueError(f"unknown model {model!r}; choose from {', '.join(MODELS)}")


def _default_params(model):
    if model == "proximity":
        return ProximityParams()
    if model == "bm25-window":
        return Bm25Params()
    return None


def run_eval(index: PositionalIndex, qrels, model: str = "proximity", params=None,
             budget: EnumerationBudget | None = None, k: int = 10) -> EvalReport:
    """Evaluate ``model`` on ``qrels``; unanswered queries count as 0."""
    qrels = list(qrels)
    if not qrels:
        raise ValueError("qrels is empty")
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}; choose from {', '.join(MODELS)}")
    if params is None:
        params = _default_params(model)

    missing = 0
    per_query = []
    for q in qrels:
        unknown = [d for d in q.relevant if d not in index.doc_table]
        if unknown:
            missing += len(unknown)
            log.warning("query %r: relevant ids not in index: %s", q.query, ", ".join(sorted(unknown)))
        terms = query_terms(q.query, index.tokenizer)
        ranking = retrieve(index, terms, model, params, budget, k) if terms else []
        rank = first_relevant_rank(ranking, q.relevant)
        per_query.append(QueryResult(q.query, rank, 1.0 / rank if rank else 0.0))

    mrr = sum(r.reciprocal_rank for r in per_query) / len(per_query)
    return EvalReport(
        model=model,
        mrr=mrr,
        k=k,
        per_query=per_query,
        num_queries=len(per_query),
        num_unanswered=sum(1 for r in per_query if r.rank is None),
        num_missing_judgments=missing,
    )


def format_table(reports) -> str:
    """Plain-text comparison table, one row per model."""
    rows = [(MODEL_LABELS.get(r.model, r.model), f"{r.mrr:.4f}") for r in reports]
    width = max([len("Retrieval Model")] + [len(name) for name, _ in rows])
    lines = [f"{'Retrieval Model':<{width}}  MRR", f"{'-' * width}  ------"]
    lines += [f"{name:<{width}}  {mrr}" for name, mrr in rows]
    return "\n".join(lines)


def reports_to_json(reports) -> str:
    return json.dumps({"reports": [r.to_dict() for r in reports]}, indent=2, sort_keys=True,
                      ensure_ascii=False) + "\n"
