"""Document ranking by best passage.

Each candidate document is scored by the raw score of its best passage.
Documents are ordered by that raw score; ``norm_score`` divides by the
largest raw score among all candidates, so the top document is exactly 1.
Per-document normalization would give every full-coverage document the
same score and could not rank them.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .index import PositionalIndex
from .passage import EnumerationBudget, Passage, best_passage
from .proximity import ProximityParams, cp, cp_matrix, max_raw_score, passage_raw_score, raw_score

__all__ = [
    "ProximityParams", "ScoredResult", "cp", "cp_matrix", "max_raw_score",
    "normalize_scores", "passage_raw_score", "rank_documents", "raw_score",
]


@dataclass(frozen=True)
class ScoredResult:
    doc_id: str
    best_passage: Passage
    raw_score: float
    norm_score: float
    approximate: bool = False
    fallback: bool = False  # single-term query scored by term frequency


def normalize_scores(results) -> list[tuple[str, float, float]]:
    """Attach ``raw / max(raw)`` to each ``(doc_id, raw)``; input order is kept.

    Returns an empty list when every score is zero.
    """
    results = list(results)
    if not results:
        return []
    top = max(raw for _, raw in results)
    if top <= 0:
        return []
    return [(doc_id, raw, raw / top) for doc_id, raw in results]


def _dedupe(terms: Iterable[str]) -> list[str]:
    return sorted(set(terms))


def _term_frequency_ranking(index, term) -> list[tuple[str, Passage, float, bool]]:
    rows = []
    for doc_id, positions in index.postings_list(term):
        rows.append((doc_id, Passage(doc_id, ((term, positions[0]),)), float(len(positions)), False))
    return rows


def rank_documents(index: PositionalIndex, terms, params: ProximityParams | None = None,
                   budget: EnumerationBudget | None = None, k: int = 10) -> list[ScoredResult]:
    """Top-``k`` documents by best-passage score.

    ``terms`` are normalized query terms; duplicates are ignored. A
    single-term query has no term pairs and is ranked by term frequency,
    with ``fallback=True`` on every result.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    params = params or ProximityParams()
    budget = budget or EnumerationBudget()
    terms = _dedupe(terms)
    if not terms:
        raise ValueError("query has no terms")

    fallback = len(terms) == 1
    if fallback:
        rows = _term_frequency_ranking(index, terms[0])
    else:
        rows = []
        for doc_id in index.candidate_documents(terms, params.mode):
            found = best_passage(index, doc_id, terms, params, budget)
            rows.append((doc_id, found.passage, found.score, found.approximate))

    if not rows:
        return []
    rows.sort(key=lambda r: (-r[2], r[0]))
    top = rows[0][2]
    return [
        ScoredResult(doc_id, passage, raw, raw / top, approximate, fallback)
        for doc_id, passage, raw, approximate in rows[:k]
    ]
