"""Position-blind and fixed-window comparison models.

``vsm_rank`` is tf-idf cosine ranking over whole documents. ``bm25_window_rank``
slides fixed-size windows over each document, scores every window with BM25
(windows play the role of documents for all collection statistics) and keeps
the best window per document.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from collections import defaultdict
from dataclasses import dataclass

from .index import PositionalIndex


@dataclass(frozen=True)
class Bm25Params:
    k1: float = 1.2
    b: float = 0.75
    window_tokens: int = 300
    window_stride: int | None = None  # defaults to half a window

    def __post_init__(self):
        if self.k1 < 0:
            raise ValueError("k1 must be >= 0")
        if not 0 <= self.b <= 1:
            raise ValueError("b must lie in [0, 1]")
        if self.window_tokens < 1:
            raise ValueError("window_tokens must be positive")
        if self.window_stride is None:
            object.__setattr__(self, "window_stride", max(1, self.window_tokens // 2))
        if not 1 <= self.window_stride <= self.window_tokens:
            raise ValueError("window_stride must be in [1, window_tokens]")


def _cached(index, key, build):
    # indexes are immutable after build/load, so derived statistics can live on them
    cache = index.__dict__.setdefault("_derived", {})
    if key not in cache:
        cache[key] = build()
    return cache[key]


def _idf_vsm(index: PositionalIndex, term: str) -> float:
    df = index.doc_freq(term)
    return math.log(index.num_docs / df) if df else 0.0


def _doc_norms(index: PositionalIndex) -> dict[str, float]:
    sq: dict[str, float] = defaultdict(float)
    for term, by_doc in index.postings.items():
        idf = _idf_vsm(index, term)
        for doc_id, positions in by_doc.items():
            sq[doc_id] += (len(positions) * idf) ** 2
    return {doc_id: math.sqrt(v) for doc_id, v in sq.items()}


def vsm_scores(index: PositionalIndex, terms) -> dict[str, float]:
    """Cosine of tf-idf vectors for every document sharing a term with the query."""
    terms = sorted(set(terms))
    norms = _cached(index, "vsm_norms", lambda: _doc_norms(index))
    weights = {t: _idf_vsm(index, t) for t in terms if index.doc_freq(t)}
    q_norm = math.sqrt(sum(w * w for w in weights.values()))
    dots: dict[str, float] = defaultdict(float)
    for term, w in weights.items():
        for doc_id, positions in index.postings[term].items():
            dots[doc_id] += len(positions) * w * w
    out = {}
    for doc_id, dot in dots.items():
        denom = q_norm * norms.get(doc_id, 0.0)
        out[doc_id] = dot / denom if denom > 0 else 0.0
    return out


def _top_k(scores: dict[str, float], k: int) -> list[tuple[str, float]]:
    if k < 1:
        raise ValueError("k must be a positive integer")
    return sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))[:k]


def vsm_rank(index: PositionalIndex, terms, k: int = 10) -> list[tuple[str, float]]:
    return _top_k(vsm_scores(index, terms), k)


def window_starts(length: int, window: int, stride: int) -> list[int]:
    """Start offsets of the fixed windows covering a document of ``length`` tokens.

    A document no longer than one window gets a single window; otherwise the
    last window is the first one reaching the end of the document.
    """
    if length <= window:
        return [0]
    count = math.ceil((length - window) / stride) + 1
    return [i * stride for i in range(count)]


def _window_stats(index: PositionalIndex, params: Bm25Params) -> tuple[int, float]:
    n = 0
    total = 0
    for info in index.doc_table.values():
        for start in window_starts(info.token_count, params.window_tokens, params.window_stride):
            n += 1
            total += min(params.window_tokens, info.token_count - start)
    return n, (total / n if n else 0.0)


def _window_tfs(positions, starts, window) -> list[int]:
    return [bisect_left(positions, s + window) - bisect_left(positions, s) for s in starts]


def bm25_window_scores(index: PositionalIndex, terms, params: Bm25Params | None = None) -> dict[str, float]:
    params = params or Bm25Params()
    W, stride = params.window_tokens, params.window_stride
    n_windows, avgdl = _cached(index, ("windows", W, stride), lambda: _window_stats(index, params))
    terms = sorted(set(terms))

    # per document: list of per-window tf vectors, one per term
    tfs: dict[str, dict[str, list[int]]] = defaultdict(dict)
    df: dict[str, int] = {}
    for term in terms:
        df[term] = 0
        for doc_id, positions in index.postings.get(term, {}).items():
            starts = window_starts(index.doc_table[doc_id].token_count, W, stride)
            counts = _window_tfs(positions, starts, W)
            tfs[doc_id][term] = counts
            df[term] += sum(1 for c in counts if c)

    idf = {t: math.log(1 + (n_windows - df[t] + 0.5) / (df[t] + 0.5)) for t in terms if df[t]}
    out = {}
    for doc_id, by_term in tfs.items():
        length = index.doc_table[doc_id].token_count
        starts = window_starts(length, W, stride)
        best = 0.0
        for w, start in enumerate(starts):
            dl = min(W, length - start)
            norm = params.k1 * (1 - params.b + params.b * dl / avgdl) if avgdl else params.k1
            score = 0.0
            for term, counts in by_term.items():
                tf = counts[w]
                if tf:
                    score += idf[term] * tf * (params.k1 + 1) / (tf + norm)
            best = max(best, score)
        out[doc_id] = best
    return out


def bm25_window_rank(index: PositionalIndex, terms, params: Bm25Params | None = None,
                     k: int = 10) -> list[tuple[str, float]]:
    return _top_k(bm25_window_scores(index, terms, params), k)
