"""
Where fixed windows break
=========================

Sliding 300-token windows cannot hold two terms that are 400 tokens apart,
so windowed BM25 scores such a document like one that contains only one of
the terms. Passage enumeration has no window size and still finds the pair.
"""

from pqr import Bm25Params, Document, build_index, rank_documents
from pqr.baselines import bm25_window_scores, window_starts


def place(spots, length=600):
    words = ["pad"] * length
    for term, pos in spots:
        words[pos] = term
    return " ".join(words)


index = build_index([
    Document("both_far", place([("treaty", 100), ("signed", 500)])),
    Document("treaty_only", place([("treaty", 100)])),
    Document("signed_only", place([("signed", 500)])),
])
print("windows start at", window_starts(600, 300, 150))

scores = bm25_window_scores(index, ["treaty", "signed"], Bm25Params(window_tokens=300))
for doc_id, score in sorted(scores.items()):
    print(f"bm25-window {doc_id:<12} {score:.4f}")

for r in rank_documents(index, ["treaty", "signed"]):
    print("proximity  ", r.doc_id, f"{r.raw_score:.4f}", (r.best_passage.span_start, r.best_passage.span_end))
