"""
Finding the best passage in a document
======================================

A passage picks one occurrence of every query term. The document score is
the score of its best passage: the sum of pairwise proximities.
"""

from pqr import Document, EnumerationBudget, best_passage, build_index, enumerate_passages
from pqr.passage import exhaustive_scores

text = ("the king moved the capital in the spring , and later the king "
        "moved the palace near the river capital")
index = build_index([Document("chronicle", text)])
terms = ["king", "capital", "moved"]

for term in terms:
    print(term, index.positions_of(term, "chronicle"))

# every candidate passage, best first
for passage, score in exhaustive_scores(index, "chronicle", terms)[:5]:
    print(f"{score:.4f}", dict(passage.choices))
print(len(enumerate_passages(index, "chronicle", terms)), "candidate passages")

found = best_passage(index, "chronicle", terms)
print("best:", found.passage.span_start, "-", found.passage.span_end, f"score {found.score:.4f}")

###############################################################################
# Long documents can have too many candidates to score. With a budget the
# search either fails or, on request, switches to an anchor-greedy heuristic
# whose result is flagged as approximate.
long_text = " ".join(["king pad capital pad pad moved pad pad pad"] * 60)
big = build_index([Document("long", long_text)])
approx = best_passage(big, "long", terms, budget=EnumerationBudget(10_000, "approximate"))
print("approximate:", approx.approximate, f"score {approx.score:.4f}")
