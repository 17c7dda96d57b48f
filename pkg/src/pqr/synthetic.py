"""Generated corpora for tests, demos and the evaluation harness.

``proximity_corpus`` builds documents that share identical bags of words and
differ only in where the query terms sit, which separates proximity scoring
from any position-blind model.
"""

from __future__ import annotations

import random

from .corpus import Document
from .evaluation import Qrel


def random_corpus(n_docs: int, vocab_size: int = 20, max_len: int = 60, seed: int = 0,
                  prefix: str = "d") -> list[Document]:
    rng = random.Random(seed)
    vocab = [f"w{i}" for i in range(vocab_size)]
    docs = []
    width = len(str(n_docs - 1)) if n_docs else 1
    for i in range(n_docs):
        n = rng.randint(0, max_len)
        docs.append(Document(f"{prefix}{i:0{width}d}", " ".join(rng.choice(vocab) for _ in range(n))))
    return docs


def proximity_corpus(num_groups: int = 10, queries_per_group: int = 5, docs_per_group: int = 20,
                     near_gap: int = 1, far_gap: int = 60, seed: int = 0):
    """Documents and judgments where only term proximity identifies the answer.

    Every query has two terms. Within a group, all documents contain every
    group query term exactly once plus the same filler words, so their term
    frequencies are identical. The relevant document for a query places its
    two terms ``near_gap`` positions apart; every other term pair in every
    group document is at least ``far_gap`` positions apart. Document ids are
    shuffled so id order carries no information about relevance.

    Returns ``(documents, qrels)``.
    """
    if docs_per_group < queries_per_group:
        raise ValueError("need at least one document per query in each group")
    if not 1 <= near_gap <= 2 or far_gap < 50:
        raise ValueError("near_gap must be 1 or 2 and far_gap at least 50")
    rng = random.Random(seed)
    n_docs = num_groups * docs_per_group
    ids = [f"doc{i:04d}" for i in range(n_docs)]
    rng.shuffle(ids)
    id_iter = iter(ids)

    docs, qrels = [], []
    filler_vocab = [f"filler{i}" for i in range(40)]
    for g in range(num_groups):
        pairs = [(f"alpha{g}x{j}", f"beta{g}x{j}") for j in range(queries_per_group)]
        n_slots = 2 * queries_per_group
        fillers = [rng.choice(filler_vocab) for _ in range((n_slots + 1) * far_gap)]
        relevant_for = list(range(queries_per_group)) + [None] * (docs_per_group - queries_per_group)
        for target in relevant_for:
            order = [a for a, _ in pairs] + [b for _, b in pairs]
            near_after = None
            if target is not None:
                a, b = pairs[target]
                order.remove(b)
                order.insert(order.index(a) + 1, b)
                near_after = a
            tokens, used = [], 0
            for term in order:
                tokens.append(term)
                step = near_gap - 1 if term == near_after else far_gap
                tokens.extend(fillers[used:used + step])
                used += step
            tokens.extend(fillers[used:])
            doc_id = next(id_iter)
            docs.append(Document(doc_id, " ".join(tokens)))
            if target is not None:
                qrels.append(Qrel(" ".join(pairs[target]), frozenset([doc_id])))
    docs.sort(key=lambda d: d.doc_id)
    return docs, qrels
