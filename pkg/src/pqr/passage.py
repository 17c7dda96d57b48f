"""Candidate passages and best-passage search.

A passage picks exactly one occurrence position for each query term in a
document, so the candidate set of a document is the Cartesian product of
the per-term position lists. The exact search scores that whole product
(vectorized); when the product is larger than the budget, a caller may
opt into the anchor-greedy heuristic instead.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from itertools import product
from typing import NamedTuple

import numpy as np

from .errors import BudgetExceededError, NotEnoughTermsError, TermAbsentError
from .index import PositionalIndex
from .proximity import ProximityParams, cp_matrix, raw_score

# scores this close (relative) count as tied; ties go to the smallest position tuple
TIE_RTOL = 1e-12


@dataclass(frozen=True)
class EnumerationBudget:
    max_combinations: int = 100_000
    on_exceed: str = "error"  # or "approximate"

    def __post_init__(self):
        if self.max_combinations < 1:
            raise ValueError("max_combinations must be >= 1")
        if self.on_exceed not in ("error", "approximate"):
            raise ValueError(f"on_exceed must be 'error' or 'approximate', got {self.on_exceed!r}")


@dataclass(frozen=True)
class Passage:
    doc_id: str
    choices: tuple[tuple[str, int], ...]  # (term, position), sorted by term

    def __post_init__(self):
        terms = [t for t, _ in self.choices]
        if len(set(terms)) != len(terms):
            raise ValueError("passage terms must be distinct")

    @property
    def terms(self) -> tuple[str, ...]:
        return tuple(t for t, _ in self.choices)

    @property
    def positions(self) -> tuple[int, ...]:
        return tuple(p for _, p in self.choices)

    @property
    def span_start(self) -> int:
        return min(self.positions)

    @property
    def span_end(self) -> int:
        return max(self.positions)


class BestPassage(NamedTuple):
    passage: Passage
    score: float
    approximate: bool = False


def _s(scorer) -> float:
    if isinstance(scorer, ProximityParams):
        return scorer.s
    return float(scorer)


def _position_lists(index: PositionalIndex, doc_id: str, terms) -> tuple[list[str], list[tuple[int, ...]]]:
    terms = sorted(set(terms))
    lists = []
    for term in terms:
        pos = index.positions_of(term, doc_id)
        if not pos:
            raise TermAbsentError(term, doc_id)
        lists.append(pos)
    return terms, lists


def num_combinations(position_lists) -> int:
    return math.prod(len(p) for p in position_lists)


def enumerate_passages(index: PositionalIndex, doc_id: str, terms,
                       budget: EnumerationBudget | None = None) -> list[Passage]:
    """Every passage of ``doc_id`` for ``terms``, in lexicographic order.

    Terms are ordered alphabetically; within that, position tuples ascend.
    """
    budget = budget or EnumerationBudget()
    terms, lists = _position_lists(index, doc_id, terms)
    if len(terms) < 2:
        raise NotEnoughTermsError("enumeration needs at least two distinct terms")
    n = num_combinations(lists)
    if n > budget.max_combinations:
        raise BudgetExceededError(n, budget.max_combinations)
    return [Passage(doc_id, tuple(zip(terms, combo))) for combo in product(*lists)]


def _score_grid(lists, s: float) -> np.ndarray:
    """Passage score for every cell of the position-product grid."""
    shape = tuple(len(p) for p in lists)
    total = np.zeros(shape)
    t = len(lists)
    for i in range(t):
        for j in range(i + 1, t):
            view = [1] * t
            view[i], view[j] = shape[i], shape[j]
            total = total + cp_matrix(lists[i], lists[j], s).reshape(view)
    return total


def _exact(doc_id, terms, lists, s) -> BestPassage:
    grid = _score_grid(lists, s)
    flat = grid.ravel()
    best = flat.max()
    # C-order flat index == lexicographic order of position tuples
    first = int(np.flatnonzero(flat >= best - TIE_RTOL * max(1.0, best))[0])
    idx = np.unravel_index(first, grid.shape)
    choices = tuple((t, lists[k][i]) for k, (t, i) in enumerate(zip(terms, idx)))
    # rescore the winner exactly; the grid sum is only used to locate it
    return BestPassage(Passage(doc_id, choices), raw_score([p for _, p in choices], s), False)


def _nearest(positions, anchor: int) -> int:
    k = bisect_left(positions, anchor)
    if k == 0:
        return positions[0]
    if k == len(positions):
        return positions[-1]
    before, after = positions[k - 1], positions[k]
    # equal distance goes to the smaller position
    return before if anchor - before <= after - anchor else after


def anchor_greedy(doc_id, terms, lists, s: float) -> BestPassage:
    """Heuristic search: anchor on each occurrence, snap other terms to it.

    Every returned passage is a member of the candidate set, so its score
    never exceeds the exact optimum.
    """
    best_score, best_combo = 0.0, None
    for a, anchor_list in enumerate(lists):
        for anchor in anchor_list:
            combo = tuple(anchor if k == a else _nearest(p, anchor) for k, p in enumerate(lists))
            score = raw_score(combo, s)
            tol = TIE_RTOL * max(1.0, best_score)
            if best_combo is None or score > best_score + tol or (
                    score >= best_score - tol and combo < best_combo):
                best_score, best_combo = score, combo
    return BestPassage(Passage(doc_id, tuple(zip(terms, best_combo))), best_score, True)


def best_passage(index: PositionalIndex, doc_id: str, terms, scorer=1.0,
                 budget: EnumerationBudget | None = None) -> BestPassage:
    """Highest-scoring passage of ``doc_id`` over the query terms it contains.

    ``scorer`` is a :class:`ProximityParams` or a bare ``s`` value. Terms
    missing from the document are skipped; at least two must remain.
    """
    budget = budget or EnumerationBudget()
    s = _s(scorer)
    present = [t for t in sorted(set(terms)) if index.positions_of(t, doc_id)]
    if len(present) < 2:
        raise NotEnoughTermsError(
            f"document {doc_id!r} contains fewer than two of the query terms")
    terms, lists = _position_lists(index, doc_id, present)
    n = num_combinations(lists)
    if n <= budget.max_combinations:
        return _exact(doc_id, terms, lists, s)
    if budget.on_exceed == "error":
        raise BudgetExceededError(n, budget.max_combinations)
    return anchor_greedy(doc_id, terms, lists, s)


def exhaustive_scores(index: PositionalIndex, doc_id: str, terms, s: float = 1.0,
                      budget: EnumerationBudget | None = None) -> list[tuple[Passage, float]]:
    """Reference table: every passage with its score, best first.

    Scored one passage at a time in plain Python, independently of the
    vectorized path used by :func:`best_passage`. Equal scores are ordered
    by position tuple.
    """
    rows = [(p, raw_score(p.positions, s)) for p in enumerate_passages(index, doc_id, terms, budget)]
    rows.sort(key=lambda r: (-r[1], r[0].positions))
    return rows
