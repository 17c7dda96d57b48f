"""Pairwise term proximity and the passage score built from it."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import NotEnoughTermsError


@dataclass(frozen=True)
class ProximityParams:
    """``s`` weights distance in the proximity decay; ``mode`` picks candidates."""

    s: float = 1.0
    mode: str = "strict"

    def __post_init__(self):
        if not (self.s > 0 and math.isfinite(self.s)):
            raise ValueError(f"s must be a positive real, got {self.s!r}")
        if self.mode not in ("strict", "relaxed"):
            raise ValueError(f"mode must be 'strict' or 'relaxed', got {self.mode!r}")


def gap(p_i: int, p_j: int) -> int:
    """Number of tokens strictly between two positions (0 for neighbours)."""
    return max(abs(p_i - p_j) - 1, 0)


def cp(p_i: int, p_j: int, s: float = 1.0) -> float:
    """Proximity of two occurrences: ``1 / (1 + s*ln(1 + gap))``.

    Neighbouring (or coincident) positions score exactly 1.
    """
    return 1.0 / (1.0 + s * math.log1p(gap(p_i, p_j)))


def cp_matrix(pos_i, pos_j, s: float = 1.0) -> np.ndarray:
    """``cp`` for every pair drawn from two position arrays, shape (len_i, len_j)."""
    a = np.asarray(pos_i, dtype=np.int64)[:, None]
    b = np.asarray(pos_j, dtype=np.int64)[None, :]
    d = np.maximum(np.abs(a - b) - 1, 0)
    return 1.0 / (1.0 + s * np.log1p(d))


def raw_score(positions, s: float = 1.0) -> float:
    """Sum of ``cp`` over all unordered pairs of the given positions.

    ``fsum`` makes the result independent of pair order, so passages with the
    same multiset of gaps score bit-identically and ties stay ties.
    """
    positions = list(positions)
    if len(positions) < 2:
        raise NotEnoughTermsError("a passage needs at least two terms to score")
    return math.fsum(cp(a, b, s) for a, b in combinations(positions, 2))


def passage_raw_score(passage, params: ProximityParams | float = 1.0) -> float:
    """Score a :class:`~pqr.passage.Passage` (or ``(term, pos)`` pairs)."""
    s = params.s if isinstance(params, ProximityParams) else float(params)
    choices = getattr(passage, "choices", passage)
    return raw_score([pos for _, pos in choices], s)


def max_raw_score(num_terms: int) -> float:
    return num_terms * (num_terms - 1) / 2
