"""Free-marginal multi-rater kappa (Randolph's kappa)."""

from __future__ import annotations

from typing import Sequence


def randolph_kappa(items: Sequence[Sequence[int]], k: int) -> float | None:
    """Chance-corrected agreement with a uniform 1/k chance baseline.

    ``items`` holds per-item category counts, e.g. [[2, 1], [3, 0]] for two
    items rated yes/no by three raters.  Rater counts may vary per item but
    every item needs at least two ratings.  Observed agreement per item is
    sum_c n_c(n_c - 1) / (n(n - 1)); kappa = (Po - 1/k) / (1 - 1/k).

    Returns None when there are no items, so an absent statistic never reads
    as "zero agreement".
    """
    if k < 2:
        raise ValueError(f"need at least 2 categories, got {k}")
    if not items:
        return None
    agreements = []
    for counts in items:
        if len(counts) != k:
            raise ValueError(f"item has {len(counts)} category counts, expected {k}")
        if any(c < 0 for c in counts):
            raise ValueError("category counts must be non-negative")
        n = sum(counts)
        if n < 2:
            raise ValueError(f"every item needs >= 2 ratings, got {n}")
        agreements.append(sum(c * (c - 1) for c in counts) / (n * (n - 1)))
    observed = sum(agreements) / len(agreements)
    chance = 1.0 / k
    return (observed - chance) / (1.0 - chance)
