"""Dynamic program over candidate subsets, O(2^m * m^2) after the tally.

``best[S]`` is the Kemeny score of the election restricted to ``S``. The
recurrence puts some ``c`` of ``S`` first::

    best[S] = min_c  best[S - c] + sum(votes ranking b above c for b in S - c)

Subsets are processed layer by layer (by size) with numpy. The inner sum is
looked up from two half-width tables so that no m x 2^m array is needed.
"""

from __future__ import annotations

import numpy as np

from .core import Election, Vote
from .searchtree import SearchStats, SolveResult

MAX_CANDIDATES = 25


def _half_tables(C: np.ndarray, lo: int, width: int) -> np.ndarray:
    """``W[c, x] = sum(C[lo + b, c] for b in bits(x))`` for x < 2**width."""
    m = C.shape[0]
    W = np.zeros((m, 1), dtype=np.int64)
    for b in range(width):
        W = np.concatenate([W, W + C[lo + b][:, None]], axis=1)
    return W


def subset_table(e: Election):
    """Fill the subset table; returns ``(best, choice)`` indexed by bitmask.

    ``choice[S]`` is the candidate put first in an optimal ordering of ``S``;
    ties go to the lowest index.
    """
    m = e.m
    if m > MAX_CANDIDATES:
        raise ValueError(f"dynamic program supports at most {MAX_CANDIDATES} candidates, got {m}")
    C = np.array(e.tally.matrix, dtype=np.int64).reshape(m, m)
    size = 1 << m
    worst = e.n * m * (m - 1) // 2
    dtype = np.int32 if worst < 2**31 - 1 else np.int64
    best = np.zeros(size, dtype=dtype)
    choice = np.zeros(size, dtype=np.uint8)
    if m == 0:
        return best, choice

    lb = m // 2
    W_lo = _half_tables(C, 0, lb).astype(dtype)
    W_hi = _half_tables(C, lb, m - lb).astype(dtype)
    lo_mask = (1 << lb) - 1

    masks = np.arange(size, dtype=np.int64)
    popcount = np.zeros(size, dtype=np.int8)
    for b in range(m):
        popcount += ((masks >> b) & 1).astype(np.int8)
    order = np.argsort(popcount, kind="stable")
    bounds = np.concatenate([[0], np.cumsum(np.bincount(popcount, minlength=m + 1))])
    del masks, popcount

    big = np.iinfo(dtype).max
    for p in range(1, m + 1):
        layer = order[bounds[p]:bounds[p + 1]]
        layer_best = np.full(layer.shape[0], big, dtype=dtype)
        layer_choice = np.zeros(layer.shape[0], dtype=np.uint8)
        for c in range(m):
            idx = np.flatnonzero((layer >> c) & 1)
            rest = layer[idx] ^ (1 << c)
            val = best[rest] + W_lo[c][rest & lo_mask] + W_hi[c][rest >> lb]
            better = val < layer_best[idx]
            hit = idx[better]
            layer_best[hit] = val[better]
            layer_choice[hit] = c
        best[layer] = layer_best
        choice[layer] = layer_choice
    return best, choice


def solve_dp(e: Election) -> SolveResult:
    best, choice = subset_table(e)
    S = (1 << e.m) - 1
    ranking = []
    while S:
        c = int(choice[S])
        ranking.append(c)
        S ^= 1 << c
    stats = SearchStats(nodes=1 << e.m, max_depth=e.m, iterations=1)
    return SolveResult(int(best[(1 << e.m) - 1]), Vote(tuple(ranking)), "dp", stats)
