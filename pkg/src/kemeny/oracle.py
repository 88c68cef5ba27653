"""Exhaustive solver over all m! lists, used as ground truth in tests."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import Election, Vote
from .searchtree import SearchStats, SolveResult

MAX_CANDIDATES = 10


@dataclass
class OracleResult:
    score: int
    all_optimal: list[tuple[int, ...]] = field(default_factory=list)


def lexicographic_permutations(k: int) -> np.ndarray:
    """All orderings of ``range(k)`` as rows, in lexicographic order."""
    table = np.zeros((1, 0), dtype=np.int8)
    for size in range(1, k + 1):
        blocks = []
        for first in range(size):
            rest = np.array([x for x in range(size) if x != first], dtype=np.int8)
            block = np.empty((table.shape[0], size), dtype=np.int8)
            block[:, 0] = first
            block[:, 1:] = rest[table]
            blocks.append(block)
        table = np.concatenate(blocks)
    return table


def _scores(rows: np.ndarray, C: np.ndarray) -> np.ndarray:
    total = np.zeros(rows.shape[0], dtype=np.int64)
    width = rows.shape[1]
    for i in range(width):
        above = rows[:, i]
        for j in range(i + 1, width):
            total += C[rows[:, j], above]
    return total


def brute_force(e: Election, cap: Optional[int] = None) -> OracleResult:
    """Minimum score over every list, plus the optimal lists in lexicographic order.

    ``cap`` limits how many optimal lists are kept. The search is split by
    first candidate so only (m-1)! rows are live at once.
    """
    m = e.m
    if m > MAX_CANDIDATES:
        raise ValueError(f"brute force supports at most {MAX_CANDIDATES} candidates, got {m}")
    if m <= 1:
        return OracleResult(0, [tuple(range(m))])
    C = np.array(e.tally.matrix, dtype=np.int64)
    tail = lexicographic_permutations(m - 1)
    best = None
    optima: list[tuple[int, ...]] = []
    for first in range(m):
        rest = np.array([x for x in range(m) if x != first], dtype=np.int8)
        rows = np.empty((tail.shape[0], m), dtype=np.int8)
        rows[:, 0] = first
        rows[:, 1:] = rest[tail]
        scores = _scores(rows, C)
        low = int(scores.min())
        if best is None or low < best:
            best = low
            optima = []
        if low == best and (cap is None or len(optima) < cap):
            hits = np.flatnonzero(scores == low)
            if cap is not None:
                hits = hits[: cap - len(optima)]
            optima.extend(tuple(int(x) for x in rows[h]) for h in hits)
    return OracleResult(best, optima)


def solve_brute(e: Election) -> SolveResult:
    res = brute_force(e, cap=1)
    stats = SearchStats(nodes=math.factorial(e.m), max_depth=e.m, iterations=1)
    return SolveResult(res.score, Vote(res.all_optimal[0]), "brute", stats)
