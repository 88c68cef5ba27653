"""Random instance generation and per-instance property reports."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from itertools import combinations

import numpy as np

from .core import Candidate, Election, Vote, kt_distance
from .dirtiness import dirty_pairs, majority_dirty_pairs
from .reduce import condorcet_reduce


@dataclass(frozen=True)
class GenParams:
    """Generator settings.

    Every vote starts from the reference order ``c1 > c2 > ... > cm`` and
    receives a Poisson(``w``) number of swaps; each swap exchanges two
    candidates whose reference positions differ by at most ``d``. The random
    source is numpy's PCG64 seeded with ``seed``.
    """

    m: int
    n: int
    w: float
    d: int
    seed: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.w < 0:
            raise ValueError("w must be non-negative")
        if self.m == 1:
            if self.d not in (0, 1):
                raise ValueError("d must be 0 or 1 for a single candidate")
        elif not 1 <= self.d <= self.m - 1:
            raise ValueError(f"d must lie in 1..{self.m - 1}")


def generate(p: GenParams) -> Election:
    rng = np.random.Generator(np.random.PCG64(p.seed))
    m = p.m
    swappable = [(i, j) for i in range(m) for j in range(i + 1, min(m, i + p.d + 1))]
    votes = []
    for _ in range(p.n):
        order = list(range(m))
        where = list(range(m))
        swaps = int(rng.poisson(p.w)) if swappable else 0
        for _ in range(swaps):
            a, b = swappable[int(rng.integers(len(swappable)))]
            i, j = where[a], where[b]
            order[i], order[j] = b, a
            where[a], where[b] = j, i
        votes.append(Vote(tuple(order)))
    cands = tuple(Candidate(i, f"c{i + 1}") for i in range(m))
    return Election(cands, tuple(votes))


def two_decimals(x) -> str:
    """Round an exact rational half-up to two decimals."""
    x = Fraction(x)
    value = Decimal(x.numerator) / Decimal(x.denominator)
    return str(value.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class PropertyReport:
    votes: int
    candidates: int
    dirty_pairs: int
    dirty_pairs_percent: Fraction
    majority_dirty_pairs: int
    majority_dirty_percent: Fraction
    majority_nondirty_pairs: int
    majority_nondirty_percent: Fraction
    min_score: int
    max_score: int
    max_range: int
    avg_kt: Fraction
    reduced_candidates: int

    def rendered(self) -> dict[str, str]:
        """Field name to display string; rationals are shown with two decimals."""
        out = {}
        for key, value in asdict(self).items():
            out[key] = two_decimals(value) if isinstance(value, Fraction) else str(value)
        return out

    def as_json(self) -> dict:
        out = {}
        for key, value in asdict(self).items():
            out[key] = float(two_decimals(value)) if isinstance(value, Fraction) else value
        return out


def max_range(e: Election) -> int:
    """Largest spread of one candidate's positions across the votes."""
    if e.m == 0:
        return 0
    spread = 0
    for c in range(e.m):
        positions = [v.positions[c] for v in e.votes]
        spread = max(spread, max(positions) - min(positions))
    return spread


def average_kt(e: Election) -> Fraction:
    pairs = list(combinations(e.votes, 2))
    if not pairs:
        return Fraction(0)
    return Fraction(sum(kt_distance(v.ranking, w.ranking) for v, w in pairs), len(pairs))


def analyze(e: Election) -> PropertyReport:
    t = e.tally
    total = e.m * (e.m - 1) // 2

    def pct(k):
        return Fraction(100 * k, total) if total else Fraction(0)

    n_dirty = len(dirty_pairs(t))
    n_md = len(majority_dirty_pairs(t))
    min_score = sum(t.min_count(a, b) for a, b in t.pairs())
    max_score = sum(t.max_count(a, b) for a, b in t.pairs())
    return PropertyReport(
        votes=e.n,
        candidates=e.m,
        dirty_pairs=n_dirty,
        dirty_pairs_percent=pct(n_dirty),
        majority_dirty_pairs=n_md,
        majority_dirty_percent=pct(n_md),
        majority_nondirty_pairs=total - n_md,
        majority_nondirty_percent=pct(total - n_md),
        min_score=min_score,
        max_score=max_score,
        max_range=max_range(e),
        avg_kt=average_kt(e),
        reduced_candidates=len(condorcet_reduce(e).removed),
    )
