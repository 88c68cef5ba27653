"""Election model, file format, and the pairwise arithmetic shared by all solvers.

Candidates are dense integer indices ``0..m-1``; names only matter for I/O.
An ordered pair ``(x, y)`` always means "x is preferred to y".
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Sequence

Pair = tuple[int, int]

NAME_RE = re.compile(r"^[A-Za-z0-9_+.\-]+$")


class ElectionFormatError(ValueError):
    """Raised for malformed election documents or inconsistent votes."""


@dataclass(frozen=True)
class Candidate:
    index: int
    name: str


@dataclass(frozen=True)
class Vote:
    """A complete, tie-free preference list; ``ranking[0]`` is the best candidate."""

    ranking: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.ranking, tuple):
            object.__setattr__(self, "ranking", tuple(self.ranking))
        if sorted(self.ranking) != list(range(len(self.ranking))):
            raise ValueError(f"vote is not a permutation of 0..{len(self.ranking) - 1}: {self.ranking}")

    def __len__(self):
        return len(self.ranking)

    def __iter__(self):
        return iter(self.ranking)

    @cached_property
    def positions(self) -> tuple[int, ...]:
        pos = [0] * len(self.ranking)
        for i, c in enumerate(self.ranking):
            pos[c] = i
        return tuple(pos)


@dataclass(frozen=True)
class Election:
    candidates: tuple[Candidate, ...]
    votes: tuple[Vote, ...]

    def __post_init__(self):
        object.__setattr__(self, "candidates", tuple(self.candidates))
        object.__setattr__(self, "votes", tuple(v if isinstance(v, Vote) else Vote(tuple(v)) for v in self.votes))
        if not self.votes:
            raise ValueError("an election needs at least one vote")
        for i, c in enumerate(self.candidates):
            if c.index != i:
                raise ValueError("candidate indices must be contiguous from 0")
        names = [c.name for c in self.candidates]
        if len(set(names)) != len(names) or not all(names):
            raise ValueError("candidate names must be unique and non-empty")
        m = len(self.candidates)
        for v in self.votes:
            if len(v) != m:
                raise ValueError(f"vote has {len(v)} candidates, expected {m}")

    @classmethod
    def from_rankings(cls, rankings: Iterable[Sequence[str]]) -> "Election":
        """Build an election from name sequences; the first ranking fixes the indices."""
        rankings = [list(r) for r in rankings]
        if not rankings:
            raise ElectionFormatError("no votes")
        names = rankings[0]
        index = {}
        for name in names:
            if name in index:
                raise ElectionFormatError(f"duplicate candidate {name!r} in vote 1")
            index[name] = len(index)
        votes = []
        for lineno, r in enumerate(rankings, 1):
            seen = set()
            for name in r:
                if name in seen:
                    raise ElectionFormatError(f"duplicate candidate {name!r} in vote {lineno}")
                seen.add(name)
            if seen != set(index):
                raise ElectionFormatError(f"vote {lineno} is not a permutation of the candidates of vote 1")
            votes.append(Vote(tuple(index[name] for name in r)))
        cands = tuple(Candidate(i, name) for i, name in enumerate(names))
        return cls(cands, tuple(votes))

    @property
    def m(self) -> int:
        return len(self.candidates)

    @property
    def n(self) -> int:
        return len(self.votes)

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.candidates]

    def index_of(self, name: str) -> int:
        for c in self.candidates:
            if c.name == name:
                return c.index
        raise KeyError(name)

    def vote_from_names(self, names: Sequence[str]) -> Vote:
        return Vote(tuple(self.index_of(x) for x in names))

    def format_ranking(self, ranking: Iterable[int], sep: str = " > ") -> str:
        return sep.join(self.candidates[c].name for c in ranking)

    @cached_property
    def tally(self) -> "PairTally":
        return pairwise_tally(self)


def parse_election(text: str) -> Election:
    """Parse the line-oriented election format.

    One vote per line, names separated by ``>``; ``#`` comments and blank
    lines are skipped. Candidate indices follow the first vote line.
    """
    rankings = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = [tok.strip() for tok in line.split(">")]
        for tok in tokens:
            if not NAME_RE.match(tok):
                raise ElectionFormatError(f"line {lineno}: malformed candidate name {tok!r}")
        rankings.append(tokens)
    if not rankings:
        raise ElectionFormatError("empty election: no vote lines")
    return Election.from_rankings(rankings)


def serialize_election(e: Election) -> str:
    return "".join(e.format_ranking(v.ranking, sep=">") + "\n" for v in e.votes)


def position(v: Vote, c: int) -> int:
    """Number of candidates ranked above ``c`` in ``v``."""
    return v.positions[c]


def _check_same_universe(v: Sequence[int], w: Sequence[int]):
    if len(v) != len(w) or set(v) != set(w):
        raise ValueError("votes are over different candidate sets")


def kt_distance_naive(v: Sequence[int], w: Sequence[int]) -> int:
    v, w = tuple(v), tuple(w)
    _check_same_universe(v, w)
    pos_w = {c: i for i, c in enumerate(w)}
    d = 0
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            if pos_w[v[i]] > pos_w[v[j]]:
                d += 1
    return d


def count_inversions(seq: Sequence[int]) -> int:
    """Inversion count by bottom-up merge sort, O(len log len)."""
    a = list(seq)
    buf = [0] * len(a)
    inversions = 0
    width = 1
    n = len(a)
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j, k = lo, mid, lo
            while i < mid and j < hi:
                if a[i] <= a[j]:
                    buf[k] = a[i]
                    i += 1
                else:
                    buf[k] = a[j]
                    inversions += mid - i
                    j += 1
                k += 1
            buf[k:k + mid - i] = a[i:mid]
            k += mid - i
            buf[k:k + hi - j] = a[j:hi]
        a, buf = buf, a
        width *= 2
    return inversions


def kt_distance(v: Sequence[int], w: Sequence[int]) -> int:
    """Kendall-Tau distance: unordered pairs that ``v`` and ``w`` rank oppositely."""
    v, w = tuple(v), tuple(w)
    _check_same_universe(v, w)
    pos_w = {c: i for i, c in enumerate(w)}
    return count_inversions([pos_w[c] for c in v])


def score_of(l: Sequence[int], e: Election) -> int:
    """Sum of Kendall-Tau distances from ``l`` to every vote of ``e``."""
    l = tuple(l)
    if len(l) != e.m or set(l) != set(range(e.m)):
        raise ValueError("list is not over the election's candidate set")
    return sum(kt_distance(l, v.ranking) for v in e.votes)


def relation_set(l: Sequence[int]) -> frozenset[Pair]:
    l = tuple(l)
    return frozenset((l[i], l[j]) for i in range(len(l)) for j in range(i + 1, len(l)))


def subscore(pairs: Iterable[Pair], e: Election) -> int:
    """Number of (vote, pair) disagreements with the given orientations."""
    t = e.tally
    return sum(t.count(y, x) for x, y in pairs)


def is_consistent(pairs: Iterable[Pair]) -> bool:
    """True iff the directed graph of the pairs is acyclic."""
    ts = TopologicalSorter()
    for x, y in pairs:
        if x == y:
            return False
        ts.add(y, x)
    try:
        ts.prepare()
    except CycleError:
        return False
    return True


def sets_agree(x: Iterable[Pair], y: Iterable[Pair]) -> bool:
    y = set(y)
    return not any((b, a) in y for a, b in x)


@dataclass(frozen=True)
class PairTally:
    """Pairwise vote counts; ``count(a, b)`` is the number of votes ranking a above b."""

    m: int
    n: int
    matrix: tuple[tuple[int, ...], ...] = field(repr=False)

    def count(self, a: int, b: int) -> int:
        return self.matrix[a][b]

    def pairs(self):
        """Unordered pairs ``(a, b)`` with ``a < b``, lexicographic."""
        for a in range(self.m):
            for b in range(a + 1, self.m):
                yield a, b

    def min_count(self, a: int, b: int) -> int:
        return min(self.matrix[a][b], self.matrix[b][a])

    def max_count(self, a: int, b: int) -> int:
        return max(self.matrix[a][b], self.matrix[b][a])


def pairwise_tally(e: Election) -> PairTally:
    m = e.m
    mat = [[0] * m for _ in range(m)]
    for v in e.votes:
        r = v.ranking
        for i in range(m):
            row = mat[r[i]]
            for j in range(i + 1, m):
                row[r[j]] += 1
    return PairTally(m, e.n, tuple(tuple(row) for row in mat))
