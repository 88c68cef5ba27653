"""Polynomial-time preprocessing: extremal-candidate removal and the 2/3 special case."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import Candidate, Election, Vote, score_of
from .dirtiness import InvariantViolation, dirty_pairs, majority_dirty_pairs, two_thirds_relation
from .searchtree import SearchStats, SolveResult

FRONT = "front"
BACK = "back"


@dataclass(frozen=True)
class Removal:
    candidate: int
    name: str
    placement: str
    offset: int


@dataclass
class ReductionTrace:
    """Removals in order, plus the residual election over the kept candidates.

    ``kept[i]`` is the original index of residual candidate ``i``.
    """

    original: Election
    removed: list[Removal] = field(default_factory=list)
    residual: Optional[Election] = None
    kept: tuple[int, ...] = ()

    @property
    def total_offset(self) -> int:
        return sum(r.offset for r in self.removed)

    def recompose(self, residual_ranking: Sequence[int]) -> tuple[int, ...]:
        """Full ranking from a residual one; earliest removals end up outermost."""
        front = [r.candidate for r in self.removed if r.placement == FRONT]
        back = [r.candidate for r in self.removed if r.placement == BACK]
        middle = [self.kept[c] for c in residual_ranking]
        return tuple(front + middle + back[::-1])


def restrict(e: Election, keep: Sequence[int]) -> Election:
    """Election over ``keep`` (original indices, in the given order)."""
    keep = list(keep)
    new_index = {c: i for i, c in enumerate(keep)}
    cands = tuple(Candidate(i, e.candidates[c].name) for i, c in enumerate(keep))
    votes = tuple(Vote(tuple(new_index[c] for c in v.ranking if c in new_index)) for v in e.votes)
    return Election(cands, votes)


def _eligible_two_thirds(e: Election, c: int) -> Optional[str]:
    t, n = e.tally, e.n
    others = [x for x in range(e.m) if x != c]
    if all(3 * t.count(c, x) > 2 * n for x in others):
        return FRONT
    if all(3 * t.count(x, c) > 2 * n for x in others):
        return BACK
    return None


def _eligible_nondirty(e: Election, c: int) -> Optional[str]:
    # A non-dirty candidate extremal in more than half of the votes is
    # extremal in all of them.
    if any(c in p for p in dirty_pairs(e.tally)):
        return None
    n = e.n
    tops = sum(1 for v in e.votes if v.ranking[0] == c)
    if 2 * tops > n:
        assert tops == n
        return FRONT
    bottoms = sum(1 for v in e.votes if v.ranking[-1] == c)
    if 2 * bottoms > n:
        assert bottoms == n
        return BACK
    return None


RULES = {"two-thirds": _eligible_two_thirds, "nondirty": _eligible_nondirty}


def condorcet_reduce(e: Election, rule: str = "two-thirds") -> ReductionTrace:
    """Exhaustively remove candidates that must be first or last in every consensus.

    The default rule removes a candidate preferred to (resp. beaten by) every
    other remaining candidate in more than 2/3 of the votes. Such a candidate
    is a Condorcet winner (loser), so every Kemeny consensus puts it first
    (last); its pairs contribute a fixed offset. ``rule="nondirty"`` only
    removes unanimous extremes, whose offset is always zero.

    Candidates are examined in index order, front before back; offsets are
    taken against the partially reduced election.
    """
    eligible = RULES[rule]
    trace = ReductionTrace(e)
    kept = list(range(e.m))
    current = e
    while current.m > 0:
        hit = None
        for c in range(current.m):
            placement = eligible(current, c)
            if placement is not None:
                hit = (c, placement)
                break
        if hit is None:
            break
        c, placement = hit
        t = current.tally
        others = [x for x in range(current.m) if x != c]
        if placement == FRONT:
            offset = sum(t.count(x, c) for x in others)
        else:
            offset = sum(t.count(c, x) for x in others)
        orig = kept[c]
        trace.removed.append(Removal(orig, e.candidates[orig].name, placement, offset))
        del kept[c]
        current = restrict(current, others)
    trace.residual = current
    trace.kept = tuple(kept)
    return trace


def solve_two_thirds_special_case(e: Election) -> Optional[SolveResult]:
    """Solve instances without majority-dirty pairs; None when not applicable.

    Every pair is then ordered by its 2/3 majority in each Kemeny consensus,
    and those orders form a transitive tournament.
    """
    t = e.tally
    if majority_dirty_pairs(t):
        return None
    rel = two_thirds_relation(t)
    wins = [0] * e.m
    for a, _ in rel:
        wins[a] += 1
    ranking = tuple(sorted(range(e.m), key=lambda c: -wins[c]))
    if sorted(wins) != list(range(e.m)):
        raise InvariantViolation("2/3-majority relation is cyclic without majority-dirty pairs")
    return SolveResult(score_of(ranking, e), Vote(ranking), "two-thirds", SearchStats())


def count_majority_stats(e: Election) -> tuple[int, set[int]]:
    """Number of majority-dirty pairs and the candidates they touch."""
    pairs = majority_dirty_pairs(e.tally)
    return len(pairs), {c for p in pairs for c in p}


def majority_breaks(ranking: Sequence[int], e: Election) -> int:
    """Majority-non-dirty pairs that ``ranking`` orders against their 2/3 majority."""
    pos = {c: i for i, c in enumerate(ranking)}
    return sum(1 for a, b in two_thirds_relation(e.tally) if pos[a] > pos[b])
