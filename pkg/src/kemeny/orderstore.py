"""Store of fixed relative orders, kept transitively closed.

``succ[x]`` holds the candidates stored below ``x`` and ``pred[x]`` those
stored above it, both as int bitmasks. Python ints are unbounded, so the
same representation serves any number of candidates.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .core import Election, Pair, PairTally


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class OrderStore:
    """Consistent, transitively closed set of ordered pairs with score accounting.

    ``score`` is the subscore of all stored pairs, i.e. the number of
    (vote, pair) disagreements they already commit to. ``fixed_min`` tracks
    the per-pair lower bound ``min(count_ab, count_ba)`` of the same pairs so
    that ``lower_bound()`` can add the cheapest completion of the rest.
    """

    __slots__ = ("m", "tally", "succ", "pred", "score", "fixed_min", "n_fixed", "_total_min")

    def __init__(self, tally: PairTally):
        self.m = tally.m
        self.tally = tally
        self.succ = [0] * self.m
        self.pred = [0] * self.m
        self.score = 0
        self.fixed_min = 0
        self.n_fixed = 0
        self._total_min = sum(tally.min_count(a, b) for a, b in tally.pairs())

    @classmethod
    def for_election(cls, e: Election) -> "OrderStore":
        return cls(e.tally)

    def clone(self) -> "OrderStore":
        other = OrderStore.__new__(OrderStore)
        other.m = self.m
        other.tally = self.tally
        other.succ = self.succ[:]
        other.pred = self.pred[:]
        other.score = self.score
        other.fixed_min = self.fixed_min
        other.n_fixed = self.n_fixed
        other._total_min = self._total_min
        return other

    def has(self, x: int, y: int) -> bool:
        """Whether ``x > y`` is stored."""
        return bool(self.succ[x] >> y & 1)

    def is_fixed(self, x: int, y: int) -> bool:
        return bool((self.succ[x] | self.pred[x]) >> y & 1)

    def stored(self) -> set[Pair]:
        return {(x, y) for x in range(self.m) for y in _bits(self.succ[x])}

    def memorize(self, l: Sequence[int]) -> bool:
        """Store the relation set of the partial list ``l`` (best first).

        Returns False and leaves the store untouched if some pair of ``l``
        is already stored the other way round. Otherwise adds the pairs and
        everything they force by transitivity, and returns True.
        """
        l = tuple(l)
        if len(set(l)) != len(l):
            raise ValueError(f"list repeats a candidate: {l}")
        for c in l:
            if not 0 <= c < self.m:
                raise ValueError(f"candidate {c} outside universe of {self.m}")
        succ = self.succ
        for i in range(len(l)):
            x = l[i]
            for j in range(i + 1, len(l)):
                if succ[l[j]] >> x & 1:
                    return False
        # Agreement with a closed store implies the union stays acyclic.
        for i in range(len(l)):
            for j in range(i + 1, len(l)):
                self._add(l[i], l[j])
        return True

    def _add(self, x: int, y: int):
        succ, pred = self.succ, self.pred
        if succ[x] >> y & 1:
            return
        count = self.tally.matrix
        above = pred[x] | (1 << x)
        below = succ[y] | (1 << y)
        for a in _bits(above):
            new = below & ~succ[a]
            if not new:
                continue
            succ[a] |= new
            abit = 1 << a
            row = count[a]
            for b in _bits(new):
                pred[b] |= abit
                self.score += count[b][a]
                self.fixed_min += min(row[b], count[b][a])
                self.n_fixed += 1

    def ambiguous(self) -> set[Pair]:
        """Unordered pairs ``(x, y)``, ``x < y``, with no stored order."""
        out = set()
        for x in range(self.m):
            free = self.ambiguous_mask(x) >> (x + 1)
            y = x + 1
            while free:
                if free & 1:
                    out.add((x, y))
                free >>= 1
                y += 1
        return out

    def ambiguous_mask(self, x: int) -> int:
        full = (1 << self.m) - 1
        return full & ~(self.succ[x] | self.pred[x] | (1 << x))

    def ambiguous_adjacency(self) -> tuple[int, ...]:
        return tuple(self.ambiguous_mask(x) for x in range(self.m))

    def is_complete(self) -> bool:
        return self.n_fixed == self.m * (self.m - 1) // 2

    def get_list(self) -> Optional[tuple[int, ...]]:
        """The unique list agreeing with the store, or None while pairs are ambiguous."""
        if not self.is_complete():
            return None
        # In a closed tournament a candidate's position is its number of predecessors.
        ranked = sorted(range(self.m), key=lambda c: bin(self.pred[c]).count("1"))
        return tuple(ranked)

    def store_score(self) -> int:
        return self.score

    def lower_bound(self) -> int:
        """Stored subscore plus the cheapest orientation of every ambiguous pair."""
        return self.score + self._total_min - self.fixed_min

    def __eq__(self, other):
        if not isinstance(other, OrderStore):
            return NotImplemented
        return self.m == other.m and self.succ == other.succ

    def __repr__(self):
        return f"OrderStore(m={self.m}, fixed={self.n_fixed}, score={self.score})"


def memorize_pairs(store: OrderStore, pairs: Iterable[Pair]) -> bool:
    """Memorize each ordered pair in turn; stops at the first conflict."""
    for x, y in pairs:
        if not store.memorize((x, y)):
            return False
    return True
