"""Dirty pairs, dirty sets, 2/3-majority relations and the relation graph.

Graphs over candidates use int bitmasks for adjacency: bit ``y`` of
``adj[x]`` is set when ``{x, y}`` is an edge.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import Election, Pair, PairTally, is_consistent


class InvariantViolation(RuntimeError):
    """A structural guarantee that holds for every valid election was broken."""


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def dirty_pairs(t: PairTally) -> set[Pair]:
    """Pairs ranked both ways by at least one vote each, as ``(a, b)`` with ``a < b``."""
    return {(a, b) for a, b in t.pairs() if t.count(a, b) >= 1 and t.count(b, a) >= 1}


@dataclass(frozen=True)
class DirtyGraph:
    m: int
    adj: tuple[int, ...]

    @classmethod
    def from_tally(cls, t: PairTally, restrict_to: Optional[Iterable[Pair]] = None) -> "DirtyGraph":
        adj = [0] * t.m
        allowed = None
        if restrict_to is not None:
            allowed = {(min(a, b), max(a, b)) for a, b in restrict_to}
        for a, b in dirty_pairs(t):
            if allowed is not None and (a, b) not in allowed:
                continue
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return cls(t.m, tuple(adj))

    @classmethod
    def from_edges(cls, m: int, edges: Iterable[Pair]) -> "DirtyGraph":
        adj = [0] * m
        for a, b in edges:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return cls(m, tuple(adj))

    def edges(self) -> set[Pair]:
        return {(a, b) for a in range(self.m) for b in _bits(self.adj[a]) if a < b}

    def neighbors(self, x: int) -> list[int]:
        return list(_bits(self.adj[x]))


def _component_mask(adj: Sequence[int], start: int, within: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for x in _bits(frontier):
            nxt |= adj[x]
        nxt &= within & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def is_dirty_set(D: Iterable[int], g: DirtyGraph) -> bool:
    """True iff the dirty graph induced on ``D`` is connected."""
    mask = 0
    for c in D:
        mask |= 1 << c
    if mask == 0:
        return False
    start = (mask & -mask).bit_length() - 1
    return _component_mask(g.adj, start, mask) == mask


def find_dirty_s_set(g: DirtyGraph, s: int) -> Optional[tuple[int, ...]]:
    """A connected ``s``-subset, or None if every component is smaller than ``s``.

    BFS from the lowest-indexed vertex whose component is large enough,
    visiting neighbours in index order; the first ``s`` vertices reached
    form the set (returned sorted).
    """
    return _find_connected_subset(g.adj, g.m, s)


def _find_connected_subset(adj, m: int, s: int) -> Optional[tuple[int, ...]]:
    if s < 2:
        raise ValueError("s must be at least 2")
    done = 0
    full = (1 << m) - 1
    for v in range(m):
        if done >> v & 1 or not adj[v]:
            continue
        comp = _component_mask(adj, v, full)
        done |= comp
        if bin(comp).count("1") < s:
            continue
        order = [v]
        seen = 1 << v
        queue = deque([v])
        while queue and len(order) < s:
            x = queue.popleft()
            for y in _bits(adj[x] & ~seen):
                seen |= 1 << y
                order.append(y)
                queue.append(y)
                if len(order) == s:
                    break
        return tuple(sorted(order))
    return None


def maximal_dirty_components(g: DirtyGraph) -> list[tuple[int, ...]]:
    """Connected components with at least two vertices, ordered by smallest member."""
    return _components(g.adj, g.m)


def _components(adj, m: int) -> list[tuple[int, ...]]:
    done = 0
    full = (1 << m) - 1
    out = []
    for v in range(m):
        if done >> v & 1 or not adj[v]:
            continue
        comp = _component_mask(adj, v, full)
        done |= comp
        out.append(tuple(_bits(comp)))
    return out


def majority_dirty_pairs(t: PairTally) -> set[Pair]:
    """Pairs where neither orientation holds in more than 2/3 of the votes."""
    n = t.n
    return {
        (a, b) for a, b in t.pairs()
        if not 3 * t.count(a, b) > 2 * n and not 3 * t.count(b, a) > 2 * n
    }


def two_thirds_relation(t: PairTally) -> set[Pair]:
    n = t.n
    rel = set()
    for a, b in t.pairs():
        if 3 * t.count(a, b) > 2 * n:
            rel.add((a, b))
        elif 3 * t.count(b, a) > 2 * n:
            rel.add((b, a))
    return rel


def majority_dirty_candidates(t: PairTally) -> set[int]:
    return {c for pair in majority_dirty_pairs(t) for c in pair}


def majority_nondirty_distance(c: int, c2: int, rel: set[Pair], nondirty: Iterable[int]) -> int:
    """Number of majority-non-dirty candidates strictly 2/3-between ``c`` and ``c2``."""
    if (c, c2) in rel:
        hi, lo = c, c2
    elif (c2, c) in rel:
        hi, lo = c2, c
    else:
        raise ValueError(f"pair ({c}, {c2}) is not oriented by the 2/3 relation")
    return sum(1 for b in nondirty if (hi, b) in rel and (b, lo) in rel)


def majority_nondirty_candidate_is_fixed(t: PairTally, c: int) -> bool:
    """Whether every majority-dirty candidate is more than ``2 n_M`` away from ``c``.

    When this holds for a majority-non-dirty ``c``, every Kemeny consensus
    orders ``c`` by the 2/3 majority against all candidates. Analysis only:
    it is not valid once some orders are fixed by a search.
    """
    md_pairs = majority_dirty_pairs(t)
    md_cands = {x for p in md_pairs for x in p}
    if c in md_cands:
        return False
    rel = two_thirds_relation(t)
    nondirty = set(range(t.m)) - md_cands
    bound = 2 * len(md_pairs)
    return all(majority_nondirty_distance(c, cd, rel, nondirty) > bound for cd in md_cands)


@dataclass(frozen=True)
class RelationGraph:
    vertices: frozenset[int]
    arcs: frozenset[Pair]


def relation_graph(e: Election, D: Iterable[int]) -> RelationGraph:
    """Arcs ``(x, y)`` for ``x, y`` in ``D`` where every vote ranks x above y.

    Raises InvariantViolation if the graph has a cycle or an induced P3
    (an arc path x->y->z with no arc x->z).
    """
    D = frozenset(D)
    t = e.tally
    n = e.n
    arcs = frozenset((x, y) for x in D for y in D if x != y and t.count(x, y) == n)
    if not is_consistent(arcs):
        raise InvariantViolation("relation graph has a cycle")
    succ: dict[int, set[int]] = {x: set() for x in D}
    for x, y in arcs:
        succ[x].add(y)
    for x, y in arcs:
        for z in succ[y]:
            if (x, z) not in arcs:
                raise InvariantViolation(f"induced P3 {x}->{y}->{z} in relation graph")
    return RelationGraph(D, arcs)


def condorcet_winner(t: PairTally) -> Optional[int]:
    """The candidate beating every other one in more than half of the votes."""
    n = t.n
    for c in range(t.m):
        if all(2 * t.count(c, x) > n for x in range(t.m) if x != c):
            return c
    return None


def condorcet_loser(t: PairTally) -> Optional[int]:
    n = t.n
    for c in range(t.m):
        if all(2 * t.count(x, c) > n for x in range(t.m) if x != c):
            return c
    return None
