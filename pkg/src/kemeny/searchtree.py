"""Search-tree solvers for Kemeny Score parameterized by the score.

All three solvers share one engine. After fixing every unanimous pair, a
node picks a connected ``s``-set of still-ambiguous dirty pairs and branches
over the orderings of its candidates, cheapest first. When no such set is
left, each remaining ambiguous component (fewer than ``s`` candidates) is
fixed by its locally cheapest ordering.

``pairs`` is the engine with ``s = 2``, ``triples`` with ``s = 3``, and
``sets`` uses the configured ``set_size``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional, Sequence

from .core import Election, Vote, kt_distance
from .dirtiness import InvariantViolation, _components, _find_connected_subset
from .orderstore import OrderStore

ALGORITHMS = ("pairs", "triples", "sets")


@dataclass
class SearchConfig:
    """Solver selection and pruning switches.

    ``budget`` is the decision bound k; None asks for the optimum by
    iterative deepening. ``prune_score`` enables the discard of
    nodes whose fixed subscore exceeds k together with the cut of the
    sorted permutation tail; ``prune_bound`` additionally counts the cheapest
    orientation of every still-ambiguous pair. Neither changes the result.
    """

    algorithm: str = "sets"
    set_size: int = 4
    budget: Optional[int] = None
    collect_stats: bool = True
    prune_score: bool = True
    prune_bound: bool = True

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown search algorithm {self.algorithm!r}")
        if self.set_size < 2:
            raise ValueError("set_size must be at least 2")
        if self.budget is not None and self.budget < 0:
            raise ValueError("budget must be non-negative")

    @property
    def branch_size(self) -> int:
        if self.algorithm == "pairs":
            return 2
        if self.algorithm == "triples":
            return 3
        return self.set_size

    @property
    def tag(self) -> str:
        if self.algorithm == "sets":
            return f"sets-{self.set_size}"
        return self.algorithm


@dataclass
class SearchStats:
    nodes: int = 0
    max_depth: int = 0
    pruned: int = 0
    iterations: int = 0


@dataclass
class SolveResult:
    score: int
    consensus: Vote
    algorithm: str
    stats: SearchStats = field(default_factory=SearchStats)


def prebranch(e: Election) -> OrderStore:
    """Fresh store with the unanimous order of every non-dirty pair fixed."""
    t = e.tally
    store = OrderStore(t)
    n = e.n
    for a, b in t.pairs():
        if t.count(a, b) == n:
            ok = store.memorize((a, b))
        elif t.count(b, a) == n:
            ok = store.memorize((b, a))
        else:
            continue
        if not ok:
            raise InvariantViolation("unanimous pairs are inconsistent")
    return store


def perm(D: Sequence[int], i: int) -> tuple[int, ...]:
    """The ``i``-th (1-based) lexicographic ordering of the candidates in ``D``."""
    items = sorted(D)
    total = math.factorial(len(items))
    if not 1 <= i <= total:
        raise ValueError(f"permutation index {i} out of range 1..{total}")
    rank = i - 1
    out = []
    for k in range(len(items), 0, -1):
        f = math.factorial(k - 1)
        q, rank = divmod(rank, f)
        out.append(items.pop(q))
    return tuple(out)


def best_perm(store: OrderStore, D: Sequence[int]) -> OrderStore:
    """Store extended by the cheapest ordering of ``D`` that agrees with it.

    Ties go to the lowest permutation index. The input store is not modified.
    """
    if len(D) < 2:
        raise ValueError("best_perm needs at least two candidates")
    best = None
    for p in permutations(sorted(D)):
        trial = store.clone()
        if trial.memorize(p) and (best is None or trial.score < best.score):
            best = trial
    if best is None:
        raise InvariantViolation(f"no ordering of {tuple(D)} agrees with the store")
    return best


def permutation_subscore(p: Sequence[int], matrix) -> int:
    """Disagreements of the relation set of ``p`` with the votes."""
    total = 0
    for i in range(len(p)):
        col = p[i]
        for j in range(i + 1, len(p)):
            total += matrix[p[j]][col]
    return total


class PermutationTable:
    """Orderings of each branched-on candidate set, sorted by subscore.

    Entries are ``(subscore, index, ordering)`` with ``index`` the 1-based
    lexicographic rank, which breaks ties. Filled lazily per set and reused
    across iterative-deepening rounds.
    """

    def __init__(self, matrix):
        self.matrix = matrix
        self._cache: dict[tuple[int, ...], list[tuple[int, int, tuple[int, ...]]]] = {}

    def __call__(self, D: tuple[int, ...]):
        rows = self._cache.get(D)
        if rows is None:
            rows = [
                (permutation_subscore(p, self.matrix), i, p)
                for i, p in enumerate(permutations(D), 1)
            ]
            rows.sort()
            self._cache[D] = rows
        return rows

    def __len__(self):
        return len(self._cache)


def postbranch(store: OrderStore) -> OrderStore:
    """Fix every remaining ambiguous component by its cheapest ordering."""
    for comp in _components(store.ambiguous_adjacency(), store.m):
        store = best_perm(store, comp)
    return store


class _Frame:
    __slots__ = ("store", "rows", "cursor", "base", "depth")

    def __init__(self, store, rows, base, depth):
        self.store = store
        self.rows = rows
        self.cursor = 0
        self.base = base
        self.depth = depth


def _node_base(store: OrderStore, D: tuple[int, ...], cfg: SearchConfig) -> int:
    # For an agreeing ordering p of D, the child's final score is at least
    # base + subscore(p): pairs inside D already fixed are counted once.
    matrix = store.tally.matrix
    fixed_in_d = 0
    amb_min_in_d = 0
    for i, x in enumerate(D):
        for y in D[i + 1:]:
            if store.has(x, y):
                fixed_in_d += matrix[y][x]
            elif store.has(y, x):
                fixed_in_d += matrix[x][y]
            else:
                amb_min_in_d += min(matrix[x][y], matrix[y][x])
    base = store.score - fixed_in_d
    if cfg.prune_bound:
        base += store.lower_bound() - store.score - amb_min_in_d
    return base


def _decide(root: OrderStore, k: int, cfg: SearchConfig, stats: SearchStats,
            table: PermutationTable) -> Optional[tuple[tuple[int, ...], int]]:
    """Depth-first search for a list with score at most ``k``.

    Returns ``(list, score)`` or None. Explicit stack instead of recursion;
    the visiting order matches the recursive formulation.
    """
    s = cfg.branch_size
    m = root.m
    cut_tail = cfg.prune_score or cfg.prune_bound

    def enter(store: OrderStore, depth: int):
        stats.nodes += 1
        if depth > stats.max_depth:
            stats.max_depth = depth
        if cfg.prune_score and store.score > k:
            return None
        if cfg.prune_bound and store.lower_bound() > k:
            return None
        D = _find_connected_subset(store.ambiguous_adjacency(), m, s)
        if D is None:
            done = postbranch(store)
            if done.score > k:
                return None
            return done.get_list(), done.score
        return _Frame(store, table(D), _node_base(store, D, cfg), depth)

    res = enter(root.clone(), 0)
    if not isinstance(res, _Frame):
        return res
    stack = [res]
    while stack:
        fr = stack[-1]
        if fr.cursor >= len(fr.rows):
            stack.pop()
            continue
        sub, _, p = fr.rows[fr.cursor]
        fr.cursor += 1
        if cut_tail and fr.base + sub > k:
            stats.pruned += len(fr.rows) - fr.cursor + 1
            stack.pop()
            continue
        child = fr.store.clone()
        if not child.memorize(p):
            stats.pruned += 1
            continue
        res = enter(child, fr.depth + 1)
        if res is None:
            continue
        if isinstance(res, _Frame):
            stack.append(res)
            continue
        return res
    return None


def _few_votes(e: Election, cfg: SearchConfig, k: Optional[int]) -> Optional[SolveResult]:
    # With one or two votes either vote is optimal.
    v1 = e.votes[0]
    score = kt_distance(v1.ranking, e.votes[-1].ranking)
    if k is not None and score > k:
        return None
    return SolveResult(score, v1, cfg.tag, SearchStats())


def pairwise_lower_bound(e: Election) -> int:
    t = e.tally
    return sum(t.min_count(a, b) for a, b in t.pairs())


def pairwise_upper_bound(e: Election) -> int:
    t = e.tally
    return sum(t.max_count(a, b) for a, b in t.pairs())


def solve(e: Election, cfg: SearchConfig) -> Optional[SolveResult]:
    """Decide (``cfg.budget`` set) or optimize (``cfg.budget`` None)."""
    if cfg.budget is None:
        return solve_optimal(e, cfg)
    if e.n <= 2:
        return _few_votes(e, cfg, cfg.budget)
    stats = SearchStats(iterations=1)
    table = PermutationTable(e.tally.matrix)
    found = _decide(prebranch(e), cfg.budget, cfg, stats, table)
    if found is None:
        return None
    ranking, score = found
    return SolveResult(score, Vote(ranking), cfg.tag, stats if cfg.collect_stats else SearchStats())


def solve_optimal(e: Election, cfg: Optional[SearchConfig] = None, **kwargs) -> SolveResult:
    """Kemeny score and a consensus by iterative deepening on the budget.

    Starts at the sum of pairwise minima and raises the budget by one until
    the decision search succeeds. Stats accumulate over all rounds.
    """
    if cfg is None:
        cfg = SearchConfig(**kwargs)
    if e.n <= 2:
        return _few_votes(e, cfg, None)
    stats = SearchStats()
    table = PermutationTable(e.tally.matrix)
    root = prebranch(e)
    k = pairwise_lower_bound(e)
    while True:
        stats.iterations += 1
        found = _decide(root, k, cfg, stats, table)
        if found is not None:
            ranking, score = found
            return SolveResult(score, Vote(ranking), cfg.tag, stats if cfg.collect_stats else SearchStats())
        k += 1


def _with_algorithm(cfg: Optional[SearchConfig], algorithm: str, budget) -> SearchConfig:
    if cfg is None:
        return SearchConfig(algorithm=algorithm, budget=budget)
    return SearchConfig(algorithm=algorithm, set_size=cfg.set_size,
                        budget=cfg.budget if budget is None else budget,
                        collect_stats=cfg.collect_stats,
                        prune_score=cfg.prune_score, prune_bound=cfg.prune_bound)


def solve_sets(e: Election, cfg: Optional[SearchConfig] = None, budget: Optional[int] = None):
    cfg = _with_algorithm(cfg, "sets", budget)
    if cfg.set_size < 3:
        raise ValueError("sets algorithm needs set_size >= 3")
    return solve(e, cfg)


def solve_pairs(e: Election, cfg: Optional[SearchConfig] = None, budget: Optional[int] = None):
    return solve(e, _with_algorithm(cfg, "pairs", budget))


def solve_triples(e: Election, cfg: Optional[SearchConfig] = None, budget: Optional[int] = None):
    return solve(e, _with_algorithm(cfg, "triples", budget))
