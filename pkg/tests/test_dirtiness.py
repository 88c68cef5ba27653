import random
from itertools import combinations

import pytest

from kemeny import parse_election
from kemeny.dirtiness import (
    DirtyGraph,
    InvariantViolation,
    RelationGraph,
    condorcet_loser,
    condorcet_winner,
    dirty_pairs,
    find_dirty_s_set,
    is_dirty_set,
    majority_dirty_pairs,
    majority_nondirty_candidate_is_fixed,
    majority_nondirty_distance,
    maximal_dirty_components,
    relation_graph,
    two_thirds_relation,
)

from _instances import CONDORCET, ROCK_PAPER_SCISSORS, small_suite, suite

A, B, C, D = range(4)


def idx(e, s):
    return tuple(sorted(e.index_of(ch) for ch in s))


def test_dirty_pairs_example(ex_dirty):
    assert dirty_pairs(ex_dirty.tally) == {idx(ex_dirty, "ab"), idx(ex_dirty, "cd")}


def test_dirty_pairs_single_vote():
    assert dirty_pairs(parse_election("a>b>c\n").tally) == set()


def test_dirty_pairs_full_reversal():
    e = parse_election("a>b>c>d\nd>c>b>a\n")
    assert dirty_pairs(e.tally) == set(combinations(range(4), 2))


def test_is_dirty_set(ex_dirty):
    g = DirtyGraph.from_tally(ex_dirty.tally)
    assert is_dirty_set(idx(ex_dirty, "ab"), g)
    assert not is_dirty_set(idx(ex_dirty, "abc"), g)
    assert is_dirty_set(idx(ex_dirty, "y"), g)


def test_is_dirty_set_brute_force():
    # Connected iff no proper non-empty subset is cut off from the rest.
    rng = random.Random(2)
    for _ in range(200):
        m = rng.randint(2, 6)
        edges = {p for p in combinations(range(m), 2) if rng.random() < 0.4}
        g = DirtyGraph.from_edges(m, edges)
        for size in range(1, m + 1):
            for S in combinations(range(m), size):
                connected = all(
                    any((min(x, y), max(x, y)) in edges for x in part for y in set(S) - set(part))
                    for k in range(1, size)
                    for part in combinations(S, k)
                )
                assert is_dirty_set(S, g) == connected


def test_find_dirty_s_set_path():
    g = DirtyGraph.from_edges(4, [(A, B), (B, C), (C, D)])
    assert find_dirty_s_set(g, 4) == (A, B, C, D)
    assert find_dirty_s_set(g, 3) == (A, B, C)


def test_find_dirty_s_set_components_too_small():
    g = DirtyGraph.from_edges(4, [(A, B), (C, D)])
    assert find_dirty_s_set(g, 3) is None
    assert find_dirty_s_set(g, 2) == (A, B)


def test_find_dirty_s_set_bfs_rule():
    # Star centred on 2 plus a path 0-1: component {0, 1} is too small for s=3.
    g = DirtyGraph.from_edges(6, [(0, 1), (2, 5), (2, 3), (3, 4)])
    assert find_dirty_s_set(g, 3) == (2, 3, 5)
    with pytest.raises(ValueError):
        find_dirty_s_set(g, 1)


def test_find_dirty_s_set_none_iff_components_small():
    rng = random.Random(12)
    for _ in range(300):
        m = rng.randint(2, 8)
        g = DirtyGraph.from_edges(m, {p for p in combinations(range(m), 2) if rng.random() < 0.25})
        comps = maximal_dirty_components(g)
        for s in range(2, m + 1):
            found = find_dirty_s_set(g, s)
            assert (found is None) == all(len(cp) < s for cp in comps)
            if found is not None:
                assert len(found) == s and is_dirty_set(found, g)


def test_maximal_components():
    assert maximal_dirty_components(DirtyGraph.from_edges(4, [(A, B), (C, D)])) == [(A, B), (C, D)]
    assert maximal_dirty_components(DirtyGraph.from_edges(3, [])) == []
    assert maximal_dirty_components(DirtyGraph.from_edges(3, [(A, B), (B, C)])) == [(A, B, C)]


def test_maximal_components_disjoint_and_unlinked():
    for e in suite()[:80]:
        g = DirtyGraph.from_tally(e.tally)
        comps = maximal_dirty_components(g)
        edges = g.edges()
        for c1, c2 in combinations(comps, 2):
            assert not set(c1) & set(c2)
            for d1 in c1:
                for d2 in c2:
                    assert (min(d1, d2), max(d1, d2)) not in edges


def test_majority_dirty_arithmetic():
    e = parse_election("a>b\na>b\nb>a\n")
    assert majority_dirty_pairs(e.tally) == {(0, 1)}
    e = parse_election("a>b\na>b\na>b\n")
    assert majority_dirty_pairs(e.tally) == set()


def test_majority_dirty_example(ex_flip23):
    e = ex_flip23
    xy = idx(e, "xy")
    assert xy not in majority_dirty_pairs(e.tally)
    assert (e.index_of("x"), e.index_of("y")) in two_thirds_relation(e.tally)


def test_majority_dirty_subset_of_dirty():
    for e in suite():
        assert majority_dirty_pairs(e.tally) <= dirty_pairs(e.tally)


def test_two_thirds_relation_complements_majority_dirty():
    for e in suite()[:60]:
        t = e.tally
        rel = two_thirds_relation(t)
        oriented = {(min(a, b), max(a, b)) for a, b in rel}
        assert oriented.isdisjoint(majority_dirty_pairs(t))
        assert oriented | majority_dirty_pairs(t) == set(t.pairs())
        for a, b in rel:
            assert 3 * t.count(a, b) > 2 * e.n


def test_unanimous_pair_orientation():
    e = parse_election("b>a>c\nb>c>a\n")
    assert (0, 1) in two_thirds_relation(e.tally)  # b (index 0) over a


def test_majority_nondirty_distance():
    rel = {(A, B), (B, C), (A, C)}
    nondirty = {A, B, C}
    assert majority_nondirty_distance(A, B, rel, nondirty) == 0
    assert majority_nondirty_distance(A, C, rel, nondirty) == 1
    assert majority_nondirty_distance(C, A, rel, nondirty) == 1
    with pytest.raises(ValueError):
        majority_nondirty_distance(A, D, rel, nondirty)


def test_majority_nondirty_fixed_predicate_unanimous():
    # Nothing is majority-dirty, so the condition holds vacuously.
    e = parse_election("a>b>c\n")
    assert majority_nondirty_candidate_is_fixed(e.tally, 0)


def test_relation_graph_example(ex_dirty):
    e = ex_dirty
    a, b, c, d = (e.index_of(x) for x in "abcd")
    rg = relation_graph(e, [a, b, c, d])
    assert rg.arcs == {(a, c), (a, d), (b, c), (b, d)}


def test_relation_graph_dirty_pair_has_no_arcs(ex_dirty):
    assert relation_graph(ex_dirty, idx(ex_dirty, "ab")).arcs == frozenset()


def test_relation_graph_single_vote():
    e = parse_election("c>a>b\n")
    rg = relation_graph(e, range(3))
    assert rg.arcs == {(0, 1), (0, 2), (1, 2)}


def test_relation_graph_dirty_iff_no_arc():
    for e in small_suite():
        dirty = dirty_pairs(e.tally)
        for a, b in combinations(range(e.m), 2):
            rg = relation_graph(e, (a, b))
            assert ((a, b) in dirty) == (not rg.arcs)


def test_relation_graph_reports_violations(monkeypatch):
    import kemeny.dirtiness as mod
    monkeypatch.setattr(mod, "is_consistent", lambda arcs: False)
    with pytest.raises(InvariantViolation):
        relation_graph(parse_election("a>b\n"), (0, 1))


def test_relation_graph_type():
    assert isinstance(relation_graph(parse_election("a\n"), (0,)), RelationGraph)


def test_condorcet_winner():
    e = parse_election(CONDORCET)
    assert condorcet_winner(e.tally) == e.index_of("a")
    assert condorcet_winner(parse_election(ROCK_PAPER_SCISSORS).tally) is None
    single = parse_election("q>p>r\n")
    assert condorcet_winner(single.tally) == single.index_of("q")
    assert condorcet_loser(single.tally) == single.index_of("r")
