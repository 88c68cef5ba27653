import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kemeny import (
    ElectionFormatError,
    Vote,
    is_consistent,
    kt_distance,
    kt_distance_naive,
    pairwise_tally,
    parse_election,
    position,
    relation_set,
    score_of,
    serialize_election,
    sets_agree,
    subscore,
)
from kemeny.core import count_inversions


def perm_strategy(max_m=12):
    return st.integers(1, max_m).flatmap(lambda m: st.permutations(list(range(m))))


def pair_of_perms(max_m=12):
    return st.integers(1, max_m).flatmap(
        lambda m: st.tuples(st.permutations(list(range(m))), st.permutations(list(range(m))))
    )


class TestParse:
    def test_basic(self):
        e = parse_election("a>b>c\nb>a>c\n")
        assert (e.m, e.n) == (3, 2)
        assert e.names == ["a", "b", "c"]
        assert e.votes[1].ranking == (1, 0, 2)

    def test_example_dirty(self, ex_dirty):
        assert (ex_dirty.m, ex_dirty.n) == (5, 3)

    def test_comments_blank_lines_and_whitespace(self):
        e = parse_election("# header\n\n  a > b>c  \n# x\nc >b> a\n")
        assert e.names == ["a", "b", "c"]
        assert e.votes[1].ranking == (2, 1, 0)

    @pytest.mark.parametrize("text", [
        "a>b\na>a\n",
        "a>a\n",
        "",
        "# only a comment\n\n",
        "a>b>c\na>b\n",
        "a>b\na>c\n",
        "a>>b\n",
        "a>b c\n",
    ])
    def test_rejects(self, text):
        with pytest.raises(ElectionFormatError):
            parse_election(text)

    def test_serialize_roundtrip(self, ex_flip23):
        text = serialize_election(ex_flip23)
        assert text.splitlines()[0] == "y>a>b>c>d>x"
        assert parse_election(text) == ex_flip23


class TestPosition:
    def test_positions(self, ex_dirty):
        v1 = ex_dirty.votes[0]
        assert position(v1, ex_dirty.index_of("a")) == 0
        assert position(v1, ex_dirty.index_of("d")) == 4
        assert position(v1, ex_dirty.index_of("y")) == 2


class TestKendallTau:
    def test_identity(self):
        assert kt_distance((0, 1, 2, 3), (0, 1, 2, 3)) == 0

    def test_full_reversal(self):
        assert kt_distance((0, 1, 2, 3), (3, 2, 1, 0)) == 6
        assert kt_distance_naive((0, 1, 2, 3), (3, 2, 1, 0)) == 6

    def test_example_dirty_votes(self, ex_dirty):
        v1, v2 = ex_dirty.votes[:2]
        assert kt_distance(v1.ranking, v2.ranking) == 1

    def test_mismatched_universe(self):
        with pytest.raises(ValueError):
            kt_distance((0, 1, 2), (0, 1))
        with pytest.raises(ValueError):
            kt_distance((0, 1, 2), (0, 1, 3))

    def test_count_inversions_small(self):
        assert count_inversions([]) == 0
        assert count_inversions([2, 0, 1]) == 2
        assert count_inversions([4, 3, 2, 1, 0]) == 10

    def test_fast_matches_naive_1000_pairs(self):
        rng = random.Random(11)
        for _ in range(1000):
            m = rng.randint(1, 50)
            v = list(range(m))
            w = list(range(m))
            rng.shuffle(v)
            rng.shuffle(w)
            assert kt_distance(v, w) == kt_distance_naive(v, w)

    @settings(max_examples=200)
    @given(pair_of_perms())
    def test_symmetric_and_zero_iff_equal(self, vw):
        v, w = vw
        assert kt_distance(v, w) == kt_distance(w, v)
        assert (kt_distance(v, w) == 0) == (list(v) == list(w))

    def test_triangle_inequality(self):
        rng = random.Random(3)
        for _ in range(1000):
            m = rng.randint(1, 15)
            u, v, w = (rng.sample(range(m), m) for _ in range(3))
            assert kt_distance(u, w) <= kt_distance(u, v) + kt_distance(v, w)


class TestScore:
    def test_single_vote(self):
        e = parse_election("b>a>c\n")
        assert score_of(e.votes[0].ranking, e) == 0

    def test_worked_example(self, ex_flip23):
        assert score_of(ex_flip23.vote_from_names("yabcdx").ranking, ex_flip23) == 33
        assert score_of(ex_flip23.vote_from_names("abcdxy").ranking, ex_flip23) == 34

    def test_mismatched(self, ex_flip23):
        with pytest.raises(ValueError):
            score_of((0, 1, 2), ex_flip23)


class TestRelationSet:
    def test_three(self):
        assert relation_set((0, 1, 2)) == {(0, 1), (1, 2), (0, 2)}

    def test_single(self):
        assert relation_set((0,)) == frozenset()

    @given(perm_strategy())
    def test_size_and_consistent(self, p):
        rs = relation_set(p)
        m = len(p)
        assert len(rs) == m * (m - 1) // 2
        assert is_consistent(rs)


class TestSubscore:
    def test_empty(self, ex_flip23):
        assert subscore(set(), ex_flip23) == 0

    def test_equals_score_for_full_relation_set(self, ex_flip23):
        l = ex_flip23.vote_from_names("abcdxy").ranking
        assert subscore(relation_set(l), ex_flip23) == 34

    def test_single_pair_counts_votes(self, ex_flip23):
        e = ex_flip23
        y, x = e.index_of("y"), e.index_of("x")
        by_scan = sum(1 for v in e.votes if v.positions[x] < v.positions[y])
        assert by_scan == 5
        assert subscore({(y, x)}, e) == 5

    def test_matches_per_vote_definition(self):
        from _instances import small_suite
        rng = random.Random(5)
        for e in small_suite():
            l = rng.sample(range(e.m), e.m)
            pairs = [p for p in relation_set(l) if rng.random() < 0.5]
            direct = sum(1 for v in e.votes for x, y in pairs if v.positions[y] < v.positions[x])
            assert subscore(pairs, e) == direct

    def test_subset_bounded_by_score_and_additive(self):
        from _instances import suite
        rng = random.Random(8)
        for e in suite()[:100]:
            l = rng.sample(range(e.m), e.m)
            rs = sorted(relation_set(l))
            part = [p for p in rs if rng.random() < 0.5]
            rest = [p for p in rs if p not in set(part)]
            total = score_of(l, e)
            assert subscore(part, e) <= total
            assert subscore(part, e) + subscore(rest, e) == subscore(rs, e) == total

    def test_relation_set_subscore_equals_score_500_lists(self):
        from _instances import suite
        rng = random.Random(9)
        instances = suite()
        for i in range(500):
            e = instances[i % len(instances)]
            l = rng.sample(range(e.m), e.m)
            assert subscore(relation_set(l), e) == score_of(l, e)


class TestConsistency:
    def test_examples(self):
        a, b, c = 0, 1, 2
        o1 = {(a, b), (b, c), (c, a)}
        o2 = {(a, b), (b, c)}
        o3 = {(a, b), (b, c), (a, c)}
        assert not is_consistent(o1)
        assert is_consistent(o2)
        assert is_consistent(set())
        assert sets_agree(o1, o2)
        assert sets_agree(o2, o3)
        assert not sets_agree(o3, o1)
        assert sets_agree(set(), o1)

    def test_brute_force_definition(self):
        # Consistent iff some permutation agrees with every pair.
        from itertools import permutations
        rng = random.Random(4)
        for _ in range(300):
            m = rng.randint(1, 5)
            pairs = {(x, y) for x, y in combinations(range(m), 2) if rng.random() < 0.6}
            pairs = {(y, x) if rng.random() < 0.5 else (x, y) for x, y in pairs}
            expected = any(relation_set(p) >= pairs for p in permutations(range(m)))
            assert is_consistent(pairs) == expected

    def test_disagreement_implies_inconsistent_union(self):
        rng = random.Random(6)
        for _ in range(300):
            m = rng.randint(2, 6)
            x = relation_set(rng.sample(range(m), m))
            y = {p for p in relation_set(rng.sample(range(m), m)) if rng.random() < 0.5}
            if not sets_agree(x, y):
                assert not is_consistent(x | y)


class TestTally:
    def test_example_dirty(self, ex_dirty):
        t = pairwise_tally(ex_dirty)
        a, b, y = (ex_dirty.index_of(c) for c in "aby")
        assert (t.count(a, b), t.count(b, a)) == (2, 1)
        assert (t.count(a, y), t.count(y, a)) == (3, 0)

    def test_one_vote(self):
        e = parse_election("c>a>b\n")
        t = pairwise_tally(e)
        for a, b in t.pairs():
            assert {t.count(a, b), t.count(b, a)} == {0, 1}

    def test_counts_sum_to_n(self):
        from _instances import suite
        for e in suite()[:50]:
            t = e.tally
            for a, b in t.pairs():
                assert t.count(a, b) + t.count(b, a) == e.n

    def test_vote_rejects_non_permutation(self):
        with pytest.raises(ValueError):
            Vote((0, 0, 1))
