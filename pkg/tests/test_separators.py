import itertools
import math
import random

import pytest

from mwns.graph import Graph, reachable
from mwns.separators import (
    MultiTerminalBlockError,
    SeparatorQuery,
    enumerate_important_separators,
    gallai_q_paths,
    max_terminals_on_path,
    max_vertex_flow,
    min_separator,
    path_through_forced_vertex,
)
from mwns.blockcut import biconnected_blocks

from brute import (
    all_simple_paths,
    important_separators_brute,
    is_separator,
    max_q_path_packing_brute,
    random_graph,
)


def q_path_exists(g, Q, removed):
    Q = frozenset(Q) - set(removed)
    for a, b in itertools.combinations(sorted(Q), 2):
        if all_simple_paths(g.without(removed), a, b):
            return True
    return False


class TestMaxVertexFlow:
    def test_single_route(self):
        g = Graph(range(1, 4), [(1, 2), (2, 3)])
        value, paths = max_vertex_flow(SeparatorQuery.of(g, {1}, {3}))
        assert value == 1
        assert paths == [[1, 2, 3]]

    def test_two_parallel_routes(self):
        g = Graph(range(1, 5), [(1, 2), (2, 4), (1, 3), (3, 4)])
        value, paths = max_vertex_flow(SeparatorQuery.of(g, {1}, {4}))
        assert value == 2
        assert len(paths) == 2

    def test_undeletable_vertices_make_it_infinite(self):
        g = Graph(range(1, 5), [(1, 2), (2, 4), (1, 3), (3, 4)])
        value, paths = max_vertex_flow(
            SeparatorQuery.of(g, {1}, {4}, undeletable={2, 3}))
        assert value is math.inf
        # brute force: no deletable subset separates
        assert not any(
            is_separator(g, {1}, {4}, frozenset(c))
            for r in range(3) for c in itertools.combinations([], r))

    def test_touching_endpoint_sets(self):
        g = Graph(range(1, 3), [(1, 2)])
        assert max_vertex_flow(SeparatorQuery.of(g, {1}, {2}))[0] is math.inf

    def test_capacity_two_override_carries_two_paths(self):
        # bowtie through m: with unit capacity one path fits, with capacity 2 both
        g = Graph(range(1, 6), [(1, 3), (2, 3), (3, 4), (3, 5)])
        q1 = SeparatorQuery.of(g, {1, 2}, {4, 5})
        assert max_vertex_flow(q1)[0] == 1
        q2 = SeparatorQuery.of(g, {1, 2}, {4, 5}, capacities={3: 2})
        value, paths = max_vertex_flow(q2)
        assert value == 2
        assert sorted(p[1] for p in paths) == [3, 3]

    def test_value_matches_brute_min_separator(self):
        rng = random.Random(17)
        for _ in range(80):
            g = random_graph(rng, rng.randint(2, 9), rng.choice([0.3, 0.5]))
            vs = list(g.vertices)
            X = frozenset(rng.sample(vs, rng.randint(1, 2)))
            rest = [v for v in vs if v not in X]
            if not rest:
                continue
            Y = frozenset(rng.sample(rest, rng.randint(1, min(2, len(rest)))))
            value, _ = max_vertex_flow(SeparatorQuery.of(g, X, Y))
            deletable = [v for v in vs if v not in X | Y]
            best = next((r for r in range(len(deletable) + 1)
                         for c in itertools.combinations(deletable, r)
                         if is_separator(g, X, Y, frozenset(c))), None)
            assert value == (best if best is not None else math.inf)


class TestMinSeparator:
    def test_middle_of_a_path(self):
        g = Graph(range(1, 4), [(1, 2), (2, 3)])
        assert min_separator(SeparatorQuery.of(g, {1}, {3})) == {2}

    def test_leftmost_tie_break(self):
        g = Graph(range(1, 5), [(1, 2), (2, 3), (3, 4)])
        assert min_separator(SeparatorQuery.of(g, {1}, {4})) == {2}

    def test_disconnected_sides_need_nothing(self):
        g = Graph(range(1, 5), [(1, 2), (3, 4)])
        assert min_separator(SeparatorQuery.of(g, {1}, {3})) == set()

    def test_adjacent_sides_raise(self):
        g = Graph(range(1, 3), [(1, 2)])
        with pytest.raises(ValueError):
            min_separator(SeparatorQuery.of(g, {1}, {2}))


class TestImportantSeparators:
    def test_dominated_separator_is_dropped(self):
        g = Graph(range(1, 5), [(1, 2), (2, 3), (3, 4)])
        out = enumerate_important_separators(SeparatorQuery.of(g, {1}, {4}), 1)
        assert [sorted(s) for s in out] == [[3]]

    def test_zero_budget_connected(self):
        g = Graph(range(1, 4), [(1, 2), (2, 3)])
        out = enumerate_important_separators(SeparatorQuery.of(g, {1}, {3}), 0)
        assert len(out) == 0

    def test_two_vertex_separator(self):
        g = Graph(range(1, 5), [(1, 2), (1, 3), (2, 4), (3, 4)])
        out = enumerate_important_separators(SeparatorQuery.of(g, {1}, {4}), 2)
        assert [sorted(s) for s in out] == [[2, 3]]

    def test_matches_brute_force_and_4k_bound(self):
        rng = random.Random(23)
        for _ in range(120):
            g = random_graph(rng, rng.randint(2, 9), rng.choice([0.3, 0.5]))
            vs = list(g.vertices)
            X = frozenset(rng.sample(vs, rng.randint(1, 2)))
            rest = [v for v in vs if v not in X]
            if not rest:
                continue
            Y = frozenset(rng.sample(rest, rng.randint(1, min(2, len(rest)))))
            k = rng.randint(0, 4)
            got = set(enumerate_important_separators(SeparatorQuery.of(g, X, Y), k).separators)
            assert got == important_separators_brute(g, X, Y, frozenset(), k)
            assert len(got) <= 4 ** k


class TestForcedVertexPath:
    def test_direct_chain(self):
        g = Graph(range(1, 4), [(1, 2), (2, 3)])
        assert path_through_forced_vertex(g, {1}, {3}, 2) == [1, 2, 3]

    def test_star_needs_two_distinct_leaves(self):
        g = Graph(range(1, 5), [(4, 1), (4, 2), (4, 3)])
        assert path_through_forced_vertex(g, {1}, {1}, 4) is None
        assert path_through_forced_vertex(g, {1}, {2}, 4) == [1, 4, 2]

    def test_forced_vertex_in_endpoint_set_rejected(self):
        g = Graph(range(1, 4), [(1, 2), (2, 3)])
        with pytest.raises(ValueError):
            path_through_forced_vertex(g, {2}, {3}, 2)

    def test_agrees_with_path_enumeration(self):
        rng = random.Random(29)
        for _ in range(120):
            g = random_graph(rng, rng.randint(2, 8), rng.choice([0.3, 0.5]))
            vs = list(g.vertices)
            t = rng.choice(vs)
            rest = [v for v in vs if v != t]
            if not rest:
                continue
            A = frozenset(rng.sample(rest, rng.randint(1, min(3, len(rest)))))
            B = frozenset(rng.sample(rest, rng.randint(1, min(3, len(rest)))))
            got = path_through_forced_vertex(g, A, B, t)
            exists = any(t in p
                         for a in sorted(A) for b in sorted(B) if a != b
                         for p in all_simple_paths(g, a, b))
            assert (got is not None) == exists
            if got is not None:
                assert got[0] in A and got[-1] in B and t in got
                assert len(set(got)) == len(got)
                assert all(g.has_edge(u, v) for u, v in zip(got, got[1:]))


class TestMaxTerminalsOnPath:
    def test_two_endpoint_terminals(self):
        g = Graph(range(1, 4), [(1, 2), (2, 3)])
        assert max_terminals_on_path(g, {1, 3}, 1, 3) == 2

    def test_four_cycle_detour_through_terminal(self):
        # a=1, u=2, b=3, t=4 on a cycle; the best 1-3 route goes via 4
        g = Graph(range(1, 5), [(1, 2), (2, 3), (3, 4), (4, 1)])
        assert max_terminals_on_path(g, {4}, 1, 3) == 1

    def test_chained_blocks_three_terminals(self):
        # triangles 1-2-3, 3-4-5, 5-6-7 with interior terminals 2, 4, 6
        g = Graph(range(1, 8), [(1, 2), (2, 3), (1, 3),
                                (3, 4), (4, 5), (3, 5),
                                (5, 6), (6, 7), (5, 7)])
        assert max_terminals_on_path(g, {2, 4, 6}, 1, 7) == 3

    def test_same_endpoint(self):
        g = Graph(range(1, 3), [(1, 2)])
        assert max_terminals_on_path(g, set(), 1, 1) == 0
        assert max_terminals_on_path(g, {1}, 1, 1) == 1

    def test_multi_terminal_block_is_rejected(self):
        g = Graph(range(1, 5), [(1, 2), (2, 3), (3, 4), (4, 1)])
        with pytest.raises(MultiTerminalBlockError):
            max_terminals_on_path(g, {2, 4}, 1, 3)

    def test_agrees_with_exhaustive_enumeration(self):
        rng = random.Random(37)
        checked = 0
        while checked < 60:
            g = random_graph(rng, rng.randint(2, 10), rng.choice([0.25, 0.4]))
            T = frozenset(rng.sample(list(g.vertices), rng.randint(0, g.n)))
            if any(len(b & T) > 1 for b in biconnected_blocks(g)):
                continue
            a = rng.choice(list(g.vertices))
            others = sorted(reachable(g, [a]) - {a})
            if not others:
                continue
            b = rng.choice(others)
            checked += 1
            want = max(len(set(p) & T) for p in all_simple_paths(g, a, b))
            assert max_terminals_on_path(g, T, a, b) == want


class TestGallaiQPaths:
    def test_single_path(self):
        g = Graph(range(1, 4), [(1, 2), (2, 3)])
        packing, cover = gallai_q_paths(g, {1, 3})
        assert packing == [[1, 2, 3]]
        assert len(cover) <= 2
        assert not q_path_exists(g, {1, 3}, cover)

    def test_triangle_with_all_vertices_in_q(self):
        g = Graph(range(1, 4), [(1, 2), (2, 3), (1, 3)])
        packing, cover = gallai_q_paths(g, {1, 2, 3})
        assert len(packing) == 1
        assert len(cover) <= 2
        assert not q_path_exists(g, {1, 2, 3}, cover)

    def test_tiny_q(self):
        g = Graph(range(1, 4), [(1, 2), (2, 3)])
        assert gallai_q_paths(g, set()) == ([], set())
        assert gallai_q_paths(g, {2}) == ([], set())

    def test_star_cover_uses_the_center(self):
        g = Graph(range(1, 6), [(5, 1), (5, 2), (5, 3), (5, 4)])
        packing, cover = gallai_q_paths(g, {1, 2, 3, 4})
        assert len(packing) == 1
        assert cover == {5}

    def test_packing_and_cover_match_brute_force(self):
        rng = random.Random(41)
        for _ in range(120):
            g = random_graph(rng, rng.randint(2, 9), rng.choice([0.25, 0.4, 0.6]))
            Q = frozenset(rng.sample(list(g.vertices), rng.randint(0, g.n)))
            packing, cover = gallai_q_paths(g, Q)
            assert len(packing) == max_q_path_packing_brute(g, Q)
            assert len(cover) <= 2 * len(packing)
            assert not q_path_exists(g, Q, cover)
            used = set()
            for path in packing:
                assert path[0] in Q and path[-1] in Q and path[0] != path[-1]
                assert not (set(path) & used)
                used |= set(path)
                assert all(g.has_edge(u, v) for u, v in zip(path, path[1:]))
