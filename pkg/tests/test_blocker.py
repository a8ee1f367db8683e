import math
import random
import re

import pytest

from mwns.graph import Graph
from mwns.blockcut import block_cut_forest
from mwns.core import has_t_cycle, is_mwns
from mwns.blocker import (
    blocker,
    blocker_run,
    blocker_step,
    classify_block_children,
    classify_grandchildren,
)
from mwns.gen import pivot_instance
from mwns.solver import oracle_opt_x


def six_cycle():
    return Graph(range(1, 7), [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)])


def pivot_suite(count, seed, max_n=14):
    """Instances (g, T, x) with {x} a near-separator and a T-cycle through x."""
    rng = random.Random(seed)
    out = []
    attempt = 0
    while len(out) < count:
        attempt += 1
        inst, x = pivot_instance(rng.randint(4, max_n), rng.choice([0.2, 0.35, 0.5]),
                                 rng.randint(2, 5), rng.randint(0, 10**9))
        g, T = inst.graph, inst.terminals
        if len(T) >= 2:
            out.append((g, T, x))
    return out


class TestClassification:
    def test_no_grandchildren(self):
        # x=1 attached to 3; G-x is the path 2-3
        g = Graph(range(1, 4), [(1, 3), (2, 3)])
        f = block_cut_forest(g.without([1]))
        # no cut vertices at all: nothing to classify; use a chain instead
        g = Graph(range(1, 5), [(1, 4), (2, 3), (3, 4)])
        f = block_cut_forest(g.without([1]))
        cls = classify_grandchildren(g, set(), 1, f, 3)
        assert cls.grandchildren == frozenset() and cls.with_terminal_path == frozenset()

    def test_grandchild_with_terminal_on_route(self):
        # chain 2-3-4-5-6 rooted at block {2,3}: cut 3 has grandchild cut 4,
        # and the route 4-5-6 to x's neighbor 6 carries terminal 5
        g = Graph(range(1, 8), [(7, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6), (1, 7)])
        T = {5}
        f = block_cut_forest(g.without([1]))
        cls = classify_grandchildren(g, T, 1, f, 3)
        assert cls.grandchildren == frozenset({4})
        assert cls.with_terminal_path == frozenset({4})

    def test_grandchild_without_terminal(self):
        g = Graph(range(1, 8), [(7, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6), (1, 7)])
        f = block_cut_forest(g.without([1]))
        cls = classify_grandchildren(g, set(), 1, f, 3)
        assert cls.grandchildren == frozenset({4})
        assert cls.with_terminal_path == frozenset()

    def test_block_children_partition(self):
        # triangle block {2,3,4} with three hanging chains; x=1 reaches the
        # chain below 4 through terminal 5, the chain below 3 terminal-free,
        # and never reaches the chain below 2
        g = Graph(range(1, 13), [
            (2, 3), (2, 4), (3, 4),
            (4, 5), (5, 12),
            (3, 6), (6, 7),
            (2, 8), (8, 9),
            (1, 12), (1, 7), (1, 10),
            (10, 11),
        ])
        T = {5}
        f = block_cut_forest(g.without([1]))
        d = next(nd.id for nd in f.nodes if nd.kind == "block" and nd.vertices == frozenset({2, 3, 4}))
        ge2, one, zero, none = classify_block_children(g, T, 1, f, d)
        assert ge2 == frozenset()
        assert one == {4}
        assert zero == {3}
        assert none == {2}

    def test_block_children_two_terminal_route(self):
        # the chain below cut 4 carries two terminals before reaching N(x)
        g = Graph(range(1, 9), [
            (2, 3), (2, 4), (3, 4),
            (4, 5), (5, 6), (6, 7), (7, 8),
            (1, 8), (1, 3),
        ])
        T = {5, 7}
        f = block_cut_forest(g.without([1]))
        d = next(nd.id for nd in f.nodes if nd.kind == "block" and nd.vertices == frozenset({2, 3, 4}))
        ge2, one, zero, none = classify_block_children(g, T, 1, f, d)
        # 4 is the only cut child: 2 and 3 lost their outside attachment with x
        assert (ge2, one, zero, none) == ({4}, frozenset(), frozenset(), frozenset())


class TestBlockerStep:
    def test_no_cycle_returns_empty(self):
        g = Graph(range(1, 5), [(1, 2), (2, 3), (3, 4)])
        assert blocker_step(g, {2, 4}, 1) == set()

    def test_six_cycle_step_hits_every_cycle(self):
        z = blocker_step(six_cycle(), {3, 5}, 1)
        assert z and is_mwns(six_cycle(), {3, 5}, z)
        assert not z & {1, 3, 5}

    def test_case_a_non_terminal_cut_vertex(self):
        # r=2 - d=3 - two arms (4-5-6) and (7-8-9) with terminals 5, 8,
        # x=1 adjacent to both arm ends
        g = Graph(range(1, 10), [(2, 3), (3, 4), (4, 5), (5, 6),
                                 (3, 7), (7, 8), (8, 9), (1, 6), (1, 9)])
        T = {5, 8}
        run = blocker_run(g, T, 1, validate=True)
        assert run.iterations[0].case == "a"
        assert run.iterations[0].removed == frozenset({3})
        assert run.result == frozenset({3})

    def test_case_b_terminal_cut_vertex(self):
        # same chains but the merge vertex is itself a terminal
        g = Graph(range(1, 10), [(2, 3), (3, 4), (4, 5), (5, 6),
                                 (3, 7), (7, 8), (8, 9), (1, 6), (1, 9)])
        T = {3, 5, 8}
        run = blocker_run(g, T, 1, validate=True)
        first = run.iterations[0]
        assert first.case == "b"
        assert first.removed and not first.removed & set(T)

    def test_case_c_separator_part_fires(self):
        # square block {2,3,4,5}; cut 2 hangs a two-terminal chain to x's
        # neighborhood, cut 4 a terminal-free one: the only mixed cycles cross
        # the block and are cut by the separator part Z2
        g = Graph(range(1, 12), [
            (2, 3), (3, 4), (4, 5), (5, 2),
            (2, 6), (6, 11), (11, 7), (7, 8),
            (4, 9), (9, 10),
            (1, 8), (1, 10),
        ])
        T = {6, 7}
        run = blocker_run(g, T, 1, validate=True)
        first = run.iterations[0]
        assert first.case == "c"
        z1, z2, z3, z4, z5 = first.z_parts
        assert z2 == frozenset({2})  # the source-side cut vertex is itself deletable
        assert z1 == z3 == z4 == frozenset()
        assert is_mwns(g, T, run.result)

    def test_rejects_invalid_pivot(self):
        g = Graph(range(1, 5), [(1, 2), (2, 3), (3, 4), (4, 1), (2, 4)])
        with pytest.raises(ValueError):
            blocker_step(g, {2, 4}, 1)  # G-1 still has the T-cycle 2-3-4


class TestBlockerContract:
    def test_trivial_instance(self):
        g = Graph(range(1, 5), [(1, 2), (2, 3), (3, 4)])
        assert blocker(g, {2, 4}, 1) == set()

    def test_six_cycle_within_factor(self):
        s = blocker(six_cycle(), {3, 5}, 1)
        assert is_mwns(six_cycle(), {3, 5}, s)
        assert len(s) <= 14 * oracle_opt_x(six_cycle(), {3, 5}, 1)

    def test_randomized_ratio_and_validity(self):
        for g, T, x in pivot_suite(60, seed=83, max_n=12):
            run = blocker_run(g, T, x, validate=True)
            s = run.result
            assert is_mwns(g, T, s) and x not in s and not (s & T)
            opt = oracle_opt_x(g, T, x)
            if opt == 0:
                assert s == frozenset()
            else:
                assert len(s) <= 14 * opt

    def test_per_iteration_opt_drop(self):
        for g, T, x in pivot_suite(40, seed=89, max_n=12):
            run = blocker_run(g, T, x)
            cur = g
            for it in run.iterations:
                before = oracle_opt_x(cur, T, x)
                nxt = cur.without(it.removed)
                after = oracle_opt_x(nxt, T, x)
                assert before - after >= math.ceil(len(it.removed) / 14)
                cur = nxt

    def test_deepest_node_choice_is_maximal(self):
        for g, T, x in pivot_suite(25, seed=97, max_n=11):
            cur = g
            for it in blocker_run(g, T, x).iterations:
                f = block_cut_forest(cur.without([x]))
                d = it.d_node
                closure = cur.induced(f.subtree_vertices(d) | {x})
                assert has_t_cycle(closure, T & set(closure.vertices))
                for child in f.children[d]:
                    sub = cur.induced(f.subtree_vertices(child) | {x})
                    assert not has_t_cycle(sub, T & set(sub.vertices))
                cur = cur.without(it.removed)

    def test_small_z_parts(self):
        # |Z4| <= 1 and |Z5| <= 1 on every case-c iteration
        for g, T, x in pivot_suite(40, seed=101):
            for it in blocker_run(g, T, x).iterations:
                if it.case == "c":
                    assert len(it.z_parts[3]) <= 1
                    assert len(it.z_parts[4]) <= 1

    def test_trace_format(self):
        run = blocker_run(six_cycle(), {3, 5}, 1)
        for line in run.trace_lines():
            assert re.fullmatch(
                r"iter=\d+ d=\S+ case=[abc] \|Z1\.\.Z5\|=[\d,]* Z=\{[\d,]*\}", line)

    def test_deep_block_tree_instances(self):
        # glued triangle/square trees with a pivot attached: deep forests that
        # exercise terminal cut vertices and multi-level subtree closures
        from mwns.blockcut import biconnected_blocks
        from brute import random_block_tree

        rng = random.Random(31337)
        count = 0
        while count < 60:
            h, nxt = random_block_tree(rng, rng.randint(2, 6))
            order = list(h.vertices)
            rng.shuffle(order)
            blocks = biconnected_blocks(h)
            T: set[int] = set()
            for v in order:
                if len(T) >= rng.randint(2, 5):
                    break
                if any(v in b and (b & T) for b in blocks):
                    continue
                if h.neighbors(v) & T:
                    continue
                T.add(v)
            attach = [v for v in h.vertices if rng.random() < 0.45]
            if len(T) < 2 or len(attach) < 2:
                continue
            x = nxt
            g = Graph(list(h.vertices) + [x], h.edges() + [(x, v) for v in attach])
            if not has_t_cycle(g, T):
                continue
            count += 1
            run = blocker_run(g, T, x, validate=True)
            s = run.result
            assert is_mwns(g, T, s) and x not in s and not (s & T)
            opt = oracle_opt_x(g, T, x)
            if opt:
                assert len(s) <= 14 * opt
            cur = g
            for it in run.iterations:
                drop = oracle_opt_x(cur, T, x) - oracle_opt_x(cur.without(it.removed), T, x)
                assert drop >= math.ceil(len(it.removed) / 14)
                cur = cur.without(it.removed)
