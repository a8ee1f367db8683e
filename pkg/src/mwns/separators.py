"""Vertex-capacitated flow, minimum/important separators, and Q-path duality."""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import networkx as nx

from .graph import Graph, connected_components, reachable
from .blockcut import BlockCutForest, block_cut_forest

INF = 1 << 30


class MultiTerminalBlockError(RuntimeError):
    """A block carries two or more terminals where the caller guaranteed at most one."""


@dataclass(frozen=True)
class SeparatorQuery:
    graph: Graph
    sources: frozenset[int]
    sinks: frozenset[int]
    undeletable: frozenset[int] = frozenset()
    capacities: Mapping[int, int] = field(default_factory=dict)

    @staticmethod
    def of(graph: Graph, sources: Iterable[int], sinks: Iterable[int],
           undeletable: Iterable[int] = (), capacities: Mapping[int, int] | None = None
           ) -> "SeparatorQuery":
        return SeparatorQuery(graph, frozenset(sources), frozenset(sinks),
                              frozenset(undeletable), dict(capacities or {}))


@dataclass(frozen=True)
class ImportantSeparatorSet:
    separators: tuple[frozenset[int], ...]
    query: SeparatorQuery
    k: int

    def __iter__(self):
        return iter(self.separators)

    def __len__(self):
        return len(self.separators)


# ---------------------------------------------------------------------------
# flow engine on the split-vertex network
# ---------------------------------------------------------------------------

class _FlowNet:
    """Residual network over arbitrary hashable nodes, BFS augmentation."""

    def __init__(self):
        self.cap: dict[tuple, int] = {}
        self.adj: dict[object, list] = {}

    def arc(self, u, v, c):
        if (u, v) not in self.cap:
            self.cap[(u, v)] = 0
            self.cap[(v, u)] = self.cap.get((v, u), 0)
            self.adj.setdefault(u, []).append(v)
            self.adj.setdefault(v, []).append(u)
        self.cap[(u, v)] += c

    def max_flow(self, s, t, stop_at: int | None = None) -> int:
        value = 0
        while stop_at is None or value < stop_at:
            prev = {s: s}
            queue = deque([s])
            while queue and t not in prev:
                u = queue.popleft()
                for w in self.adj.get(u, ()):
                    if w not in prev and self.cap[(u, w)] > 0:
                        prev[w] = u
                        queue.append(w)
            if t not in prev:
                break
            bottleneck = INF * 2
            node = t
            while node != s:
                p = prev[node]
                bottleneck = min(bottleneck, self.cap[(p, node)])
                node = p
            node = t
            while node != s:
                p = prev[node]
                self.cap[(p, node)] -= bottleneck
                self.cap[(node, p)] += bottleneck
                node = p
            value += bottleneck
        return value

    def residual_reach(self, s) -> set:
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in self.adj.get(u, ()):
                if w not in seen and self.cap[(u, w)] > 0:
                    seen.add(w)
                    queue.append(w)
        return seen

    def unit_paths(self, s, t, original: dict[tuple, int]) -> list[list]:
        """Decompose the integral flow into s-t node sequences, one per unit."""
        used: dict[tuple, int] = {}
        for (u, v), c in original.items():
            f = c - self.cap[(u, v)]
            if f > 0:
                used[(u, v)] = f
        paths = []
        while True:
            walk = [s]
            pos = {s: 0}
            node = s
            while node != t:
                for w in self.adj.get(node, ()):
                    if used.get((node, w), 0) > 0:
                        used[(node, w)] -= 1
                        if w in pos:  # erase flow cycles from the reported path
                            for gone in walk[pos[w] + 1:]:
                                del pos[gone]
                            del walk[pos[w] + 1:]
                        else:
                            pos[w] = len(walk)
                            walk.append(w)
                        node = w
                        break
                else:
                    break
            if node != t:
                break
            paths.append(walk)
        return paths


def _build_net(g: Graph, sources: frozenset[int], sinks: frozenset[int],
               undeletable: frozenset[int], caps: Mapping[int, int]) -> _FlowNet:
    net = _FlowNet()
    protected = sources | sinks | undeletable
    for v in g.vertices:
        c = caps.get(v, 1)
        if v in protected or c >= INF:
            c = INF
        net.arc(("i", v), ("o", v), c)
    for u, v in g.edges():
        net.arc(("o", u), ("i", v), INF)
        net.arc(("o", v), ("i", u), INF)
    for x in sources:
        net.arc("S", ("i", x), INF)
    for y in sinks:
        net.arc(("o", y), "T", INF)
    return net


def _touching(g: Graph, X: frozenset[int], Y: frozenset[int]) -> bool:
    return bool(X & Y) or any(g.has_edge(x, y) for x in X for y in Y)


def max_vertex_flow(q: SeparatorQuery) -> tuple[int | float, list[list[int]]]:
    """Min size of an (X,Y)-separator among deletable vertices (inf if none),
    plus unit paths witnessing the matching flow."""
    g, X, Y = q.graph, q.sources, q.sinks
    if not X or not Y:
        return 0, []
    if _touching(g, X, Y):
        return math.inf, []
    net = _build_net(g, X, Y, q.undeletable, q.capacities)
    original = dict(net.cap)
    value = net.max_flow("S", "T")
    if value >= INF:
        return math.inf, []
    raw = net.unit_paths("S", "T", original)
    paths = []
    for walk in raw:
        verts = [node[1] for node in walk[1:-1] if node[0] == "o"]
        paths.append(verts)
    return value, paths


def vertex_flow_paths(g: Graph, X: Iterable[int], Y: Iterable[int]) -> tuple[int | float, list[list[int]]]:
    return max_vertex_flow(SeparatorQuery.of(g, X, Y))


def _min_cut(g: Graph, X: frozenset[int], Y: frozenset[int], undeletable: frozenset[int]
             ) -> tuple[int | float, frozenset[int], frozenset[int]]:
    """(value, X-closest minimum cut, residual reach as graph vertices)."""
    if not X or not Y:
        return 0, frozenset(), frozenset(reachable(g, X))
    if _touching(g, X, Y):
        return math.inf, frozenset(), frozenset()
    net = _build_net(g, X, Y, undeletable, {})
    value = net.max_flow("S", "T")
    if value >= INF:
        return math.inf, frozenset(), frozenset()
    region = net.residual_reach("S")
    cut = frozenset(v for v in g.vertices
                    if ("i", v) in region and ("o", v) not in region)
    reach = frozenset(v for v in g.vertices if ("o", v) in region)
    return value, cut, frozenset(reach | X)


def min_separator(q: SeparatorQuery) -> set[int]:
    """Minimum-cardinality (X,Y)-separator disjoint from X, Y and the
    undeletable set; ties broken toward the X side (leftmost cut)."""
    value, cut, _ = _min_cut(q.graph, q.sources, q.sinks, q.undeletable)
    if value is math.inf:
        raise ValueError("no finite separator: source and sink sides touch or "
                         "every cut needs an undeletable vertex")
    return set(cut)


def _is_separator(g: Graph, X: frozenset[int], Y: frozenset[int], S: frozenset[int]) -> bool:
    return not (reachable(g, X - S, S) & (Y - S))


def enumerate_important_separators(q: SeparatorQuery, k: int) -> ImportantSeparatorSet:
    """All important (X,Y)-separators of size <= k avoiding the undeletable set.

    Candidates come from the standard branching around the X-closest minimum
    cut (push a cut vertex into the separator, or onto the source side); each
    candidate is then checked against the importance definition directly:
    inclusion-minimal, and no equal-or-smaller separator has a strictly
    larger source-reachable region.
    """
    g, Y, V8 = q.graph, q.sinks, q.undeletable
    forbidden_base = Y | V8

    def candidates(cur: Graph, X: frozenset[int], budget: int) -> set[frozenset[int]]:
        value, cut, reach = _min_cut(cur, X, Y, V8 | X)
        if value is math.inf or value > budget:
            return set()
        if value == 0:
            return {frozenset()}
        X = reach  # fatten the source side to the reach of the closest min cut
        v = min(cut)
        out: set[frozenset[int]] = set()
        for s in candidates(cur.without([v]), X - {v}, budget - 1):
            out.add(s | {v})
        out |= candidates(cur, X | {v}, budget)
        return out

    if k < 0:
        return ImportantSeparatorSet((), q, k)
    found = candidates(g, q.sources, k)

    def important(S: frozenset[int]) -> bool:
        if S & (q.sources | forbidden_base):
            return False
        if not _is_separator(g, q.sources, Y, S):
            return False
        for v in S:  # inclusion-minimal
            if _is_separator(g, q.sources, Y, S - {v}):
                return False
        R = frozenset(reachable(g, q.sources, S))
        for v in S:  # a dominating separator would reach past v
            value, _, _ = _min_cut(g, R | {v}, Y, V8)
            if value is not math.inf and value <= len(S):
                return False
        return True

    keep = sorted((s for s in found if important(s)), key=lambda s: (len(s), sorted(s)))
    return ImportantSeparatorSet(tuple(keep), q, k)


# ---------------------------------------------------------------------------
# forced-vertex path test
# ---------------------------------------------------------------------------

def path_through_forced_vertex(g: Graph, A: Iterable[int], B: Iterable[int], t: int
                               ) -> list[int] | None:
    """Simple path from some a in A to some b in B passing through t, or None.

    Realized as a flow of value 2 into t, where t has capacity 2, one unit
    drawn from the A side and one from the B side.
    """
    A, B = frozenset(A), frozenset(B)
    if t in A or t in B:
        raise ValueError("forced vertex must not lie in the endpoint sets")
    if not A or not B or t not in g:
        return None
    net = _FlowNet()
    for v in g.vertices:
        net.arc(("i", v), ("o", v), 2 if v == t else 1)
    for u, v in g.edges():
        net.arc(("o", u), ("i", v), INF)
        net.arc(("o", v), ("i", u), INF)
    net.arc("S", "SA", 1)
    net.arc("S", "SB", 1)
    for a in A:
        net.arc("SA", ("i", a), 1)
    for b in B:
        net.arc("SB", ("i", b), 1)
    net.arc(("o", t), "T", 2)
    original = dict(net.cap)
    if net.max_flow("S", "T", stop_at=2) < 2:
        return None
    walks = net.unit_paths("S", "T", original)
    assert len(walks) == 2
    segs = {}
    for walk in walks:
        side = walk[1]  # "SA" or "SB"
        segs[side] = [node[1] for node in walk[2:-1] if node[0] == "o"]
    a_side, b_side = segs["SA"], segs["SB"]
    assert a_side[-1] == t and b_side[-1] == t
    return a_side + b_side[-2::-1]


# ---------------------------------------------------------------------------
# maximum terminal count over simple paths, via the block-cut tree
# ---------------------------------------------------------------------------

def max_terminals_on_path(g: Graph, T: Iterable[int], a: int, b: int,
                          forest: BlockCutForest | None = None) -> int:
    """Maximum number of terminals on a simple a-b path.

    Requires every block to carry at most one terminal (raises
    MultiTerminalBlockError otherwise); under that guarantee the optimum
    equals the cut-vertex terminals on the a-b tree path plus one per
    on-path block holding an otherwise uncounted terminal, all of which one
    path can visit simultaneously.
    """
    T = frozenset(T)
    if a == b:
        return 1 if a in T else 0
    f = forest if forest is not None else block_cut_forest(g)
    for nd in f.nodes:
        if nd.kind == "block" and len(nd.vertices & T) > 1:
            raise MultiTerminalBlockError(
                f"block {sorted(nd.vertices)} carries {sorted(nd.vertices & T)}")
    na, nb_ = f.node_of_vertex(a), f.node_of_vertex(b)
    if f.root_of(na) != f.root_of(nb_):
        raise ValueError("endpoints lie in different components")
    path = f.tree_path(na, nb_)
    counted: set[int] = set()
    for nid in path:
        nd = f.nodes[nid]
        if nd.kind == "cut" and nd.vertex in T:
            counted.add(nd.vertex)
    for v in (a, b):
        if v in T:
            counted.add(v)
    total = len(counted)
    for nid in path:
        nd = f.nodes[nid]
        if nd.kind == "block" and (nd.vertices & T) - counted:
            total += 1
    return total


# ---------------------------------------------------------------------------
# Gallai Q-path packing and covering
# ---------------------------------------------------------------------------

def _q_path_packing(g: Graph, Q: frozenset[int]) -> list[list[int]]:
    """Maximum family of vertex-disjoint paths with both distinct endpoints in Q.

    Encoded as maximum matching in an auxiliary graph: each non-Q vertex v
    becomes a pair v',v'' joined by an edge, matched pairs stand for unused
    vertices and through-matched pairs for path interiors.
    """
    inner = [v for v in g.vertices if v not in Q]
    H = nx.Graph()
    H.add_nodes_from(Q)
    for v in inner:
        H.add_edge(("a", v), ("b", v))
    for u, v in g.edges():
        if u in Q and v in Q:
            H.add_edge(u, v)
        elif u in Q:
            H.add_edge(u, ("a", v))
            H.add_edge(u, ("b", v))
        elif v in Q:
            H.add_edge(v, ("a", u))
            H.add_edge(v, ("b", u))
        else:
            for cu in ("a", "b"):
                for cv in ("a", "b"):
                    H.add_edge((cu, u), (cv, v))
    matching = nx.max_weight_matching(H, maxcardinality=True)
    mate: dict = {}
    for x, y in matching:
        mate[x] = y
        mate[y] = x

    def other(copy):
        tag, v = copy
        return ("b" if tag == "a" else "a", v)

    # rotate dead stubs (one copy matched, the other exposed) onto pair edges
    changed = True
    while changed:
        changed = False
        for v in inner:
            ca, cb = ("a", v), ("b", v)
            for c1, c2 in ((ca, cb), (cb, ca)):
                if c1 in mate and c2 not in mate and mate[c1] != c2:
                    z = mate.pop(c1)
                    mate.pop(z)
                    mate[c1] = c2
                    mate[c2] = c1
                    changed = True

    paths = []
    seen_q: set[int] = set()
    for q in sorted(Q):
        if q in seen_q or q not in mate:
            continue
        walk = [q]
        cur = mate[q]
        while not isinstance(cur, int):
            walk.append(cur[1])
            nxt = other(cur)
            if nxt not in mate:  # stub left by a non-maximum structure
                walk = None
                break
            cur = mate[nxt]
        if walk is None:
            continue
        walk.append(cur)
        seen_q.update((walk[0], walk[-1]))
        paths.append(walk)
    return paths


def _has_q_path(g: Graph, Q: frozenset[int], removed: Iterable[int] = ()) -> bool:
    gone = set(removed)
    alive = Q - gone
    seen: set[int] = set()
    for comp in connected_components(g):
        members = (set(comp) - gone) - seen
        # removal may split a listed component; re-flood the remainder
        while members:
            start = next(iter(members))
            part = reachable(g, [start], gone)
            if len(part & alive) >= 2:
                return True
            members -= part
            seen |= part
    return False


def _cover_value(g: Graph, Q: frozenset[int], U: frozenset[int]) -> int:
    total = len(U)
    seen: set[int] = set()
    for v in g.vertices:
        if v in U or v in seen:
            continue
        comp = reachable(g, [v], U)
        seen |= comp
        total += len(comp & Q) // 2
    return total


def _cover_certificate(g: Graph, Q: frozenset[int], target: int) -> frozenset[int]:
    """A set U with |U| + sum over components K of floor(|Q ∩ K|/2) == target.

    Greedy descent first; exhaustive search over small U as a fallback (the
    duality between packings and such certificates guarantees one exists).
    """
    U: frozenset[int] = frozenset()
    best = _cover_value(g, Q, U)
    while best > target:
        improved = None
        for v in g.vertices:
            if v in U:
                continue
            val = _cover_value(g, Q, U | {v})
            if val < best:
                best, improved = val, U | {v}
                if best == target:
                    break
        if improved is None:
            break
        U = improved
    if best == target:
        return U
    for size in range(1, target + 1):
        for combo in itertools.combinations(g.vertices, size):
            cand = frozenset(combo)
            if _cover_value(g, Q, cand) == target:
                return cand
    raise AssertionError("no packing-matching cover certificate found")


def gallai_q_paths(d_t: Graph, Q: Iterable[int]) -> tuple[list[list[int]], set[int]]:
    """Maximum vertex-disjoint Q-path packing and a cover of at most twice its
    size after which no Q-path remains."""
    Q = frozenset(Q)
    if not Q <= set(d_t.vertices):
        raise ValueError("Q must be a subset of the graph vertices")
    if len(Q) <= 1:
        return [], set()
    packing = _q_path_packing(d_t, Q)
    nu = len(packing)
    if nu == 0:
        return [], set()
    U = _cover_certificate(d_t, Q, nu)
    cover = set(U)
    for v in d_t.vertices:
        if v in U:
            continue
        comp = reachable(d_t, [v], U)
        if min(comp) == v:  # visit each component once, via its smallest vertex
            hit = sorted(comp & Q)
            cover.update(hit[1:])
    for v in sorted(cover):  # minimalize, smallest ids dropped first
        if not _has_q_path(d_t, Q, cover - {v}):
            cover.discard(v)
    assert len(cover) <= 2 * nu
    assert not _has_q_path(d_t, Q, cover)
    return packing, cover
