"""Block-cut forests: biconnected decomposition plus rooted-tree queries."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, shortest_path


def biconnected_blocks(g: Graph, exclude: Iterable[int] = ()) -> list[frozenset[int]]:
    """Blocks (2-connected subgraphs, bridge edges, isolated vertices) of g minus `exclude`.

    Iterative DFS low-link; no subgraph is materialized, so this is the fast
    path for predicates that repeatedly probe vertex deletions.
    """
    dropped = set(exclude)
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    blocks: list[frozenset[int]] = []
    counter = 0
    for root in g.vertices:
        if root in disc or root in dropped:
            continue
        edge_stack: list[tuple[int, int]] = []
        disc[root] = low[root] = counter
        counter += 1
        # frame: (vertex, parent, iterator over remaining neighbors)
        stack = [(root, 0, iter(sorted(g.neighbors(root))))]
        isolated = True
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w in dropped:
                    continue
                isolated = False
                if w not in disc:
                    edge_stack.append((v, w))
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, v, iter(sorted(g.neighbors(w)))))
                    advanced = True
                    break
                elif w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                pv = stack[-1][0]
                low[pv] = min(low[pv], low[v])
                if low[v] >= disc[pv]:
                    verts = set()
                    while edge_stack:
                        a, b = edge_stack.pop()
                        verts.add(a)
                        verts.add(b)
                        if (a, b) == (pv, v):
                            break
                    blocks.append(frozenset(verts))
        if isolated:
            blocks.append(frozenset([root]))
    return blocks


def cut_vertices(g: Graph, exclude: Iterable[int] = ()) -> set[int]:
    """Articulation vertices: those appearing in two or more blocks."""
    seen: set[int] = set()
    cuts: set[int] = set()
    for block in biconnected_blocks(g, exclude):
        cuts |= block & seen
        seen |= block
    return cuts


@dataclass(frozen=True)
class BCNode:
    id: int
    kind: str  # "block" | "cut"
    vertices: frozenset[int]

    @property
    def vertex(self) -> int:
        if self.kind != "cut":
            raise ValueError("not a cut node")
        return next(iter(self.vertices))

    def label(self) -> str:
        if self.kind == "cut":
            return str(self.vertex)
        return "{" + ",".join(str(v) for v in sorted(self.vertices)) + "}"


class BlockCutForest:
    """Rooted block-cut forest of a graph.

    One tree per connected component, bipartite between block nodes and cut
    nodes, rooted at the block whose sorted vertex set is lexicographically
    smallest. Node ids are assigned in pre-order so traversals and traces are
    reproducible across runs.
    """

    def __init__(self, graph: Graph):
        self.graph = graph
        blocks = biconnected_blocks(graph)
        cuts = set()
        owner: set[int] = set()
        for b in blocks:
            cuts |= b & owner
            owner |= b
        # cut -> incident blocks, block index -> cut vertices
        block_key = {i: tuple(sorted(b)) for i, b in enumerate(blocks)}
        cut_blocks: dict[int, list[int]] = {c: [] for c in cuts}
        for i, b in enumerate(blocks):
            for c in b & cuts:
                cut_blocks[c].append(i)

        nodes: list[BCNode] = []
        parent: list[int | None] = []
        children: list[list[int]] = []
        depth: list[int] = []
        roots: list[int] = []
        placed_blocks: set[int] = set()
        placed_cuts: set[int] = set()

        comp_root: dict[int, int] = {}  # smallest vertex of component -> block index of root
        comp_of_block: dict[int, int] = {}
        comp_seen: set[int] = set()
        for i, b in enumerate(blocks):
            if b & comp_seen:
                continue
            # flood the component block-wise
            members = [i]
            verts = set(b)
            frontier = [i]
            taken = {i}
            while frontier:
                j = frontier.pop()
                for c in blocks[j] & cuts:
                    for j2 in cut_blocks[c]:
                        if j2 not in taken:
                            taken.add(j2)
                            members.append(j2)
                            frontier.append(j2)
                            verts |= blocks[j2]
            comp_seen |= verts
            root_idx = min(members, key=lambda j: block_key[j])
            comp_root[min(verts)] = root_idx
            for j in members:
                comp_of_block[j] = min(verts)

        def new_node(kind: str, verts: frozenset[int], par: int | None) -> int:
            nid = len(nodes)
            nodes.append(BCNode(nid, kind, verts))
            parent.append(par)
            children.append([])
            depth.append(0 if par is None else depth[par] + 1)
            if par is not None:
                children[par].append(nid)
            return nid

        for _, root_idx in sorted(comp_root.items()):
            placed_blocks.add(root_idx)
            # work items create their node when popped; children pushed in
            # reverse so ids come out in pre-order
            work: list[tuple[str, int, int | None]] = [("block", root_idx, None)]
            while work:
                kind, key, par = work.pop()
                if kind == "block":
                    nid = new_node("block", blocks[key], par)
                    if par is None:
                        roots.append(nid)
                    kids = [c for c in sorted(blocks[key] & cuts) if c not in placed_cuts]
                    placed_cuts.update(kids)
                    for c in reversed(kids):
                        work.append(("cut", c, nid))
                else:
                    nid = new_node("cut", frozenset([key]), par)
                    bkids = [j for j in sorted(cut_blocks[key], key=lambda j: block_key[j])
                             if j not in placed_blocks]
                    placed_blocks.update(bkids)
                    for j in reversed(bkids):
                        work.append(("block", j, nid))

        self.nodes: tuple[BCNode, ...] = tuple(nodes)
        self.parent: tuple[int | None, ...] = tuple(parent)
        self.children: tuple[tuple[int, ...], ...] = tuple(tuple(cs) for cs in children)
        self.depth: tuple[int, ...] = tuple(depth)
        self.roots: tuple[int, ...] = tuple(roots)
        self._cut_node: dict[int, int] = {
            nd.vertex: nd.id for nd in self.nodes if nd.kind == "cut"
        }
        self._subtree: dict[int, frozenset[int]] = {}

    # -- basic lookups ----------------------------------------------------

    def node(self, nid: int) -> BCNode:
        if not 0 <= nid < len(self.nodes):
            raise KeyError(f"unknown node id {nid}")
        return self.nodes[nid]

    def is_cut_vertex(self, v: int) -> bool:
        return v in self._cut_node

    def cut_node_of(self, v: int) -> int:
        return self._cut_node[v]

    def blocks_containing(self, v: int) -> list[int]:
        return [nd.id for nd in self.nodes if nd.kind == "block" and v in nd.vertices]

    def node_of_vertex(self, v: int) -> int:
        """Cut node for a cut vertex, else the unique block containing v."""
        if v in self._cut_node:
            return self._cut_node[v]
        for nd in self.nodes:
            if nd.kind == "block" and v in nd.vertices:
                return nd.id
        raise KeyError(f"vertex {v} not in decomposed graph")

    def tree_edges(self) -> list[tuple[int, int]]:
        return [(p, c.id) for c in self.nodes if (p := self.parent[c.id]) is not None]

    def root_of(self, nid: int) -> int:
        while self.parent[nid] is not None:
            nid = self.parent[nid]
        return nid

    def tree_path(self, a: int, b: int) -> list[int]:
        """Node ids on the unique tree path from a to b, inclusive."""
        self.node(a), self.node(b)
        if self.root_of(a) != self.root_of(b):
            raise ValueError("nodes lie in different trees")
        up_a, up_b = [a], [b]
        x, y = a, b
        while self.depth[x] > self.depth[y]:
            x = self.parent[x]
            up_a.append(x)
        while self.depth[y] > self.depth[x]:
            y = self.parent[y]
            up_b.append(y)
        while x != y:
            x = self.parent[x]
            y = self.parent[y]
            up_a.append(x)
            up_b.append(y)
        return up_a + up_b[-2::-1]

    # -- spec queries ------------------------------------------------------

    def subtree_vertices(self, d: int) -> frozenset[int]:
        """Graph vertices occurring in blocks of the subtree rooted at node d."""
        self.node(d)
        if d in self._subtree:
            return self._subtree[d]
        acc: set[int] = set(self.nodes[d].vertices)
        for c in self.children[d]:
            acc |= self.subtree_vertices(c)
        out = frozenset(acc)
        self._subtree[d] = out
        return out

    def tree_vertices(self, nid: int) -> frozenset[int]:
        return self.subtree_vertices(self.root_of(nid))


def block_cut_forest(g: Graph) -> BlockCutForest:
    return BlockCutForest(g)


def subtree_vertices(f: BlockCutForest, d: int) -> frozenset[int]:
    return f.subtree_vertices(d)


def separating_cut_vertex(f: BlockCutForest, e: tuple[int, int]) -> tuple[int, frozenset[int], frozenset[int]]:
    """For a tree edge e, the incident cut vertex v and the vertex sets of the
    two sides of the tree split at e (block-endpoint side first). Every path
    between the two sides minus v passes through v."""
    a, b = e
    if f.parent[b] == a:
        par, child = a, b
    elif f.parent[a] == b:
        par, child = b, a
    else:
        raise ValueError(f"({a},{b}) is not a tree edge")
    cut_end = child if f.nodes[child].kind == "cut" else par
    v = f.nodes[cut_end].vertex
    below = f.subtree_vertices(child)
    above = (f.tree_vertices(par) - below) | {v}
    if f.nodes[child].kind == "block":
        return v, below, above
    return v, above, below


def path_through_vertex_in_block(
    block: frozenset[int], g: Graph, p: int, q: int, t: int
) -> tuple[list[int], list[int]]:
    """Inside a block with >= 3 vertices, a p-t path and a q-t path meeting only at t.

    Their concatenation is a simple p-q path through t.
    """
    from .separators import vertex_flow_paths  # deferred: separators imports this module

    if len({p, q, t}) != 3:
        raise ValueError("p, q, t must be distinct")
    if not {p, q, t} <= block:
        raise ValueError("p, q, t must lie in the block")
    if len(block) < 3:
        raise ValueError("block is a single edge")
    sub = g.induced(block)
    apex = max(g.vertices) + 1
    aug = Graph(set(block) | {apex}, sub.edges() + [(p, apex), (q, apex)])
    value, paths = vertex_flow_paths(aug, {apex}, {t})
    assert value >= 2, "block must be 2-connected"
    first, second = paths[0][1:], paths[1][1:]
    if first[0] != p:
        first, second = second, first
    assert first[0] == p and second[0] == q
    return first, second


def threaded_path(
    g: Graph,
    f: BlockCutForest,
    x: int,
    y: int,
    forced: Iterable[tuple[frozenset[int], int]] = (),
) -> list[int] | None:
    """Simple x-y path (x, y cut vertices of one tree) visiting one forced
    vertex per named block on the x-y tree path.

    None when x or y is not a cut vertex of a common tree; malformed forced
    picks raise instead.
    """
    if not (f.is_cut_vertex(x) and f.is_cut_vertex(y)):
        return None
    nx_, ny_ = f.cut_node_of(x), f.cut_node_of(y)
    if f.root_of(nx_) != f.root_of(ny_):
        return None
    path_nodes = f.tree_path(nx_, ny_)
    picks: dict[frozenset[int], int] = {}
    on_path = {f.nodes[nid].vertices for nid in path_nodes if f.nodes[nid].kind == "block"}
    for block, v in forced:
        block = frozenset(block)
        if block not in on_path:
            raise ValueError(f"forced pick names block {sorted(block)} off the tree path")
        if block in picks:
            raise ValueError("two forced picks in one block")
        if v not in block:
            raise ValueError(f"forced vertex {v} not inside its block")
        picks[block] = v
    result = [x]
    for i in range(1, len(path_nodes) - 1, 2):
        entry = f.nodes[path_nodes[i - 1]].vertex
        block_node = f.nodes[path_nodes[i]]
        exit_ = f.nodes[path_nodes[i + 1]].vertex
        block = block_node.vertices
        pick = picks.get(block)
        if pick is None or pick in (entry, exit_):
            seg = shortest_path(g.induced(block), entry, [exit_])
        else:
            p_side, q_side = path_through_vertex_in_block(block, g, entry, exit_, pick)
            seg = p_side + q_side[-2::-1]
        assert seg is not None
        result.extend(seg[1:])
    return result
