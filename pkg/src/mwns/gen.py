"""Instance generators: seeded random graphs and the multiway-cut reduction."""

from __future__ import annotations

import random

from .graph import Graph
from .core import Instance, terminals_independent


def random_instance(n: int, p: float, terminals: int, k: int, seed: int,
                    independent: bool = True) -> Instance:
    """Reproducible edge-probability graph with a sampled terminal set.

    With independent=True the sampling repeats until the terminal set is an
    independent set (dependent terminals make the instance trivially NO).
    """
    if not 0 <= terminals <= n:
        raise ValueError("terminal count out of range")
    rng = random.Random(seed)
    while True:
        edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)
                 if rng.random() < p]
        g = Graph(range(1, n + 1), edges)
        for _ in range(200):
            T = frozenset(rng.sample(range(1, n + 1), terminals))
            if not independent or terminals_independent(g, T):
                return Instance(g, T, k)
        # dense graph with no independent choice of this size: resample it


def from_multiway_cut(inst: Instance) -> Instance:
    """Encode a multiway separator instance: consecutive terminals get a fresh
    degree-2 neighbor, so full separation is needed exactly when every
    terminal pair is nearly separated."""
    g, T = inst.graph, sorted(inst.terminals)
    base = max(g.vertices) if g.vertices else 0
    new_vertices = list(g.vertices)
    new_edges = g.edges()
    for i in range(len(T) - 1):
        w = base + 1 + i
        new_vertices.append(w)
        new_edges.append((T[i], w))
        new_edges.append((w, T[i + 1]))
    return Instance(Graph(new_vertices, new_edges), inst.terminals, inst.k)


def pivot_instance(n: int, p: float, terminals: int, seed: int) -> tuple[Instance, int]:
    """Instance plus a vertex x such that {x} is a near-separator: terminals
    are planted one-per-block of a random graph, then x is attached."""
    if n < 2:
        raise ValueError("need at least two vertices")
    rng = random.Random(seed)
    from .blockcut import biconnected_blocks

    while True:
        edges = [(u, v) for u in range(2, n + 1) for v in range(u + 1, n + 1)
                 if rng.random() < p]
        h = Graph(range(2, n + 1), edges)
        blocks = biconnected_blocks(h)
        order = list(h.vertices)
        rng.shuffle(order)
        T: set[int] = set()
        for v in order:
            if len(T) >= terminals:
                break
            if any(v in b and (b & T) for b in blocks):
                continue
            if h.neighbors(v) & T:
                continue
            T.add(v)
        if len(T) < min(terminals, 1):
            continue
        x = 1
        attach = [v for v in h.vertices if rng.random() < 0.5]
        if not attach:
            attach = [order[0]]
        g = Graph(range(1, n + 1), edges + [(x, v) for v in attach])
        k = len([v for v in g.vertices if v not in T]) - 1
        return Instance(g, frozenset(T), max(k, 0)), x
