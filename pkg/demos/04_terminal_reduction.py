"""Shrinking the terminal set while preserving the answer, then lifting back.

Run: python3 demos/04_terminal_reduction.py
"""

from mwns import Graph, Instance, is_mwns
from mwns.reducer import reduce_terminals, lift_solution
from mwns.solver import oracle_solve

# Hexagon with terminals 3, 5 plus a far-away terminal 7 that nothing can
# doubly connect: the reduction drops it immediately.
g = Graph(range(1, 8), [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)])
inst = Instance.of(g, {3, 5, 7}, 1)
s_hat = frozenset(v for v in g.vertices if v not in inst.terminals)

reduced, log, feasible = reduce_terminals(inst, s_hat)
print("feasible:", feasible)
print("terminals before:", sorted(inst.terminals), " after:", sorted(reduced.terminals))
print("log:")
print(log.serialize() or "  (no steps)")

answer = oracle_solve(reduced)
print("reduced answer:", answer)
lifted = lift_solution(log, answer.solution)
print("lifted back:", sorted(lifted),
      "valid on the original:", is_mwns(g, inst.terminals, lifted))

# A chain of triangles between two hubs: searched along the hub-free forest,
# the component rule converts one of three stacked terminals into a regular
# vertex (the kept pair still witnesses a terminal-rich crossing path).
from mwns.reducer import apply_rr2

edges, v = [], 1
for _ in range(5):
    a, b, c = v, v + 1, v + 2
    edges += [(a, b), (b, c), (a, c)]
    v += 2
edges += [(2, 12), (10, 12), (2, 13), (10, 13)]
chain = Instance.of(Graph(range(1, 14), edges), {2, 4, 6, 8, 10}, 2)
new_inst, step = apply_rr2(chain, {12, 13})
print("\ntriangle chain component rule:", step.serialize())
print("terminals kept:", sorted(new_inst.terminals))
