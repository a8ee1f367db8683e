"""Exact decision/search: brute-force oracle, compression branching, outer loop."""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

from .graph import Graph
from .core import (
    Instance,
    SolveResult,
    has_t_cycle,
    is_mwns,
    nearly_separated_terminals,
    terminals_independent,
)
from .reducer import lift_solution, reduce_terminals
from .separators import SeparatorQuery, enumerate_important_separators

ORACLE_LIMIT = 10**7


@dataclass
class CompressionStats:
    terminals: int = 0
    budget: int = 0
    nodes: int = 0
    leaves: int = 0
    enumerations: int = 0
    max_depth: int = 0

    @property
    def leaf_bound(self) -> int:
        return max(1, (32 * self.terminals) ** self.budget)


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    enumerations: int = 0
    max_depth: int = 0
    wall_time: float = 0.0
    compressions: list[CompressionStats] = field(default_factory=list)

    def absorb(self, c: CompressionStats) -> None:
        self.compressions.append(c)
        self.nodes += c.nodes
        self.leaves += c.leaves
        self.enumerations += c.enumerations
        self.max_depth = max(self.max_depth, c.max_depth)

    def lines(self) -> list[str]:
        return [
            f"nodes={self.nodes}",
            f"leaves={self.leaves}",
            f"enumerations={self.enumerations}",
            f"max_depth={self.max_depth}",
            f"compressions={len(self.compressions)}",
            f"wall_time={self.wall_time:.3f}",
        ]


def _subset_count(pool: int, k: int) -> int:
    return sum(math.comb(pool, r) for r in range(min(k, pool) + 1))


def oracle_solve(inst: Instance) -> SolveResult:
    """Ground truth by ascending-size subset enumeration over non-terminals."""
    g, T, k = inst.graph, inst.terminals, inst.k
    if not terminals_independent(g, T):
        return SolveResult.no()
    pool = sorted(v for v in g.vertices if v not in T)
    if _subset_count(len(pool), k) > ORACLE_LIMIT:
        raise ValueError("instance too large for exhaustive enumeration")
    if not has_t_cycle(g, T):
        return SolveResult.yes(frozenset())
    for r in range(1, k + 1):
        for combo in itertools.combinations(pool, r):
            if is_mwns(g, T, frozenset(combo)):
                return SolveResult.yes(frozenset(combo))
    return SolveResult.no()


def oracle_opt_x(g: Graph, T, x: int) -> int:
    """Minimum size of a near-separator avoiding x, by enumeration."""
    T = frozenset(T)
    if not terminals_independent(g, T):
        raise ValueError("no near-separator exists: terminals are adjacent")
    pool = sorted(v for v in g.vertices if v not in T and v != x)
    if 2 ** len(pool) > ORACLE_LIMIT:
        raise ValueError("instance too large for exhaustive enumeration")
    for r in range(len(pool) + 1):
        for combo in itertools.combinations(pool, r):
            if is_mwns(g, T, frozenset(combo)):
                return r
    raise AssertionError("deleting every non-terminal always works for independent T")


def compression_step(inst: Instance, s_big, stats: SearchStats | None = None) -> SolveResult:
    """Shrink a (k+1)-size near-separator to size k, or decide NO.

    Reduces the terminal set once using the given separator, then branches on
    important separators of each not-nearly-separated terminal, taking either
    a whole separator or all but one vertex of it into the solution.
    """
    g, T, k = inst.graph, inst.terminals, inst.k
    s_big = frozenset(s_big)
    if len(s_big) != k + 1 or s_big & T or not is_mwns(g, T, s_big):
        raise ValueError("need a near-separator of size exactly k+1 disjoint from T")
    if not terminals_independent(g, T):
        return SolveResult.no()

    reduced, log, feasible = reduce_terminals(inst, s_big)
    if not feasible:
        return SolveResult.no()
    g2, t2, k2 = reduced.graph, reduced.terminals, reduced.k

    cstats = CompressionStats(terminals=len(t2), budget=k2)

    def rec(cur: Graph, budget: int, depth: int) -> frozenset[int] | None:
        cstats.nodes += 1
        cstats.max_depth = max(cstats.max_depth, depth)
        if not has_t_cycle(cur, t2):
            cstats.leaves += 1
            return frozenset()
        if budget <= 0:
            cstats.leaves += 1
            return None
        branched = False
        lonely = nearly_separated_terminals(cur, t2)
        for t in sorted(t2 - lonely):
            cstats.enumerations += 1
            seps = enumerate_important_separators(
                SeparatorQuery.of(cur, {t}, t2 - {t}, undeletable=t2), budget + 1)
            for sep in seps:
                if not sep:
                    continue
                if len(sep) <= budget:
                    branched = True
                    sol = rec(cur.without(sep), budget - len(sep), depth + 1)
                    if sol is not None:
                        return sep | sol
                if len(sep) >= 2:
                    for v in sorted(sep):
                        rest = sep - {v}
                        if len(rest) > budget:
                            break
                        branched = True
                        sol = rec(cur.without(rest), budget - len(rest), depth + 1)
                        if sol is not None:
                            return rest | sol
        if not branched:
            cstats.leaves += 1
        return None

    found = rec(g2, k2, 0)
    if stats is not None:
        stats.absorb(cstats)
    if found is None:
        return SolveResult.no()
    lifted = lift_solution(log, found)
    return SolveResult.yes(lifted)


def solve(inst: Instance) -> SolveResult:
    """Exact answer via iterative compression over the non-terminal vertices."""
    start = time.monotonic()
    stats = SearchStats()
    g, T, k = inst.graph, inst.terminals, inst.k

    def done(result: SolveResult) -> SolveResult:
        stats.wall_time = time.monotonic() - start
        if result.is_yes:
            assert is_mwns(g, T, result.solution) and len(result.solution) <= k
        return SolveResult(result.solution, stats)

    if not terminals_independent(g, T):
        return done(SolveResult.no())
    if not has_t_cycle(g, T):
        return done(SolveResult.yes(frozenset()))
    if k == 0:
        return done(SolveResult.no())
    pool = sorted(v for v in g.vertices if v not in T)
    if len(pool) <= k:
        return done(SolveResult.yes(frozenset(pool)))

    current = frozenset(pool[: k + 1])
    for i in range(k + 1, len(pool) + 1):
        sub = g.induced(set(pool[:i]) | T)
        assert is_mwns(sub, T, current), "compression invariant: carried set stays a near-separator"
        if len(current) <= k:
            # the previous solution extended by one vertex already fits the budget
            if i < len(pool):
                current = current | {pool[i]}
            continue
        result = compression_step(Instance(sub, T, k), current, stats)
        if not result.is_yes:
            return done(SolveResult.no())
        assert len(result.solution) <= k
        if i < len(pool):
            current = result.solution | {pool[i]}
        else:
            current = result.solution
    return done(SolveResult.yes(current))


@dataclass(frozen=True)
class PushingWitness:
    terminal: int
    separator: frozenset[int]
    solution: frozenset[int]
    kind: str  # "subset" (whole separator inside) | "all-but-one"
    omitted: int | None


def pushing_lemma_witness(inst: Instance, S) -> PushingWitness:
    """Search an optimal solution and an important separator certifying the
    branching rule: either a separator of size <= k inside some optimal
    solution, or one of size <= k+1 all but one vertex of which is inside."""
    g, T, k = inst.graph, inst.terminals, inst.k
    S = frozenset(S)
    if inst.is_trivial() or not is_mwns(g, T, S):
        raise ValueError("need an optimal solution of a non-trivial instance")
    pool = sorted(v for v in g.vertices if v not in T)
    optima = [frozenset(c) for c in itertools.combinations(pool, len(S))
              if is_mwns(g, T, frozenset(c))]
    for t in sorted(T):
        seps = enumerate_important_separators(
            SeparatorQuery.of(g, {t}, T - {t}, undeletable=T), k + 1)
        for sep in seps:
            for opt in optima:
                if len(sep) <= k and sep <= opt:
                    return PushingWitness(t, sep, opt, "subset", None)
        for sep in seps:
            for v in sorted(sep):
                for opt in optima:
                    if sep - {v} <= opt:
                        return PushingWitness(t, sep, opt, "all-but-one", v)
    raise AssertionError("pushing lemma witness must exist for an optimal solution")
