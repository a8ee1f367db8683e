"""Terminal-bounding preprocessing: reduction rules, marking, and solution lifting."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, connected_components
from .blockcut import block_cut_forest
from .core import (
    Instance,
    is_mwns,
    has_t_cycle,
    nearly_separated_terminals,
    terminals_independent,
)
from .blocker import blocker
from .separators import max_terminals_on_path, path_through_forced_vertex


# -- log steps ---------------------------------------------------------------

@dataclass(frozen=True)
class DropNearlySeparated:
    t: int

    def serialize(self) -> str:
        return f"rr1 t={self.t}"


@dataclass(frozen=True)
class DropComponentTerminal:
    t: int
    x: int
    y: int
    component: frozenset[int]
    kept: tuple[int, int]

    def serialize(self) -> str:
        comp = ",".join(str(v) for v in sorted(self.component))
        return f"rr2 x={self.x} y={self.y} drop={self.t} D={{{comp}}}"


@dataclass(frozen=True)
class DropUnmarked:
    removed: frozenset[int]

    def serialize(self) -> str:
        inner = ",".join(str(v) for v in sorted(self.removed))
        return f"rr3 drop={{{inner}}}"


@dataclass(frozen=True)
class EssentialVertex:
    x: int

    def serialize(self) -> str:
        return f"essential x={self.x}"


Step = DropNearlySeparated | DropComponentTerminal | DropUnmarked | EssentialVertex


@dataclass(frozen=True)
class ReductionLog:
    original: Instance
    steps: tuple[Step, ...]

    def serialize(self) -> str:
        return "\n".join(s.serialize() for s in self.steps)

    def replay(self) -> list[Instance]:
        """Instances along the reduction; element 0 is the original, the last
        is the fully reduced instance."""
        out = [self.original]
        cur = self.original
        for step in self.steps:
            cur = _apply_step(cur, step)
            out.append(cur)
        return out

    def reduced(self) -> Instance:
        return self.replay()[-1]


def _apply_step(inst: Instance, step: Step) -> Instance:
    if isinstance(step, DropNearlySeparated):
        return Instance(inst.graph, inst.terminals - {step.t}, inst.k)
    if isinstance(step, DropComponentTerminal):
        return Instance(inst.graph, inst.terminals - {step.t}, inst.k)
    if isinstance(step, DropUnmarked):
        return Instance(inst.graph, inst.terminals - step.removed, inst.k)
    if isinstance(step, EssentialVertex):
        return Instance(inst.graph.without([step.x]), inst.terminals, max(inst.k - 1, 0))
    raise TypeError(f"unknown step {step!r}")


def parse_steps(lines: Iterable[str]) -> list[Step]:
    steps: list[Step] = []
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head in ("p", "e", "t", "k"):
            continue  # instance directives share the log file
        fields = dict(part.split("=", 1) for part in rest.split() if "=" in part)
        if head == "rr1":
            steps.append(DropNearlySeparated(int(fields["t"])))
        elif head == "rr2":
            comp = frozenset(int(v) for v in fields["D"].strip("{}").split(",") if v)
            steps.append(DropComponentTerminal(int(fields["drop"]), int(fields["x"]),
                                               int(fields["y"]), comp, (0, 0)))
        elif head == "rr3":
            removed = frozenset(int(v) for v in fields["drop"].strip("{}").split(",") if v)
            steps.append(DropUnmarked(removed))
        elif head == "essential":
            steps.append(EssentialVertex(int(fields["x"])))
        else:
            raise ValueError(f"unknown reduction step {line!r}")
    return steps


# -- individual rules ----------------------------------------------------------

def apply_rr1(inst: Instance) -> tuple[Instance, DropNearlySeparated] | None:
    """Drop the smallest nearly-separated terminal, if any."""
    lonely = nearly_separated_terminals(inst.graph, inst.terminals)
    if not lonely:
        return None
    t = min(lonely)
    step = DropNearlySeparated(t)
    return _apply_step(inst, step), step


def _rr2_candidate_pairs(g: Graph, T: frozenset[int], s_star: frozenset[int]
                         ) -> list[tuple[int, int]]:
    """Non-terminal cut-vertex pairs lying on a common root-to-leaf path of the
    block-cut forest of G - S*."""
    f = block_cut_forest(g.without(s_star))
    cuts = [nd for nd in f.nodes if nd.kind == "cut" and nd.vertex not in T]
    pairs = []
    for anc in cuts:
        for desc in cuts:
            if anc.id == desc.id:
                continue
            node = desc.id
            while f.parent[node] is not None:
                node = f.parent[node]
                if node == anc.id:
                    pairs.append((anc.vertex, desc.vertex))
                    break
    return sorted(set(tuple(sorted(p)) for p in pairs))


def apply_rr2(inst: Instance, s_star: Iterable[int]) -> tuple[Instance, DropComponentTerminal] | None:
    """Turn a surplus terminal of a cycle-free attachment component into a
    non-terminal.

    Looks for non-terminals x, y and a component D of G-{x,y} with three or
    more terminals, no T-cycle inside G[D + x + y], and an x-y path through
    two distinct terminals; the smallest other terminal of D is dropped.
    """
    g, T = inst.graph, inst.terminals
    for x, y in _rr2_candidate_pairs(g, T, frozenset(s_star)):
        for comp in connected_components(g.without([x, y])):
            comp_set = frozenset(comp)
            terms = sorted(comp_set & T)
            if len(terms) < 3:
                continue
            region = comp_set | {x, y}
            sub = g.induced(region)
            if has_t_cycle(sub, T & region):
                continue
            if not terminals_independent(sub, T & region):
                continue  # the tree counting rule needs one terminal per block
            if max_terminals_on_path(sub, T & comp_set, x, y) < 2:
                continue
            kept = _witness_pair(sub, T & comp_set, x, y)
            drop_pool = [t for t in terms if t not in kept]
            if not drop_pool:
                continue
            step = DropComponentTerminal(min(drop_pool), x, y, comp_set, kept)
            return _apply_step(inst, step), step
    return None


def _witness_pair(sub: Graph, T: frozenset[int], x: int, y: int) -> tuple[int, int]:
    """Two terminals realizable on a single x-y path, per the tree counting rule."""
    f = block_cut_forest(sub)
    path = f.tree_path(f.node_of_vertex(x), f.node_of_vertex(y))
    found: list[int] = []
    seen: set[int] = set()
    for nid in path:
        nd = f.nodes[nid]
        if nd.kind == "cut" and nd.vertex in T and nd.vertex not in seen:
            found.append(nd.vertex)
            seen.add(nd.vertex)
        elif nd.kind == "block":
            extra = sorted((nd.vertices & T) - seen)
            if extra:
                found.append(extra[0])
                seen.add(extra[0])
    assert len(found) >= 2
    return found[0], found[1]


def mark_components(inst: Instance, s_star: Iterable[int]) -> dict[tuple[int, int], list[frozenset[int]]]:
    """Greedy marking: per pair {x,y} in S*, up to k+2 components of G-S*
    holding a path from a neighbor of x to a neighbor of y through a terminal."""
    g, T, k = inst.graph, inst.terminals, inst.k
    s_star = frozenset(s_star)
    comps = [frozenset(c) for c in connected_components(g.without(s_star))]
    marked: dict[tuple[int, int], list[frozenset[int]]] = {}
    for x, y in itertools.combinations(sorted(s_star), 2):
        chosen: list[frozenset[int]] = []
        for comp in comps:
            if len(chosen) >= k + 2:
                break
            if _component_qualifies(g, T, comp, x, y):
                chosen.append(comp)
        marked[(x, y)] = chosen
    return marked


def _component_qualifies(g: Graph, T: frozenset[int], comp: frozenset[int],
                         x: int, y: int) -> bool:
    a_side = g.neighbors(x) & comp
    b_side = g.neighbors(y) & comp
    if not a_side or not b_side:
        return False
    terms = sorted(T & comp)
    if not terms:
        return False
    sub = g.induced(comp)
    for t in terms:
        if t in a_side or t in b_side:
            return True  # the path may start or end at the terminal itself
        if path_through_forced_vertex(sub, a_side, b_side, t) is not None:
            return True
    return False


def apply_rr3(inst: Instance, s_star: Iterable[int]) -> tuple[Instance, DropUnmarked] | None:
    """Convert terminals outside every marked component to non-terminals."""
    marked = mark_components(inst, s_star)
    covered: set[int] = set()
    for comps in marked.values():
        for comp in comps:
            covered |= comp
    removed = frozenset(t for t in inst.terminals if t not in covered)
    if not removed:
        return None
    step = DropUnmarked(removed)
    return _apply_step(inst, step), step


# -- 1-redundant construction and the full pipeline ---------------------------

@dataclass(frozen=True)
class RedundantSetResult:
    instance: Instance
    s_star: frozenset[int]
    essential: frozenset[int]


def build_1_redundant(inst: Instance, s_hat: Iterable[int]) -> tuple[RedundantSetResult, list[EssentialVertex]]:
    """Thicken a known near-separator into a 1-redundant one.

    Per pivot x, an x-avoiding replacement larger than 14k certifies that x
    lies in every solution within budget; such vertices are deleted and the
    budget drops. Others contribute their replacement set plus themselves.
    """
    g, T, k = inst.graph, inst.terminals, inst.k
    s_hat = frozenset(s_hat)
    if s_hat & T or not is_mwns(g, T, s_hat):
        raise ValueError("the provided set is not a multiway near-separator")
    essential: list[int] = []
    s_star: set[int] = set()
    for x in sorted(s_hat):
        reduced_g = g.without(s_hat - {x})
        s_x = blocker(reduced_g, T, x)
        if len(s_x) > 14 * k:
            essential.append(x)
        else:
            s_star |= s_x | {x}
    g1 = g.without(essential)
    k1 = k - len(essential)
    steps = [EssentialVertex(x) for x in essential]
    s_star -= set(essential)
    assert not (s_star & T)
    if k1 >= 0:
        out_inst = Instance(g1, T, k1)
    else:
        out_inst = Instance(g1, T, 0)  # budget already exceeded; callers treat as NO
    result = RedundantSetResult(out_inst, frozenset(s_star), frozenset(essential))
    _check_1_redundant(g1, T, result.s_star)
    return result, steps


def _check_1_redundant(g: Graph, T: frozenset[int], s_star: frozenset[int]) -> None:
    assert is_mwns(g, T, s_star)
    for s in s_star:
        assert is_mwns(g, T, s_star - {s}), f"dropping {s} breaks the near-separator"


def reduce_terminals(inst: Instance, s_hat: Iterable[int]) -> tuple[Instance, ReductionLog, bool]:
    """Full preprocessing pipeline; returns (reduced instance, log, feasible).

    feasible is False when more vertices are essential than the budget allows,
    which certifies a NO answer.
    """
    s_hat = frozenset(s_hat)
    redundant, steps = build_1_redundant(inst, s_hat)
    feasible = inst.k - len(redundant.essential) >= 0
    cur = redundant.instance
    all_steps: list[Step] = list(steps)
    while True:
        fired = apply_rr1(cur)
        if fired is None:
            fired = apply_rr2(cur, redundant.s_star)
        if fired is None:
            fired = apply_rr3(cur, redundant.s_star)
        if fired is None:
            break
        cur, step = fired
        all_steps.append(step)
    log = ReductionLog(inst, tuple(all_steps))
    assert log.reduced() == cur, "forward replay must reproduce the reduced instance"
    return cur, log, feasible


def minimalize(g: Graph, T: frozenset[int], S: Iterable[int]) -> frozenset[int]:
    """Inclusion-minimal subset that is still a near-separator, dropping
    smallest ids first."""
    S = set(S)
    for v in sorted(S):
        if is_mwns(g, T, frozenset(S - {v})):
            S.discard(v)
    return frozenset(S)


def lift_solution(log: ReductionLog, solution: Iterable[int]) -> frozenset[int]:
    """Transform a solution of the reduced instance into one for the original.

    Replays the log backwards; terminal-conversion steps need the current
    solution inclusion-minimal, the component rule substitutes its cut vertex
    x when the solution touches the component, and essential vertices are
    unioned back in.
    """
    stages = log.replay()
    cur = frozenset(solution)
    final = stages[-1]
    if cur & final.terminals or len(cur) > final.k or not is_mwns(final.graph, final.terminals, cur):
        raise ValueError("not a valid solution of the reduced instance")
    cur = minimalize(final.graph, final.terminals, cur)
    for step, before, after in zip(reversed(log.steps), reversed(stages[:-1]), reversed(stages[1:])):
        if isinstance(step, (DropNearlySeparated, DropUnmarked)):
            cur = minimalize(after.graph, after.terminals, cur)
        elif isinstance(step, DropComponentTerminal):
            if cur & step.component:
                cur = (cur - step.component) | {step.x}
        elif isinstance(step, EssentialVertex):
            cur = cur | {step.x}
        assert not (cur & before.terminals), f"lift through {step} kept a terminal"
        assert is_mwns(before.graph, before.terminals, cur), \
            f"lift through {step} lost validity"
    original = log.original
    assert len(cur) <= original.k
    return cur
