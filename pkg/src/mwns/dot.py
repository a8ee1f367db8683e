"""DOT export of graphs and block-cut forests."""

from __future__ import annotations

from .core import Instance
from .blockcut import BlockCutForest


def instance_to_dot(inst: Instance) -> str:
    g = inst.graph
    lines = ["graph mwns {"]
    for v in g.vertices:
        shape = "doublecircle" if v in inst.terminals else "circle"
        lines.append(f'  {v} [shape={shape}];')
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def forest_to_dot(f: BlockCutForest) -> str:
    lines = ["graph blockcut {"]
    for nd in f.nodes:
        if nd.kind == "block":
            lines.append(f'  n{nd.id} [shape=box,label="{nd.label()}"];')
        else:
            lines.append(f'  n{nd.id} [shape=circle,label="{nd.vertex}"];')
    for p, c in f.tree_edges():
        lines.append(f"  n{p} -- n{c};")
    lines.append("}")
    return "\n".join(lines) + "\n"
