"""Graphviz DOT rendering of chamber graphs."""

from __future__ import annotations

from typing import Iterable, Optional

from .building import Building

COLORS = {
    "host": "lightblue",
    "witness": "lightsalmon",
    "target": "palegreen",
    "other": "white",
}


def chamber_label(b: Building, c: int) -> str:
    flags = getattr(b, "flags", None)
    if flags is not None:
        p, l = flags[c]
        return f"{c}: p{p} L{l}"
    return str(c)


def chamber_graph_dot(b: Building, chambers: Optional[Iterable[int]] = None,
                      host: Iterable[int] = (), witness: Iterable[int] = (),
                      target: Iterable[int] = (), name: str = "chambers") -> str:
    """Nodes are chambers, edges join s-adjacent chambers and carry the generator name.

    Fill colour: target chambers first, then host-only, then witness-only.
    """
    host, witness, target = set(host), set(witness), set(target)
    nodes = sorted(set(range(b.n)) if chambers is None else set(chambers))
    keep = set(nodes)
    lines = [f"graph {name} {{", "  node [shape=box, style=filled];"]
    for c in nodes:
        if c in target:
            role = "target"
        elif c in host:
            role = "host"
        elif c in witness:
            role = "witness"
        else:
            role = "other"
        lines.append(f'  c{c} [label="{chamber_label(b, c)}", fillcolor={COLORS[role]}];')
    gens = b.system.generators
    for c in nodes:
        for s in range(b.rank):
            for d in b.neighbours(c, s):
                if d > c and d in keep:
                    lines.append(f'  c{c} -- c{d} [label="{gens[s]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
