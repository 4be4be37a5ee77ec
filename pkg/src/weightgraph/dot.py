"""Graphviz DOT rendering of a graph of weights."""

from __future__ import annotations

from .edge_euler import edge_euler
from .graph import GraphOfWeights, natural_key


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g: GraphOfWeights, name: str = "G") -> str:
    """Points as circles labeled with their sign, surfaces as boxes labeled
    with n, edges labeled with w_e and annotated with n_e."""
    lines = [f"graph {_q(name)} {{"]
    for p in g.points():
        lines.append(f"  {_q(p.id)} [shape=circle, label={_q(f'{p.id}, ' + ('+' if p.sign > 0 else '-'))}];")
    for s in g.surfaces():
        lines.append(f"  {_q(s.id)} [shape=box, label={_q(f'{s.id}, {s.euler}')}];")
    for eid in sorted(g.edges, key=natural_key):
        e = g.edges[eid]
        try:
            ne = str(edge_euler(g, eid))
        except ValueError:
            ne = "?"
        lines.append(f"  {_q(e.u)} -- {_q(e.v)} [id={_q(e.id)}, label={_q(f'{e.label} (n_e={ne})')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
