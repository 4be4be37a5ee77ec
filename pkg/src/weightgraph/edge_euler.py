"""Other weights, edge Euler numbers and admissibility."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import GraphError, GraphOfWeights, Point, natural_key


def other_weight(g: GraphOfWeights, eid: str, vid: str) -> int:
    """Label of ``vid``'s other edge end, or 0 when ``vid`` is a surface.

    For a self-loop at a point the other end is the loop's second end, so the
    loop's own label is returned.
    """
    e = g.edge(eid)
    if vid not in (e.u, e.v):
        raise GraphError(f"vertex {vid} is not an endpoint of edge {eid}")
    v = g.vertex(vid)
    if not isinstance(v, Point):
        return 0
    ends = g.half_edges(vid)
    if len(ends) != 2:
        raise GraphError(f"point {vid} has {len(ends)} edge ends, expected 2")
    (e1, _), (e2, _) = ends
    if e1.id == eid:
        return e2.label
    if e2.id == eid:
        return e1.label
    raise GraphError(f"edge {eid} is not incident to {vid}")  # pragma: no cover


def _eps(g: GraphOfWeights, vid: str) -> int:
    v = g.vertex(vid)
    return v.sign if isinstance(v, Point) else 1


def edge_euler(g: GraphOfWeights, eid: str) -> Fraction:
    e = g.edge(eid)
    w = other_weight(g, eid, e.u)
    w2 = other_weight(g, eid, e.v)
    return Fraction(_eps(g, e.u) * w + _eps(g, e.v) * w2, e.label)


def edge_eulers(g: GraphOfWeights) -> dict[str, Fraction]:
    return {eid: edge_euler(g, eid) for eid in sorted(g.edges, key=natural_key)}


@dataclass(frozen=True)
class EdgeEuler:
    edge: str
    value: Fraction


@dataclass(frozen=True)
class AdmissibilityReport:
    non_integral: tuple[EdgeEuler, ...]
    # loops get n_e from the definition applied verbatim to both ends
    self_loops: tuple[EdgeEuler, ...] = ()

    @property
    def admissible(self) -> bool:
        return not self.non_integral

    def __str__(self):
        if self.admissible:
            msg = "admissible"
        else:
            msg = "not admissible: " + ", ".join(f"n_e({x.edge}) = {x.value}" for x in self.non_integral)
        if self.self_loops:
            msg += " (self-loops, n_e by verbatim extension: " + ", ".join(
                f"{x.edge}: {x.value}" for x in self.self_loops) + ")"
        return msg


def is_admissible(g: GraphOfWeights) -> AdmissibilityReport:
    bad = []
    loops = []
    for eid, n in edge_eulers(g).items():
        if n.denominator != 1:
            bad.append(EdgeEuler(eid, n))
        if g.edges[eid].is_loop:
            loops.append(EdgeEuler(eid, n))
    return AdmissibilityReport(tuple(bad), tuple(loops))
