"""Equivariant connected sum and splitting as graph rewriting.

Three splitting moves act on an edge ``e`` of label ``l > 1`` between points
``p``, ``q`` with other weights ``a``, ``b``:

* ``ContractP``: both signs +1 and ``a + b == l``. ``p`` and ``q`` merge into
  one +1 point with weights ``{a, b}``; a P(min(a,b), l) block splits off.
* ``ContractQ``: the same with both signs -1; a Q block splits off.
* ``RelabelPQ``: opposite signs and ``a == b == w``. ``e`` is relabeled
  ``l - w``; a P#Q(l-w, l) block splits off.

For an admissible edge of maximal label exactly one of these applies, and
each move strictly lowers the total of all labels, which is why
:func:`reduce` terminates. :func:`unsplit_step` is the inverse (a connected
sum with the recorded block).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Sequence

from .edge_euler import edge_euler, other_weight
from .formulas import InvalidGraphError
from .graph import (Edge, GraphError, GraphOfWeights, Point, Surface, natural_key, parse_lines,
                    point_weights, serialize, validate)


class SurgeryError(GraphError):
    pass


class FootprintError(SurgeryError):
    """A move does not match the graph it is applied to."""


class MoveKind(Enum):
    CONTRACT_P = "ContractP"
    CONTRACT_Q = "ContractQ"
    RELABEL_PQ = "RelabelPQ"
    SURFACE_SWAP_P10 = "SurfaceSwapP10"
    SURFACE_SWAP_Q10 = "SurfaceSwapQ10"


_BLOCK_TALLY = {
    MoveKind.CONTRACT_P: "P",
    MoveKind.CONTRACT_Q: "Q",
    MoveKind.RELABEL_PQ: "PQ",
    MoveKind.SURFACE_SWAP_P10: "P10",
    MoveKind.SURFACE_SWAP_Q10: "Q10",
}


@dataclass(frozen=True)
class MoveRecord:
    """One splitting step.

    ``params`` is ``(a, b)`` (the other weights at ``vertex`` and ``partner``)
    for contractions and ``(w, l)`` for ``RelabelPQ``. For contractions
    ``vertex`` is the surviving point, ``partner`` the one merged into it and
    ``moved`` the partner's other edge, which is re-attached to ``vertex``.
    For ``RelabelPQ``, ``vertex``/``partner`` are the +1/-1 endpoints.
    """

    kind: MoveKind
    edge: str | None
    params: tuple[int, int]
    block: str
    vertex: str | None = None
    partner: str | None = None
    moved: str | None = None

    @property
    def tally(self) -> str:
        return _BLOCK_TALLY[self.kind]

    @property
    def label(self) -> int:
        """The label of the edge the move acted on, before splitting."""
        a, b = self.params
        return a + b if self.kind in (MoveKind.CONTRACT_P, MoveKind.CONTRACT_Q) else b


# ---------------------------------------------------------------------------
# split / unsplit
# ---------------------------------------------------------------------------

def _other_end(g: GraphOfWeights, vid: str, eid: str) -> tuple[Edge, int]:
    """The half-edge at ``vid`` that is not (this end of) ``eid``."""
    for e, end in g.half_edges(vid):
        if e.id != eid:
            return e, end
    raise SurgeryError(f"point {vid} has no edge besides {eid}")


def split_step(g: GraphOfWeights, eid: str) -> tuple[GraphOfWeights, MoveRecord]:
    e = g.edge(eid)
    if e.label == 1:
        raise SurgeryError(f"edge {eid} has label 1; nothing to split")
    if e.is_loop:
        raise SurgeryError(f"edge {eid} is a self-loop with label {e.label}")
    p, q = g.vertex(e.u), g.vertex(e.v)
    if not (isinstance(p, Point) and isinstance(q, Point)):
        raise SurgeryError(f"edge {eid} with label {e.label} touches a surface")
    l = e.label
    a = other_weight(g, eid, p.id)
    b = other_weight(g, eid, q.id)

    if p.sign == q.sign and a + b == l:
        kind = MoveKind.CONTRACT_P if p.sign > 0 else MoveKind.CONTRACT_Q
        x, end = _other_end(g, q.id, eid)
        moved = g.edge(x.id).with_end(end, p.id)
        block = f"{'P' if p.sign > 0 else 'Q'}({min(a, b)},{l})"
        g2 = g.replace(drop_vertices=[q.id], drop_edges=[eid], add_edges=[moved])
        return g2, MoveRecord(kind, eid, (a, b), block, p.id, q.id, x.id)

    if p.sign == -q.sign and a == b:
        plus, minus = (p, q) if p.sign > 0 else (q, p)
        g2 = g.replace(add_edges=[Edge(eid, e.u, e.v, l - a)])
        return g2, MoveRecord(MoveKind.RELABEL_PQ, eid, (a, l), f"P#Q({l - a},{l})", plus.id, minus.id)

    raise SurgeryError(
        f"edge {eid} (label {l}, signs {p.sign:+d}/{q.sign:+d}, other weights {a}/{b}): "
        f"no splitting case applies; n_e = {edge_euler(g, eid)}")


def unsplit_step(g: GraphOfWeights, m: MoveRecord) -> GraphOfWeights:
    """Undo :func:`split_step` (or a surface swap) for the move ``m``."""
    if m.kind in (MoveKind.CONTRACT_P, MoveKind.CONTRACT_Q):
        return _uncontract(g, m)
    if m.kind is MoveKind.RELABEL_PQ:
        return _unrelabel(g, m)
    return _unswap(g, m)


def _uncontract(g: GraphOfWeights, m: MoveRecord) -> GraphOfWeights:
    sign = 1 if m.kind is MoveKind.CONTRACT_P else -1
    a, b = m.params
    v = g.vertices.get(m.vertex)
    if not isinstance(v, Point) or v.sign != sign:
        raise FootprintError(f"{m.kind.value}: vertex {m.vertex!r} is not a point of sign {sign:+d}")
    if point_weights(g, v.id) != tuple(sorted((a, b))):
        raise FootprintError(
            f"{m.kind.value}: point {v.id} has weights {point_weights(g, v.id)}, expected {{{a}, {b}}}")
    if m.partner in g.vertices or m.edge in g.edges:
        raise FootprintError(f"{m.kind.value}: id {m.partner!r} or {m.edge!r} already in use")
    x = g.edges.get(m.moved)
    if x is None or v.id not in (x.u, x.v) or x.label != b:
        raise FootprintError(f"{m.kind.value}: edge {m.moved!r} is not a label-{b} edge at {v.id}")
    end = 1 if x.v == v.id else 0
    return g.replace(
        add_vertices=[Point(m.partner, sign)],
        add_edges=[x.with_end(end, m.partner), Edge(m.edge, v.id, m.partner, a + b)],
    )


def _unrelabel(g: GraphOfWeights, m: MoveRecord) -> GraphOfWeights:
    w, l = m.params
    e = g.edges.get(m.edge)
    if e is None or e.label != l - w:
        raise FootprintError(f"RelabelPQ: edge {m.edge!r} with label {l - w} not found")
    p, q = g.vertices.get(e.u), g.vertices.get(e.v)
    if not (isinstance(p, Point) and isinstance(q, Point)) or p.sign != -q.sign:
        raise FootprintError(f"RelabelPQ: edge {m.edge} does not join points of opposite sign")
    if other_weight(g, e.id, p.id) != w or other_weight(g, e.id, q.id) != w:
        raise FootprintError(f"RelabelPQ: other weights at edge {m.edge} are not both {w}")
    return g.replace(add_edges=[Edge(e.id, e.u, e.v, l)])


def _unswap(g: GraphOfWeights, m: MoveRecord) -> GraphOfWeights:
    sign = 1 if m.kind is MoveKind.SURFACE_SWAP_Q10 else -1
    s = g.vertices.get(m.vertex)
    if not isinstance(s, Surface) or s.euler != -sign or g.degree(s.id) != 2:
        raise FootprintError(f"{m.kind.value}: {m.vertex!r} is not a surface with n = {-sign} and two edges")
    return g.replace(add_vertices=[Point(s.id, sign)])


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionTrace:
    moves: tuple[MoveRecord, ...]
    final: GraphOfWeights
    tallies: Counter = field(default_factory=Counter)

    def replay(self) -> GraphOfWeights:
        """Rebuild the reduced graph by undoing the moves in reverse order."""
        g = self.final
        for m in reversed(self.moves):
            g = unsplit_step(g, m)
        return g


def pick_edge(g: GraphOfWeights) -> str | None:
    """Smallest edge id among those of maximal label > 1."""
    top = g.max_label()
    if top <= 1:
        return None
    return min((eid for eid, e in g.edges.items() if e.label == top), key=natural_key)


def iter_reduce(g: GraphOfWeights) -> Iterator[tuple[GraphOfWeights, MoveRecord]]:
    """Yield ``(graph after move, move)`` until every label is 1."""
    report = validate(g)
    if not report.ok:
        raise InvalidGraphError(report)
    while (eid := pick_edge(g)) is not None:
        g, m = split_step(g, eid)
        yield g, m


def reduce(g: GraphOfWeights) -> ReductionTrace:
    moves = []
    final = g
    for final, m in iter_reduce(g):
        moves.append(m)
    return ReductionTrace(tuple(moves), final, Counter(m.tally for m in moves))


# ---------------------------------------------------------------------------
# fixed surfaces
# ---------------------------------------------------------------------------

def to_surfaces_only(g: GraphOfWeights) -> tuple[GraphOfWeights, Counter]:
    """Replace every weight-{1,1} point by a fixed sphere.

    A +1 point becomes a surface with n = -1 (connected sum with Q(1,0)), a
    -1 point one with n = +1 (connected sum with P(1,0)).
    """
    report = validate(g)
    if not report.ok:
        raise InvalidGraphError(report)
    if g.max_label() > 1:
        raise SurgeryError(f"labels > 1 present (max {g.max_label()}); reduce first")
    tallies: Counter = Counter({"P10": 0, "Q10": 0})
    new = []
    for p in g.points():
        new.append(Surface(p.id, -p.sign))
        tallies["Q10" if p.sign > 0 else "P10"] += 1
    return g.replace(add_vertices=new), tallies


def surface_swap_moves(g: GraphOfWeights) -> list[MoveRecord]:
    """The swap records :func:`to_surfaces_only` performs, one per point."""
    return [
        MoveRecord(MoveKind.SURFACE_SWAP_Q10 if p.sign > 0 else MoveKind.SURFACE_SWAP_P10, None, (1, 1),
                   "Q(1,0)" if p.sign > 0 else "P(1,0)", p.id)
        for p in g.points()
    ]


# ---------------------------------------------------------------------------
# connected sum at fixed points
# ---------------------------------------------------------------------------

def disjoint_union(g1: GraphOfWeights, g2: GraphOfWeights, prefix: str = "b.") -> tuple[GraphOfWeights, dict]:
    """Union with ``g2``'s ids prefixed; returns the graph and g2's vertex renaming."""
    ren = {vid: prefix + vid for vid in g2.vertices}
    vs = list(g1.vertices.values())
    for v in g2.vertices.values():
        vs.append(Point(ren[v.id], v.sign) if isinstance(v, Point) else Surface(ren[v.id], v.euler))
    es = list(g1.edges.values()) + [Edge(prefix + e.id, ren[e.u], ren[e.v], e.label) for e in g2.edges.values()]
    return GraphOfWeights(vs, es), ren


def connected_sum(g1: GraphOfWeights, v1: str, g2: GraphOfWeights, v2: str, prefix: str = "b.") -> GraphOfWeights:
    """Equivariant connected sum at two fixed points of opposite sign and equal weights.

    The two points disappear; each edge at ``v1`` is fused with the edge of
    the same label at ``v2``.
    """
    p, q = g1.vertex(v1), g2.vertex(v2)
    if not (isinstance(p, Point) and isinstance(q, Point)):
        raise SurgeryError("connected sum needs two points")
    if p.sign != -q.sign:
        raise SurgeryError(f"{v1} and {v2} have the same sign")
    if point_weights(g1, v1) != point_weights(g2, v2):
        raise SurgeryError(f"weights differ: {point_weights(g1, v1)} vs {point_weights(g2, v2)}")
    if any(e.is_loop for e, _ in g1.half_edges(v1)) or any(e.is_loop for e, _ in g2.half_edges(v2)):
        raise SurgeryError("connected sum at a point with a self-loop is not supported")
    g, ren = disjoint_union(g1, g2, prefix)
    w2 = ren[v2]
    ends1 = sorted(g.half_edges(v1), key=lambda he: he[0].label)
    ends2 = sorted(g.half_edges(w2), key=lambda he: he[0].label)
    fused = []
    for (x, _), (y, _) in zip(ends1, ends2):
        fused.append(Edge(x.id, x.other_end(v1), y.other_end(w2), x.label))
    return g.replace(drop_vertices=[v1, w2], drop_edges=[y.id for y, _ in ends2], add_edges=fused)


# ---------------------------------------------------------------------------
# graph from fixed-point data
# ---------------------------------------------------------------------------

def build_graph(points: Sequence[tuple[int, tuple[int, int]]], surfaces: Sequence[int],
                sphere_pairs: Sequence[tuple[int, int, int]]) -> GraphOfWeights:
    """Assemble a graph of weights from raw fixed-point data.

    ``points`` are ``(sign, (w1, w2))``, ``surfaces`` the normal Euler numbers,
    ``sphere_pairs`` triples ``(i, j, w)`` of point indices joined by an
    isotropy sphere of weight ``w > 1``. Label-1 edges are matched greedily,
    always between a component on the left of the weight-1 balance
    (positive points, surfaces with n < 0) and one on the right.
    """
    vs = [Point(f"p{i + 1}", s) for i, (s, _) in enumerate(points)]
    vs += [Surface(f"F{j + 1}", n) for j, n in enumerate(surfaces)]
    need = [Counter(w for w in ws if w > 1) for _, ws in points]
    edges: list[Edge] = []
    for i, j, w in sphere_pairs:
        if w <= 1:
            raise SurgeryError(f"sphere pair ({i}, {j}) has label {w}; only labels > 1 are paired")
        if i == j:
            raise SurgeryError(f"sphere pair ({i}, {j}, {w}) joins a point to itself")
        for k in (i, j):
            if not 0 <= k < len(points) or need[k][w] == 0:
                raise SurgeryError(f"sphere pair ({i}, {j}, {w}): point {k} has no uncovered weight {w}")
            need[k][w] -= 1
        edges.append(Edge(f"e{len(edges) + 1}", vs[i].id, vs[j].id, w))
    for k, c in enumerate(need):
        if +c:
            raise SurgeryError(f"point {k}: weights {sorted((+c).elements())} not covered by sphere pairs")

    left: list[str] = []
    right: list[str] = []
    for (s, ws), v in zip(points, vs):
        k1 = sum(1 for w in ws if w == 1)
        (left if s > 0 else right).extend([v.id] * k1)
    for n, v in zip(surfaces, vs[len(points):]):
        (left if n < 0 else right).extend([v.id] * (2 * abs(n)))
    if len(left) != len(right):
        raise SurgeryError(f"weight-1 balance fails: {len(left)} stubs on the left, {len(right)} on the right")
    for u, v in zip(left, right):
        edges.append(Edge(f"e{len(edges) + 1}", u, v, 1))
    return GraphOfWeights(vs, edges)


# ---------------------------------------------------------------------------
# trace text format
# ---------------------------------------------------------------------------

_KINDS = {k.value: k for k in MoveKind}
_PARAMS = re.compile(r"^\((\d+),(\d+)\)$")


def format_move(m: MoveRecord) -> str:
    parts = [m.kind.value]
    if m.edge is not None:
        parts.append(f"edge={m.edge}")
    parts.append(f"params=({m.params[0]},{m.params[1]})")
    parts.append(f"block={m.block}")
    for key in ("vertex", "partner", "moved"):
        val = getattr(m, key)
        if val is not None:
            parts.append(f"{key}={val}")
    return " ".join(parts)


def is_move_line(line: str) -> bool:
    tok = line.split(None, 1)
    return bool(tok) and tok[0] in _KINDS


def parse_move(line: str, lineno: int = 0) -> MoveRecord:
    text = re.split(r"\s#", line, maxsplit=1)[0].strip()
    tok = text.split()
    if not tok or tok[0] not in _KINDS:
        raise SurgeryError(f"line {lineno}: unknown move kind in {line!r}")
    fields: dict[str, str] = {}
    for t in tok[1:]:
        key, sep, val = t.partition("=")
        if not sep or key not in ("edge", "params", "block", "vertex", "partner", "moved"):
            raise SurgeryError(f"line {lineno}: bad move field {t!r}")
        fields[key] = val
    mp = _PARAMS.match(fields.get("params", ""))
    if not mp or "block" not in fields:
        raise SurgeryError(f"line {lineno}: move needs params=(x,y) and block=<name>")
    return MoveRecord(_KINDS[tok[0]], fields.get("edge"), (int(mp[1]), int(mp[2])), fields["block"],
                      fields.get("vertex"), fields.get("partner"), fields.get("moved"))


def format_trace(trace: ReductionTrace) -> str:
    lines = [format_move(m) for m in trace.moves]
    return "\n".join(lines) + ("\n" if lines else "") + serialize(trace.final)


def parse_trace(text: str) -> ReductionTrace:
    moves = []
    graph_lines = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if is_move_line(line):
            moves.append(parse_move(line, lineno))
        else:
            graph_lines.append((lineno, line))
    return ReductionTrace(tuple(moves), parse_lines(graph_lines), Counter(m.tally for m in moves))
