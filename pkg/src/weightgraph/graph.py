"""Graphs of weights: signed points, surfaces with Euler numbers, labeled edges.

A graph is an immutable multigraph with explicit edge identities, since
parallel edges matter (the fixed-point graph of CP^2 with a fixed sphere has
two parallel label-1 edges). Self-loops are representable; :func:`validate`
restricts them to label 1 at points.

The GW1 text format, one declaration per line, ``#`` starts a comment::

    point <id> <+|->
    surface <id> <integer>
    edge <id> <vid> <vid> <positive-integer>
"""

from __future__ import annotations

import math
import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Union


class GraphError(ValueError):
    """Structurally malformed graph (not merely a violated invariant)."""


class GW1SyntaxError(GraphError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Point:
    id: str
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise GraphError(f"point {self.id}: sign must be +1 or -1, got {self.sign}")


@dataclass(frozen=True)
class Surface:
    id: str
    euler: int


Vertex = Union[Point, Surface]


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str
    label: int

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def other_end(self, vid: str) -> str:
        if vid == self.u:
            return self.v
        if vid == self.v:
            return self.u
        raise GraphError(f"vertex {vid} is not an endpoint of edge {self.id}")

    def with_end(self, index: int, vid: str) -> Edge:
        return Edge(self.id, vid, self.v, self.label) if index == 0 else Edge(self.id, self.u, vid, self.label)


def natural_key(s: str):
    """Sort key that orders ``p2`` before ``p10``."""
    return [(0, int(t), "") if t.isdigit() else (1, 0, t) for t in re.split(r"(\d+)", s) if t]


class GraphOfWeights:
    """Immutable multigraph of points and surfaces.

    Construction rejects duplicate ids, dangling edge ends and labels < 1;
    the graph-of-weights conditions proper are checked by :func:`validate`.
    """

    __slots__ = ("_vertices", "_edges", "_incidence")

    def __init__(self, vertices: Iterable[Vertex] = (), edges: Iterable[Edge] = ()):
        vs: dict[str, Vertex] = {}
        for v in vertices:
            if v.id in vs:
                raise GraphError(f"duplicate vertex id {v.id!r}")
            vs[v.id] = v
        es: dict[str, Edge] = {}
        inc: dict[str, list[tuple[str, int]]] = {vid: [] for vid in vs}
        for e in edges:
            if e.id in es:
                raise GraphError(f"duplicate edge id {e.id!r}")
            if not isinstance(e.label, int) or e.label < 1:
                raise GraphError(f"edge {e.id}: label must be a positive integer, got {e.label!r}")
            for end, vid in enumerate((e.u, e.v)):
                if vid not in vs:
                    raise GraphError(f"edge {e.id} references unknown vertex {vid!r}")
                inc[vid].append((e.id, end))
            es[e.id] = e
        for lst in inc.values():
            lst.sort(key=lambda he: (natural_key(he[0]), he[1]))
        self._vertices = MappingProxyType(vs)
        self._edges = MappingProxyType(es)
        self._incidence = MappingProxyType({k: tuple(v) for k, v in inc.items()})

    @property
    def vertices(self) -> Mapping[str, Vertex]:
        return self._vertices

    @property
    def edges(self) -> Mapping[str, Edge]:
        return self._edges

    def vertex(self, vid: str) -> Vertex:
        try:
            return self._vertices[vid]
        except KeyError:
            raise GraphError(f"unknown vertex {vid!r}") from None

    def edge(self, eid: str) -> Edge:
        try:
            return self._edges[eid]
        except KeyError:
            raise GraphError(f"unknown edge {eid!r}") from None

    def points(self) -> list[Point]:
        return sorted((v for v in self._vertices.values() if isinstance(v, Point)), key=lambda v: natural_key(v.id))

    def surfaces(self) -> list[Surface]:
        return sorted((v for v in self._vertices.values() if isinstance(v, Surface)), key=lambda v: natural_key(v.id))

    def half_edges(self, vid: str) -> tuple[tuple[Edge, int], ...]:
        """Edge ends at ``vid`` as ``(edge, end_index)``; a loop appears twice."""
        if vid not in self._incidence:
            raise GraphError(f"unknown vertex {vid!r}")
        return tuple((self._edges[eid], end) for eid, end in self._incidence[vid])

    def degree(self, vid: str) -> int:
        return len(self.half_edges(vid))

    def is_points_only(self) -> bool:
        return all(isinstance(v, Point) for v in self._vertices.values())

    def max_label(self) -> int:
        return max((e.label for e in self._edges.values()), default=0)

    def label_total(self) -> int:
        return sum(e.label for e in self._edges.values())

    def fresh_id(self, prefix: str) -> str:
        taken = set(self._vertices) | set(self._edges)
        n = 1
        while f"{prefix}{n}" in taken:
            n += 1
        return f"{prefix}{n}"

    def replace(self, *, add_vertices: Iterable[Vertex] = (), drop_vertices: Iterable[str] = (),
                add_edges: Iterable[Edge] = (), drop_edges: Iterable[str] = ()) -> GraphOfWeights:
        """New graph with the given vertices/edges removed, then added (same id overrides)."""
        dv = set(drop_vertices)
        de = set(drop_edges)
        av = list(add_vertices)
        ae = list(add_edges)
        dv |= {v.id for v in av}
        de |= {e.id for e in ae}
        vs = [v for k, v in self._vertices.items() if k not in dv] + av
        es = [e for k, e in self._edges.items() if k not in de] + ae
        return GraphOfWeights(vs, es)

    def __eq__(self, other):
        if not isinstance(other, GraphOfWeights):
            return NotImplemented
        return dict(self._vertices) == dict(other._vertices) and dict(self._edges) == dict(other._edges)

    def __hash__(self):
        return hash((frozenset(self._vertices.values()), frozenset(self._edges.values())))

    def __repr__(self):
        return f"GraphOfWeights({len(self._vertices)} vertices, {len(self._edges)} edges)"


# ---------------------------------------------------------------------------
# queries and validation
# ---------------------------------------------------------------------------

def point_weights(g: GraphOfWeights, vid: str) -> tuple[int, ...]:
    """Labels at a point, sorted; a self-loop contributes its label twice."""
    v = g.vertex(vid)
    if not isinstance(v, Point):
        raise GraphError(f"vertex {vid} is not a point")
    return tuple(sorted(e.label for e, _ in g.half_edges(vid)))


@dataclass(frozen=True)
class Violation:
    code: str
    subject: str
    message: str

    def __str__(self):
        return f"{self.subject}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}

    def __str__(self):
        if self.ok:
            return "valid graph of weights"
        return "\n".join(str(v) for v in self.violations)


def validate(g: GraphOfWeights) -> ValidationReport:
    out: list[Violation] = []
    for p in g.points():
        hes = g.half_edges(p.id)
        if len(hes) != 2:
            out.append(Violation("point-degree", p.id, f"point has {len(hes)} edge ends, expected 2"))
            continue
        (e1, _), (e2, _) = hes
        if e1.id == e2.id and e1.label != 1:
            out.append(Violation("loop-label", p.id, f"self-loop {e1.id} at point has label {e1.label} != 1"))
        elif math.gcd(e1.label, e2.label) != 1:
            out.append(Violation("non-coprime", p.id,
                                 f"non-coprime weights at point: {{{e1.label}, {e2.label}}}"))
    for s in g.surfaces():
        hes = g.half_edges(s.id)
        for e, _ in hes:
            if e.label != 1:
                out.append(Violation("surface-label", s.id, f"surface edge label != 1 (edge {e.id} has {e.label})"))
        if len(hes) != 2 * abs(s.euler):
            out.append(Violation("surface-degree", s.id,
                                 f"surface degree != 2|n|: {len(hes)} edge ends, n = {s.euler}"))
    return ValidationReport(tuple(out))


# ---------------------------------------------------------------------------
# isomorphism
# ---------------------------------------------------------------------------

def _adjacency(g: GraphOfWeights) -> dict[tuple[str, str], tuple[int, ...]]:
    adj: dict[tuple[str, str], list[int]] = defaultdict(list)
    for e in g.edges.values():
        adj[(e.u, e.v)].append(e.label)
        if not e.is_loop:
            adj[(e.v, e.u)].append(e.label)
    return {k: tuple(sorted(v)) for k, v in adj.items()}


def _vertex_tag(v: Vertex):
    return ("P", v.sign) if isinstance(v, Point) else ("S", v.euler)


def _refine(graphs: list[GraphOfWeights]) -> list[dict[str, int]]:
    """Colour refinement run jointly so colours are comparable across graphs."""
    colors = []
    for g in graphs:
        colors.append({vid: _vertex_tag(v) for vid, v in g.vertices.items()})
    n_classes = -1
    while True:
        table: dict = {}
        new = []
        for g, col in zip(graphs, colors):
            c2 = {}
            for vid in g.vertices:
                sig = (col[vid], tuple(sorted(
                    (e.label, e.is_loop, col[e.other_end(vid)]) for e, _ in g.half_edges(vid))))
                c2[vid] = table.setdefault(sig, len(table))
            new.append(c2)
        colors = new
        if len(table) == n_classes:
            return colors
        n_classes = len(table)


def isomorphic(g1: GraphOfWeights, g2: GraphOfWeights) -> bool:
    """True iff a vertex bijection preserves kinds, signs, Euler numbers and labeled edges."""
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return False
    if Counter(e.label for e in g1.edges.values()) != Counter(e.label for e in g2.edges.values()):
        return False
    c1, c2 = _refine([g1, g2])
    if Counter(c1.values()) != Counter(c2.values()):
        return False
    adj1, adj2 = _adjacency(g1), _adjacency(g2)
    by_color: dict[int, list[str]] = defaultdict(list)
    for vid, c in c2.items():
        by_color[c].append(vid)

    # order: smallest colour classes first, then grow along edges
    order: list[str] = []
    seen: set[str] = set()
    for start in sorted(g1.vertices, key=lambda v: (len(by_color[c1[v]]), natural_key(v))):
        if start in seen:
            continue
        stack = [start]
        while stack:
            v = stack.pop(0)
            if v in seen:
                continue
            seen.add(v)
            order.append(v)
            nbrs = sorted({e.other_end(v) for e, _ in g1.half_edges(v)} - seen,
                          key=lambda u: (len(by_color[c1[u]]), natural_key(u)))
            stack.extend(nbrs)

    mapping: dict[str, str] = {}
    used: set[str] = set()

    def consistent(v: str, w: str) -> bool:
        if adj1.get((v, v), ()) != adj2.get((w, w), ()):
            return False
        for u, x in mapping.items():
            if adj1.get((v, u), ()) != adj2.get((w, x), ()):
                return False
        return True

    def search(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in by_color[c1[v]]:
            if w in used or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if search(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return search(0)


# ---------------------------------------------------------------------------
# GW1 text format
# ---------------------------------------------------------------------------

def _sign_str(s: int) -> str:
    return "+" if s > 0 else "-"


def serialize(g: GraphOfWeights) -> str:
    lines = [f"point {p.id} {_sign_str(p.sign)}" for p in g.points()]
    lines += [f"surface {s.id} {s.euler}" for s in g.surfaces()]
    for eid in sorted(g.edges, key=natural_key):
        e = g.edges[eid]
        lines.append(f"edge {e.id} {e.u} {e.v} {e.label}")
    return "\n".join(lines) + ("\n" if lines else "")


_ID = re.compile(r"^[A-Za-z0-9_.:\-]+$")
_INT = re.compile(r"^[+-]?\d+$")


def _check_id(tok: str, lineno: int) -> str:
    if not _ID.match(tok):
        raise GW1SyntaxError(lineno, f"invalid identifier {tok!r}")
    return tok


def parse_lines(lines: Iterable[tuple[int, str]]) -> GraphOfWeights:
    """Parse numbered GW1 lines (already stripped of anything that is not GW1)."""
    vertices: dict[str, Vertex] = {}
    edges: dict[str, Edge] = {}
    for lineno, raw in lines:
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        tok = text.split()
        kw = tok[0]
        if kw == "point":
            if len(tok) != 3 or tok[2] not in ("+", "-"):
                raise GW1SyntaxError(lineno, "expected 'point <id> <+|->'")
            vid = _check_id(tok[1], lineno)
            if vid in vertices:
                raise GW1SyntaxError(lineno, f"duplicate vertex id {vid!r}")
            vertices[vid] = Point(vid, 1 if tok[2] == "+" else -1)
        elif kw == "surface":
            if len(tok) != 3 or not _INT.match(tok[2]):
                raise GW1SyntaxError(lineno, "expected 'surface <id> <integer>'")
            vid = _check_id(tok[1], lineno)
            if vid in vertices:
                raise GW1SyntaxError(lineno, f"duplicate vertex id {vid!r}")
            vertices[vid] = Surface(vid, int(tok[2]))
        elif kw == "edge":
            if len(tok) != 5 or not _INT.match(tok[4]):
                raise GW1SyntaxError(lineno, "expected 'edge <id> <vid> <vid> <positive-integer>'")
            eid = _check_id(tok[1], lineno)
            if eid in edges:
                raise GW1SyntaxError(lineno, f"duplicate edge id {eid!r}")
            label = int(tok[4])
            if label < 1:
                raise GW1SyntaxError(lineno, f"edge {eid}: label must be positive, got {label}")
            for vid in tok[2:4]:
                if vid not in vertices:
                    raise GW1SyntaxError(lineno, f"edge {eid} references undeclared vertex {vid!r}")
            edges[eid] = Edge(eid, tok[2], tok[3], label)
        else:
            raise GW1SyntaxError(lineno, f"unknown declaration {kw!r}")
    return GraphOfWeights(vertices.values(), edges.values())


def parse(text: str) -> GraphOfWeights:
    return parse_lines(enumerate(text.splitlines(), start=1))
