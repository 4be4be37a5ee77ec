"""Random graphs that are realizable by construction.

A base is ``k`` copies of S(1,1) worth of points (``k`` of each sign, all
weights {1,1}) with label-1 edges joining opposite signs. Random connected
sums (inverse splitting moves) are then applied on top of it.
"""

from __future__ import annotations

import random

from .edge_euler import other_weight
from .graph import Edge, GraphOfWeights, Point, point_weights
from .surgery import MoveKind, MoveRecord, unsplit_step


def random_balanced_base(rng: random.Random, pairs: int) -> GraphOfWeights:
    """``pairs`` points of each sign, every edge label 1 and joining opposite signs."""
    plus = [f"p{i}" for i in range(1, pairs + 1)]
    minus = [f"p{i}" for i in range(pairs + 1, 2 * pairs + 1)]
    stubs_plus = plus * 2
    stubs_minus = minus * 2
    rng.shuffle(stubs_minus)
    vs = [Point(v, 1) for v in plus] + [Point(v, -1) for v in minus]
    es = [Edge(f"e{i}", u, v, 1) for i, (u, v) in enumerate(zip(stubs_plus, stubs_minus), start=1)]
    return GraphOfWeights(vs, es)


def candidate_unsplits(g: GraphOfWeights) -> list[tuple]:
    """Places where a connected sum with a P, Q or P#Q block can be taken."""
    out = []
    for p in g.points():
        for e, _ in g.half_edges(p.id):
            out.append(("contract", p.id, e.id))
    for e in g.edges.values():
        if e.is_loop:
            continue
        p, q = g.vertices[e.u], g.vertices[e.v]
        if isinstance(p, Point) and isinstance(q, Point) and p.sign == -q.sign:
            w = other_weight(g, e.id, p.id)
            if w == other_weight(g, e.id, q.id):
                out.append(("relabel", e.id, w))
    return out


def random_unsplit(g: GraphOfWeights, rng: random.Random) -> tuple[GraphOfWeights, MoveRecord]:
    """Apply one random inverse splitting move; returns the new graph and the move."""
    cands = candidate_unsplits(g)
    choice = rng.choice(cands)
    if choice[0] == "contract":
        _, vid, moved = choice
        p = g.vertices[vid]
        b = g.edges[moved].label
        w = point_weights(g, vid)
        a = w[0] if w[1] == b else w[1]
        kind = MoveKind.CONTRACT_P if p.sign > 0 else MoveKind.CONTRACT_Q
        block = f"{'P' if p.sign > 0 else 'Q'}({min(a, b)},{a + b})"
        partner = g.fresh_id("p")
        edge = g.fresh_id("e")
        m = MoveRecord(kind, edge, (a, b), block, vid, partner, moved)
    else:
        _, eid, w = choice
        e = g.edges[eid]
        l = e.label + w
        p, q = g.vertices[e.u], g.vertices[e.v]
        plus, minus = (p, q) if p.sign > 0 else (q, p)
        m = MoveRecord(MoveKind.RELABEL_PQ, eid, (w, l), f"P#Q({e.label},{l})", plus.id, minus.id)
    return unsplit_step(g, m), m


def random_realizable(rng: random.Random, max_points: int = 8, moves: tuple[int, int] = (1, 15),
                      max_label: int | None = None) -> tuple[GraphOfWeights, GraphOfWeights, list[MoveRecord]]:
    """Random base with at most ``max_points`` points, then a random number of moves.

    Returns ``(graph, base, moves applied)``. With ``max_label`` set, moves
    that would create a larger label are skipped (retrying another).
    """
    base = random_balanced_base(rng, rng.randint(1, max_points // 2))
    g = base
    applied = []
    target = rng.randint(*moves)
    attempts = 0
    while len(applied) < target and attempts < 50 * target:
        attempts += 1
        g2, m = random_unsplit(g, rng)
        if max_label is not None and g2.max_label() > max_label:
            continue
        g = g2
        applied.append(m)
    return g, base, applied
