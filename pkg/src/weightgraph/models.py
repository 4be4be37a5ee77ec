"""Graphs of the basic circle actions: S(a,b), P(a,b), Q(a,b), P#Q(a,b) and
the fixed-surface actions P(1,0), Q(1,0), S(1,0).

Vertex ids are fixed (``p1``..``p4``, ``F``) and edge ids follow the order
in which the edges are listed below, so serialized models are byte-stable.
"""

from __future__ import annotations

import math

from .graph import Edge, GraphOfWeights, Point, Surface

MODEL_NAMES = ("S", "P", "Q", "PQ")
FIXED_SURFACE_NAMES = ("P10", "Q10", "S10")


def _edges(triples):
    return [Edge(f"e{i}", u, v, w) for i, (u, v, w) in enumerate(triples, start=1)]


def model(name: str, a: int, b: int) -> GraphOfWeights:
    if name not in MODEL_NAMES:
        raise ValueError(f"unknown model {name!r}; expected one of {', '.join(MODEL_NAMES)}")
    if a < 1 or b < 1:
        raise ValueError(f"{name}({a},{b}): parameters must be positive")
    if math.gcd(a, b) != 1:
        raise ValueError(f"{name}({a},{b}): parameters must be coprime")
    if name == "S":
        return GraphOfWeights(
            [Point("p1", 1), Point("p2", -1)],
            _edges([("p1", "p2", a), ("p1", "p2", b)]),
        )
    if not a < b:
        raise ValueError(f"{name}({a},{b}): need 0 < a < b")
    if name in ("P", "Q"):
        s = 1 if name == "P" else -1
        return GraphOfWeights(
            [Point("p1", s), Point("p2", -s), Point("p3", s)],
            _edges([("p1", "p2", a), ("p2", "p3", b - a), ("p1", "p3", b)]),
        )
    return GraphOfWeights(
        [Point("p1", 1), Point("p2", -1), Point("p3", 1), Point("p4", -1)],
        _edges([("p1", "p2", a), ("p1", "p4", b - a), ("p2", "p3", b - a), ("p3", "p4", b)]),
    )


def model_fixed_surface(name: str) -> GraphOfWeights:
    if name == "P10":
        return GraphOfWeights([Point("p1", 1), Surface("F", 1)], _edges([("p1", "F", 1), ("p1", "F", 1)]))
    if name == "Q10":
        return GraphOfWeights([Point("p1", -1), Surface("F", -1)], _edges([("p1", "F", 1), ("p1", "F", 1)]))
    if name == "S10":
        return GraphOfWeights([Surface("F", 0)])
    raise ValueError(f"unknown model {name!r}; expected one of {', '.join(FIXED_SURFACE_NAMES)}")


def any_model(name: str, a: int | None = None, b: int | None = None) -> GraphOfWeights:
    """Dispatch on the model name; the fixed-surface models take no parameters."""
    if name in FIXED_SURFACE_NAMES:
        if a is not None or b is not None:
            raise ValueError(f"{name} takes no parameters")
        return model_fixed_surface(name)
    if a is None or b is None:
        raise ValueError(f"{name} needs parameters a b")
    return model(name, a, b)
