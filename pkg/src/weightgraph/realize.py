"""Decide whether a points-only graph of weights comes from a circle action.

An admissible points-only graph that satisfies the AH identity is realizable:
reduce it to an all-label-1 graph, which has as many +1 as -1 points and is
realized by ``k`` copies of S(1,1) glued along free orbits. The certificate
records that base plus the moves to replay upward; the rejection records a
checkable witness of the first gate that fails.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .edge_euler import is_admissible
from .exactalg import RatFunc
from .formulas import ah_sum
from .graph import GraphOfWeights, ValidationReport, parse_lines, serialize, validate
from .surgery import (MoveRecord, SurgeryError, format_move, is_move_line, parse_move, reduce,
                      unsplit_step)

log = logging.getLogger(__name__)


class RejectionReason(Enum):
    NOT_POINTS_ONLY = "NotPointsOnly"
    INVALID_GRAPH = "InvalidGraph"
    NOT_ADMISSIBLE = "NotAdmissible"
    AH_NOT_CONSTANT = "AHNotConstant"
    UNBALANCED_SIGNS = "UnbalancedSigns"


@dataclass(frozen=True)
class Rejection:
    reason: RejectionReason
    surfaces: tuple[str, ...] = ()
    report: ValidationReport | None = None
    edge: str | None = None
    n_e: Fraction | None = None
    residual: RatFunc | None = None
    counts: tuple[int, int] | None = None

    def __str__(self):
        r = self.reason
        if r is RejectionReason.NOT_POINTS_ONLY:
            return f"{r.value}: surfaces {', '.join(self.surfaces)}"
        if r is RejectionReason.INVALID_GRAPH:
            return f"{r.value}:\n{self.report}"
        if r is RejectionReason.NOT_ADMISSIBLE:
            return f"{r.value}: edge {self.edge} has n_e = {self.n_e}"
        if r is RejectionReason.AH_NOT_CONSTANT:
            return f"{r.value}: AH sum = {self.residual}"
        return f"{r.value}: {self.counts[0]} points of sign +1, {self.counts[1]} of sign -1"


class RealizationDefect(RuntimeError):
    """The gate passed but the reduction failed; this is a bug, not a verdict."""


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class Certificate:
    base: int
    final_graph: GraphOfWeights
    moves: tuple[MoveRecord, ...]  # in replay order


def gate(g: GraphOfWeights) -> Rejection | None:
    """``None`` if ``g`` may be realized, otherwise the first failing condition."""
    report = validate(g)
    if not report.ok:
        return Rejection(RejectionReason.INVALID_GRAPH, report=report)
    if not g.is_points_only():
        return Rejection(RejectionReason.NOT_POINTS_ONLY, surfaces=tuple(s.id for s in g.surfaces()))
    adm = is_admissible(g)
    if not adm.admissible:
        bad = adm.non_integral[0]
        return Rejection(RejectionReason.NOT_ADMISSIBLE, edge=bad.edge, n_e=bad.value)
    f = ah_sum(g)
    if f.constant() is None:
        return Rejection(RejectionReason.AH_NOT_CONSTANT, residual=f)
    return None


def sign_counts(g: GraphOfWeights) -> tuple[int, int]:
    pts = g.points()
    plus = sum(1 for p in pts if p.sign > 0)
    return plus, len(pts) - plus


def realize(g: GraphOfWeights) -> Certificate | Rejection:
    rej = gate(g)
    if rej is not None:
        return rej
    try:
        trace = reduce(g)
    except SurgeryError as exc:
        raise RealizationDefect(f"gate passed but reduction failed: {exc}") from exc
    plus, minus = sign_counts(trace.final)
    if plus != minus:
        log.error("AH gate passed but the reduced graph is unbalanced (%d/%d)", plus, minus)
        return Rejection(RejectionReason.UNBALANCED_SIGNS, counts=(plus, minus))
    return Certificate(plus, trace.final, tuple(reversed(trace.moves)))


def check_base(c: Certificate) -> None:
    f = c.final_graph
    if not f.is_points_only():
        raise CertificateError("certificate base graph contains surfaces")
    if f.max_label() > 1:
        bad = [e.id for e in f.edges.values() if e.label != 1]
        raise CertificateError(f"certificate base graph has edges with label > 1: {', '.join(bad)}")
    report = validate(f)
    if not report.ok:
        raise CertificateError(f"certificate base graph is invalid:\n{report}")
    plus, minus = sign_counts(f)
    if plus != minus:
        raise CertificateError(f"certificate base graph is unbalanced: {plus} (+) vs {minus} (-)")
    if plus != c.base:
        raise CertificateError(f"certificate claims base k={c.base} but the graph has {plus} S(1,1) pairs")


def replay(c: Certificate) -> GraphOfWeights:
    check_base(c)
    g = c.final_graph
    for i, m in enumerate(c.moves, start=1):
        try:
            g = unsplit_step(g, m)
        except SurgeryError as exc:
            raise CertificateError(f"move {i} ({format_move(m)}): {exc}") from exc
    return g


def format_certificate(c: Certificate) -> str:
    out = [f"base k={c.base}", serialize(c.final_graph).rstrip("\n")]
    out += [format_move(m) for m in c.moves]
    return "\n".join(line for line in out if line) + "\n"


def parse_certificate(text: str) -> Certificate:
    base = None
    moves = []
    graph_lines = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith("base"):
            parts = stripped.split()
            if len(parts) != 2 or not parts[1].startswith("k=") or not parts[1][2:].lstrip("-").isdigit():
                raise CertificateError(f"line {lineno}: expected 'base k=<int>'")
            if base is not None:
                raise CertificateError(f"line {lineno}: duplicate base header")
            base = int(parts[1][2:])
        elif is_move_line(stripped):
            moves.append(parse_move(stripped, lineno))
        else:
            graph_lines.append((lineno, line))
    if base is None:
        raise CertificateError("missing 'base k=<int>' header")
    return Certificate(base, parse_lines(graph_lines), tuple(moves))
