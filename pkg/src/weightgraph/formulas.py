"""The Atiyah-Hirzebruch identity for a graph and the identities derived from it.

The AH function of a graph is

    sum over points  eps * (1+z^a)(1+z^b) / ((1-z^a)(1-z^b))
  - sum over surfaces  4 z n / (1-z)^2

and for a graph that comes from a manifold it is the constant sum of signs.
Everything here is exact; there are no tolerances.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .edge_euler import edge_eulers
from .exactalg import RatFunc, Z, expand
from .graph import GraphError, GraphOfWeights, point_weights, validate


class InvalidGraphError(GraphError):
    def __init__(self, report):
        super().__init__(f"invalid graph of weights:\n{report}")
        self.report = report


def _require_valid(g: GraphOfWeights) -> None:
    report = validate(g)
    if not report.ok:
        raise InvalidGraphError(report)


@lru_cache(maxsize=4096)
def point_term(a: int, b: int) -> RatFunc:
    """``(1+z^a)(1+z^b) / ((1-z^a)(1-z^b))``."""
    z = RatFunc(Z)
    return (1 + z ** a) * (1 + z ** b) / ((1 - z ** a) * (1 - z ** b))


@lru_cache(maxsize=1)
def surface_term() -> RatFunc:
    """``4z / (1-z)^2``, the contribution of a surface with n = 1 (subtracted)."""
    z = RatFunc(Z)
    return 4 * z / (1 - z) ** 2


def ah_sum(g: GraphOfWeights) -> RatFunc:
    _require_valid(g)
    # equal weight pairs share one term: sum their signs first
    coeff: Counter = Counter()
    for p in g.points():
        coeff[point_weights(g, p.id)] += p.sign
    total = RatFunc(0)
    for (a, b), c in sorted(coeff.items()):
        if c:
            total = total + c * point_term(a, b)
    n = sum(s.euler for s in g.surfaces())
    if n:
        total = total - n * surface_term()
    return total


def signature(g: GraphOfWeights) -> int:
    return sum(p.sign for p in g.points())


@dataclass(frozen=True)
class AHReport:
    ah_function: RatFunc
    constant: Fraction | None
    signature: int
    sign_times_3: int

    @property
    def holds(self) -> bool:
        return self.constant is not None and self.constant == self.signature

    def __str__(self):
        const = "not constant" if self.constant is None else str(self.constant)
        return (f"AH sum = {self.ah_function}\nconstant = {const}, signature = {self.signature}, "
                f"3*signature = {self.sign_times_3}")


def check_ah(g: GraphOfWeights) -> AHReport:
    f = ah_sum(g)
    sig = signature(g)
    return AHReport(f, f.constant(), sig, 3 * sig)


def l_genus(g: GraphOfWeights) -> Fraction:
    _require_valid(g)
    total = Fraction(0)
    for p in g.points():
        a, b = point_weights(g, p.id)
        total += p.sign * Fraction(a * a + b * b + 1, 3 * a * b)
    return total


def check_residues(g: GraphOfWeights) -> tuple[Fraction, Fraction]:
    """The t^-2 and t^-1 coefficients of the AH function at z = 1 (t = z - 1)."""
    w = expand(ah_sum(g), center=1, min_order=-2, count=2)
    return w[-2], w[-1]


def weight1_balance(g: GraphOfWeights) -> int:
    """``sum eps_i k_i - 2 sum n_j`` with k_i the number of weight-1 ends at point i."""
    _require_valid(g)
    total = 0
    for p in g.points():
        total += p.sign * sum(1 for w in point_weights(g, p.id) if w == 1)
    return total - 2 * sum(s.euler for s in g.surfaces())


def check_3l_edges(g: GraphOfWeights) -> tuple[Fraction, Fraction]:
    """``(3 L, sum n_e + sum n_j)``; equal for the graph of a manifold."""
    lhs = 3 * l_genus(g)
    rhs = sum(edge_eulers(g).values(), Fraction(0)) + sum(s.euler for s in g.surfaces())
    return lhs, Fraction(rhs)
